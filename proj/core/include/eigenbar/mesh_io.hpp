#pragma once

#include <filesystem>
#include <iosfwd>

#include "eigenbar/surface.hpp"

namespace eigenbar {

// ASCII OFF: "OFF", a counts line "V F E", V vertex lines, F face lines "k i0 ... ik-1".
// Polygons with more than three corners are fan-triangulated.
SurfacePtr read_off(std::istream& in);
SurfacePtr read_off(const std::filesystem::path& path);
void write_off(std::ostream& out, const SimplicialSurface& surface);

// Field CSV with header "vertex_id,value"; every vertex must appear exactly once.
ScalarField read_field_csv(std::istream& in, const SurfacePtr& surface);
ScalarField read_field_csv(const std::filesystem::path& path, const SurfacePtr& surface);
void write_field_csv(std::ostream& out, const ScalarField& field);

// Torus grid field: a "# n=<N>" line, the header "i,j,value", then N*N rows.
// Returns a field on build_flat_torus_grid(N).
ScalarField read_grid_field(std::istream& in);
ScalarField read_grid_field(const std::filesystem::path& path);
void write_grid_field(std::ostream& out, const ScalarField& field);
// Grid side length of a field that lives on a flat torus grid.
int grid_side(const ScalarField& field);

// Circle samples: optional "value" header, one number per line.
CircleField read_circle_csv(std::istream& in);

}  // namespace eigenbar
