#pragma once

#include <string>
#include <vector>

#include "eigenbar/persistence.hpp"

namespace eigenbar {

/// Exact barcode of (1/pi) sin(nx) cos(ny) on the flat torus: (-1/pi, inf) and
/// (2n^2 - 1) x (-1/pi, 0] in degree 0, 2 x (0, inf) and (2n^2 - 1) x (0, 1/pi] in
/// degree 1, (1/pi, inf) in degree 2.
Barcode torus_eigenfunction_barcode(int n);

struct GoldenEntry {
    std::string name;
    bool passed = false;
    std::string detail;
};

struct GoldenReport {
    std::vector<GoldenEntry> entries;

    bool passed() const;
    std::string to_json() const;
    // One "PASS name: detail" / "FAIL name: detail" line per entry.
    std::string to_text() const;
};

/// Self-contained reproduction of the worked examples: torus eigenfunction barcodes on
/// a 256^2 grid, Kunneth closed forms, the circle variation identity, kernel constants,
/// significant-bar counts and the critical-point identity.
GoldenReport run_golden_suite();

}  // namespace eigenbar
