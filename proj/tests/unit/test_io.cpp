#include <algorithm>
#include <filesystem>
#include <sstream>

#include "doctest.h"
#include "eigenbar/barcode_io.hpp"
#include "eigenbar/errors.hpp"
#include "eigenbar/golden.hpp"
#include "eigenbar/mesh_io.hpp"
#include "eigenbar/trig_poly.hpp"

using namespace eigenbar;

TEST_CASE("OFF round trip and fan triangulation") {
    std::istringstream square("OFF\n# unit square as a quad plus a triangle\n4 1 0\n0 0 0\n1 0 0\n1 1 0\n0 1 0\n4 0 1 2 3\n");
    const auto s = read_off(square);
    CHECK(s->vertex_count() == 4);
    CHECK(s->triangle_count() == 2);
    CHECK(s->has_boundary());

    const auto torus = build_flat_torus_grid(5);
    std::stringstream buf;
    write_off(buf, *torus);
    const auto back = read_off(buf);
    CHECK(back->vertex_count() == torus->vertex_count());
    CHECK(std::ranges::equal(back->triangles(), torus->triangles()));
    CHECK(back->betti() == torus->betti());
}

TEST_CASE("OFF errors") {
    std::istringstream bad_magic("PLY\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 2\n");
    CHECK_THROWS_AS(read_off(bad_magic), InvalidArgument);
    std::istringstream bad_index("OFF\n3 1 0\n0 0 0\n1 0 0\n0 1 0\n3 0 1 7\n");
    CHECK_THROWS_AS(read_off(bad_index), InvalidArgument);
    std::istringstream truncated("OFF\n3 1 0\n0 0 0\n1 0 0\n");
    CHECK_THROWS_AS(read_off(truncated), InvalidArgument);
}

TEST_CASE("vertex field CSV") {
    const auto s = build_octahedral_sphere(0);
    std::istringstream in("vertex_id,value\n2,0.5\n0,1\n1,-1\n3,2\n4,3\n5,4\n");
    const auto f = read_field_csv(in, s);
    CHECK(f.values()[0] == 1.0);
    CHECK(f.values()[2] == 0.5);
    std::stringstream buf;
    write_field_csv(buf, f);
    CHECK(std::ranges::equal(read_field_csv(buf, s).values(), f.values()));

    std::istringstream missing("vertex_id,value\n0,1\n1,2\n");
    CHECK_THROWS_AS(read_field_csv(missing, s), InvalidArgument);
    std::istringstream twice("vertex_id,value\n0,1\n0,1\n1,-1\n3,2\n4,3\n5,4\n");
    CHECK_THROWS_AS(read_field_csv(twice, s), InvalidArgument);
    std::istringstream nan("vertex_id,value\n0,nan\n1,-1\n2,0\n3,2\n4,3\n5,4\n");
    CHECK_THROWS(read_field_csv(nan, s));
}

TEST_CASE("grid field CSV round trip") {
    const auto f = random_trig_poly(10, 2).to_field(build_flat_torus_grid(12));
    std::stringstream buf;
    write_grid_field(buf, f);
    const auto g = read_grid_field(buf);
    CHECK(grid_side(g) == 12);
    CHECK(std::ranges::equal(g.values(), f.values()));

    std::istringstream no_header("i,j,value\n0,0,1\n");
    CHECK_THROWS_AS(read_grid_field(no_header), InvalidArgument);
    std::istringstream short_rows("# n=2\ni,j,value\n0,0,1\n1,0,2\n");
    CHECK_THROWS_AS(read_grid_field(short_rows), InvalidArgument);
    CHECK_THROWS(grid_side(ScalarField(build_octahedral_sphere(0), std::vector<double>(6, 0.0))));
}

TEST_CASE("barcode JSON") {
    const auto b = torus_eigenfunction_barcode(2);
    const auto text = barcode_to_json(b);
    CHECK(text.find("null") != std::string::npos);
    const auto back = barcode_from_json(text);
    CHECK(back.bars == b.bars);
    CHECK(back.boundary == b.boundary);

    const auto parsed = barcode_from_json(R"({"bars":[{"birth":-1,"death":null,"degree":0},{"birth":0,"death":2.5,"degree":1}],"boundary":true})");
    REQUIRE(parsed.bars.size() == 2);
    CHECK(parsed.bars[0] == Bar::essential(-1, 0));
    CHECK(parsed.bars[1] == Bar::finite(0, 2.5, 1));
    CHECK(parsed.boundary);

    CHECK_THROWS_AS(barcode_from_json("{not json"), InvalidArgument);
    CHECK_THROWS_AS(barcode_from_json(R"({"bars":[{"birth":1,"death":0,"degree":0}]})"), InvalidArgument);

    const auto path = std::filesystem::temp_directory_path() / "eigenbar_io_barcode.json";
    write_barcode_json(path, b);
    CHECK(read_barcode_json(path).bars == b.bars);
    std::filesystem::remove(path);
}

TEST_CASE("diagram CSV with infinite deaths") {
    Barcode b;
    b.bars = {Bar::essential(-0.25, 0), Bar::finite(0.125, 3.5, 1), Bar::essential(7, 2)};
    std::stringstream buf;
    write_diagram_csv(buf, b);
    CHECK(buf.str().find("inf") != std::string::npos);
    CHECK(read_diagram_csv(buf).bars == b.bars);
    std::istringstream bad("degree,birth,death\n0,1,zzz\n");
    CHECK_THROWS_AS(read_diagram_csv(bad), InvalidArgument);
}

TEST_CASE("circle CSV") {
    std::istringstream in("value\n0\n2\n1\n3\n");
    const auto c = read_circle_csv(in);
    CHECK(std::ranges::equal(c.values(), std::vector<double>{0, 2, 1, 3}));
}
