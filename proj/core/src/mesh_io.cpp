#include "eigenbar/mesh_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "eigenbar/errors.hpp"

namespace eigenbar {

namespace {

// Next line that is neither empty nor a '#' comment.
bool next_content_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        line = line.substr(first);
        return true;
    }
    return false;
}

std::ifstream open_or_throw(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    return in;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        const auto a = cell.find_first_not_of(" \t\r");
        const auto b = cell.find_last_not_of(" \t\r");
        cells.push_back(a == std::string::npos ? std::string{} : cell.substr(a, b - a + 1));
    }
    return cells;
}

double parse_double(const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("not a number: '" + s + "'");
    }
    if (used != s.size()) throw InvalidArgument("not a number: '" + s + "'");
    return v;
}

long parse_int(const std::string& s) {
    std::size_t used = 0;
    long v = 0;
    try {
        v = std::stol(s, &used);
    } catch (const std::exception&) {
        throw InvalidArgument("not an integer: '" + s + "'");
    }
    if (used != s.size()) throw InvalidArgument("not an integer: '" + s + "'");
    return v;
}

}  // namespace

SurfacePtr read_off(std::istream& in) {
    std::string line;
    if (!next_content_line(in, line)) throw InvalidArgument("empty OFF input");
    std::istringstream header(line);
    std::string magic;
    header >> magic;
    if (magic != "OFF") throw InvalidArgument("missing OFF header");
    std::size_t nv = 0;
    std::size_t nf = 0;
    std::size_t ne = 0;
    if (!(header >> nv)) {
        if (!next_content_line(in, line)) throw InvalidArgument("missing OFF counts line");
        std::istringstream counts(line);
        if (!(counts >> nv >> nf)) throw InvalidArgument("malformed OFF counts line");
        counts >> ne;
    } else {
        if (!(header >> nf)) throw InvalidArgument("malformed OFF counts line");
    }
    std::vector<Point3> pts(nv);
    for (auto& p : pts) {
        if (!next_content_line(in, line)) throw InvalidArgument("truncated OFF vertex list");
        std::istringstream ls(line);
        if (!(ls >> p[0] >> p[1] >> p[2])) throw InvalidArgument("malformed OFF vertex line");
    }
    std::vector<Triangle> tris;
    for (std::size_t f = 0; f < nf; ++f) {
        if (!next_content_line(in, line)) throw InvalidArgument("truncated OFF face list");
        std::istringstream ls(line);
        int k = 0;
        if (!(ls >> k) || k < 3) throw InvalidArgument("malformed OFF face line");
        std::vector<int> corners(k);
        for (auto& c : corners)
            if (!(ls >> c)) throw InvalidArgument("malformed OFF face line");
        for (int i = 1; i + 1 < k; ++i) tris.push_back({corners[0], corners[i], corners[i + 1]});
    }
    return share(SimplicialSurface::from_triangles(nv, std::move(tris), {}, std::move(pts)));
}

SurfacePtr read_off(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return read_off(in);
}

void write_off(std::ostream& out, const SimplicialSurface& surface) {
    out << "OFF\n" << surface.vertex_count() << ' ' << surface.triangle_count() << ' ' << surface.edge_count() << '\n';
    out << std::setprecision(17);
    for (std::size_t v = 0; v < surface.vertex_count(); ++v) {
        if (surface.has_embedding()) {
            const auto& p = surface.embedding()[v];
            out << p[0] << ' ' << p[1] << ' ' << p[2] << '\n';
        } else if (surface.has_chart()) {
            const auto& p = surface.chart()[v];
            out << p[0] << ' ' << p[1] << " 0\n";
        } else {
            out << "0 0 0\n";
        }
    }
    for (const auto& t : surface.triangles()) out << "3 " << t[0] << ' ' << t[1] << ' ' << t[2] << '\n';
}

ScalarField read_field_csv(std::istream& in, const SurfacePtr& surface) {
    std::string line;
    if (!next_content_line(in, line)) throw InvalidArgument("empty field CSV");
    if (split_csv(line) != std::vector<std::string>{"vertex_id", "value"})
        throw InvalidArgument("field CSV header must be 'vertex_id,value'");
    const std::size_t n = surface->vertex_count();
    std::vector<double> values(n, std::numeric_limits<double>::quiet_NaN());
    std::vector<char> seen(n, 0);
    while (next_content_line(in, line)) {
        const auto cells = split_csv(line);
        if (cells.size() != 2) throw InvalidArgument("field CSV rows need two columns");
        const long id = parse_int(cells[0]);
        if (id < 0 || static_cast<std::size_t>(id) >= n) throw InvalidArgument("vertex id out of range: " + cells[0]);
        if (seen[id]) throw InvalidArgument("duplicate vertex id: " + cells[0]);
        seen[id] = 1;
        values[id] = parse_double(cells[1]);
    }
    for (std::size_t v = 0; v < n; ++v)
        if (!seen[v]) throw InvalidArgument("field CSV misses vertex " + std::to_string(v));
    return ScalarField(surface, std::move(values));
}

ScalarField read_field_csv(const std::filesystem::path& path, const SurfacePtr& surface) {
    auto in = open_or_throw(path);
    return read_field_csv(in, surface);
}

void write_field_csv(std::ostream& out, const ScalarField& field) {
    out << "vertex_id,value\n" << std::setprecision(17);
    for (std::size_t v = 0; v < field.values().size(); ++v) out << v << ',' << field.values()[v] << '\n';
}

ScalarField read_grid_field(std::istream& in) {
    std::string line;
    int n = 0;
    while (std::getline(in, line)) {
        const auto pos = line.find("n=");
        if (line.rfind('#', 0) == 0 && pos != std::string::npos) {
            n = static_cast<int>(parse_int(split_csv(line.substr(pos + 2)).at(0)));
            break;
        }
        if (line.find_first_not_of(" \t\r") != std::string::npos)
            throw InvalidArgument("grid field must start with a '# n=<N>' line");
    }
    if (n < 3) throw InvalidArgument("grid field declares no valid n");
    if (!next_content_line(in, line) || split_csv(line) != std::vector<std::string>{"i", "j", "value"})
        throw InvalidArgument("grid field header must be 'i,j,value'");
    const auto surface = build_flat_torus_grid(n);
    std::vector<double> values(static_cast<std::size_t>(n) * n, std::numeric_limits<double>::quiet_NaN());
    std::vector<char> seen(values.size(), 0);
    while (next_content_line(in, line)) {
        const auto cells = split_csv(line);
        if (cells.size() != 3) throw InvalidArgument("grid field rows need three columns");
        const long i = parse_int(cells[0]);
        const long j = parse_int(cells[1]);
        if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidArgument("grid index out of range");
        const auto id = static_cast<std::size_t>(j) * n + i;
        if (seen[id]) throw InvalidArgument("duplicate grid cell");
        seen[id] = 1;
        values[id] = parse_double(cells[2]);
    }
    for (char s : seen)
        if (!s) throw InvalidArgument("grid field is incomplete");
    return ScalarField(surface, std::move(values));
}

ScalarField read_grid_field(const std::filesystem::path& path) {
    auto in = open_or_throw(path);
    return read_grid_field(in);
}

int grid_side(const ScalarField& field) {
    const auto& s = field.surface();
    const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(s.vertex_count()))));
    if (static_cast<std::size_t>(n) * n != s.vertex_count() || s.has_boundary() || !s.has_chart() ||
        s.triangle_count() != 2 * s.vertex_count())
        throw Unsupported("field does not live on a flat torus grid");
    return n;
}

void write_grid_field(std::ostream& out, const ScalarField& field) {
    const int n = grid_side(field);
    out << "# n=" << n << "\ni,j,value\n" << std::setprecision(17);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) out << i << ',' << j << ',' << field.values()[static_cast<std::size_t>(j) * n + i] << '\n';
}

CircleField read_circle_csv(std::istream& in) {
    std::string line;
    std::vector<double> values;
    bool first = true;
    while (next_content_line(in, line)) {
        const auto cells = split_csv(line);
        if (first && cells.size() == 1 && cells[0] == "value") {
            first = false;
            continue;
        }
        first = false;
        if (cells.size() != 1) throw InvalidArgument("circle CSV rows need one column");
        values.push_back(parse_double(cells[0]));
    }
    return CircleField(std::move(values));
}

}  // namespace eigenbar
