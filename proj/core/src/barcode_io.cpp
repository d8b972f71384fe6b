#include "eigenbar/barcode_io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "eigenbar/errors.hpp"
#include "json.hpp"

namespace eigenbar {

using nlohmann::json;

std::string barcode_to_json(const Barcode& barcode, int indent) {
    json bars = json::array();
    for (const auto& b : barcode.bars) {
        json item;
        item["birth"] = b.birth;
        item["death"] = b.infinite ? json(nullptr) : json(b.death);
        item["degree"] = b.degree;
        bars.push_back(std::move(item));
    }
    json doc;
    doc["bars"] = std::move(bars);
    doc["boundary"] = barcode.boundary;
    return doc.dump(indent);
}

Barcode barcode_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        throw InvalidArgument(std::string("malformed barcode JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("bars") || !doc["bars"].is_array())
        throw InvalidArgument("barcode JSON needs a 'bars' array");
    Barcode barcode;
    if (doc.contains("boundary")) {
        if (!doc["boundary"].is_boolean()) throw InvalidArgument("'boundary' must be a boolean");
        barcode.boundary = doc["boundary"].get<bool>();
    }
    for (const auto& item : doc["bars"]) {
        if (!item.is_object() || !item.contains("birth") || !item["birth"].is_number() || !item.contains("degree") ||
            !item["degree"].is_number_integer())
            throw InvalidArgument("each bar needs numeric 'birth' and integer 'degree'");
        const double birth = item["birth"].get<double>();
        const int degree = item["degree"].get<int>();
        if (degree < 0) throw InvalidArgument("bar degree must be non-negative");
        if (!std::isfinite(birth)) throw InvalidArgument("bar birth must be finite");
        if (!item.contains("death") || item["death"].is_null()) {
            barcode.bars.push_back(Bar::essential(birth, degree));
            continue;
        }
        if (!item["death"].is_number()) throw InvalidArgument("bar death must be a number or null");
        const double death = item["death"].get<double>();
        if (!std::isfinite(death) || !(birth < death)) throw InvalidArgument("finite bar needs birth < death");
        barcode.bars.push_back(Bar::finite(birth, death, degree));
    }
    return barcode;
}

Barcode read_barcode_json(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidArgument("cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return barcode_from_json(ss.str());
}

void write_barcode_json(const std::filesystem::path& path, const Barcode& barcode) {
    std::ofstream out(path);
    if (!out) throw InvalidArgument("cannot write " + path.string());
    out << barcode_to_json(barcode, 2) << '\n';
}

void write_diagram_csv(std::ostream& out, const Barcode& barcode) {
    out << "degree,birth,death\n" << std::setprecision(17);
    for (const auto& b : barcode.bars) {
        out << b.degree << ',' << b.birth << ',';
        if (b.infinite)
            out << "inf";
        else
            out << b.death;
        out << '\n';
    }
}

Barcode read_diagram_csv(std::istream& in) {
    Barcode barcode;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line != "degree,birth,death") throw InvalidArgument("diagram CSV header must be 'degree,birth,death'");
            continue;
        }
        std::stringstream ss(line);
        std::string d, b, e;
        if (!std::getline(ss, d, ',') || !std::getline(ss, b, ',') || !std::getline(ss, e))
            throw InvalidArgument("diagram CSV rows need three columns");
        try {
            const int degree = std::stoi(d);
            const double birth = std::stod(b);
            if (e == "inf")
                barcode.bars.push_back(Bar::essential(birth, degree));
            else
                barcode.bars.push_back(Bar::finite(birth, std::stod(e), degree));
        } catch (const std::logic_error&) {
            throw InvalidArgument("malformed diagram row: " + line);
        }
    }
    return barcode;
}

}  // namespace eigenbar
