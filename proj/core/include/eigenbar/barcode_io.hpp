#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "eigenbar/persistence.hpp"

namespace eigenbar {

// {"bars":[{"birth":x,"death":y|null,"degree":k}],"boundary":bool}; null death is +inf.
std::string barcode_to_json(const Barcode& barcode, int indent = -1);
Barcode barcode_from_json(const std::string& text);
Barcode read_barcode_json(const std::filesystem::path& path);
void write_barcode_json(const std::filesystem::path& path, const Barcode& barcode);

// degree,birth,death rows, with the token inf for infinite deaths.
void write_diagram_csv(std::ostream& out, const Barcode& barcode);
Barcode read_diagram_csv(std::istream& in);

}  // namespace eigenbar
