#include "eigenbar/errors.hpp"

namespace eigenbar {

void throw_invalid(const std::string& what) { throw InvalidArgument(what); }

}  // namespace eigenbar
