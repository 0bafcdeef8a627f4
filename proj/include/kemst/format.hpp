#pragma once

#include <string>

namespace kemst {

// Shortest round-trip decimal form; "inf" / "nan" for non-finite values.
std::string format_double(double x);

}  // namespace kemst
