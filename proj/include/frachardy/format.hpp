#pragma once

#include <string>

namespace frachardy {

// 17 significant digits, round-trippable.
std::string format_double(double v);

}  // namespace frachardy
