#pragma once

#include <string>

namespace fbr {

/// Shortest decimal text that parses back to exactly `value`.
std::string to_shortest(double value);

}  // namespace fbr
