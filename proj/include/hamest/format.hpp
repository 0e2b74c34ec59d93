#pragma once

#include <string>

namespace hamest {

/// Shortest decimal representation that parses back to the same double.
/// Locale independent.
std::string format_double(double value);

}  // namespace hamest
