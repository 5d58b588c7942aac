#pragma once

#include <string_view>

#include "pqcat/digits.hpp"

namespace pqcat {

/// Parses a nonnegative integer written in decimal ("45") or as a power
/// ("2^1518", "10^4"). Throws DomainError on anything else.
BigInt parse_integer(std::string_view text);

}  // namespace pqcat
