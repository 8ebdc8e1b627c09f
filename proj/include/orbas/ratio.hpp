#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace orbas {

/// Exact rational used for supports, similarities and thresholds.
using Ratio = boost::rational<std::int64_t>;

/// Parses "0.15", "1", "2/3" or ".5" into an exact ratio. Throws InvalidArgument.
Ratio parse_ratio(std::string_view text);

/// Parses and checks 0 <= r <= 1.
Ratio parse_unit_ratio(std::string_view text);

/// "p/q" in lowest terms, or "p" when q == 1.
std::string to_string(const Ratio& r);

double to_double(const Ratio& r);

/// Smallest integer n with n >= r (r >= 0).
std::int64_t ceil_nonneg(const Ratio& r);

}  // namespace orbas
