#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace indmatch {

using Rational = boost::rational<std::int64_t>;

/// Accepts "7", "-3/2", "0.25". Throws ParseError with a column on failure.
Rational parse_rational(std::string_view text);

/// Canonical form: "7", "-3/2".
std::string format_rational(const Rational& value);

double to_double(const Rational& value);

}  // namespace indmatch
