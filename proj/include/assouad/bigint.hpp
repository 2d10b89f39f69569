#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace assouad {

using BigInt = boost::multiprecision::cpp_int;

/// Natural log of a positive integer, accurate to long double precision for any size.
long double log_big(const BigInt& x);

BigInt pow_big(const BigInt& base, std::uint64_t exponent);

inline std::string to_decimal(const BigInt& x) { return x.str(); }

}  // namespace assouad
