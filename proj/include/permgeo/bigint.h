#pragma once

#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace permgeo {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial(std::size_t n, std::size_t k);

inline std::string to_string(const BigInt& v) { return v.str(); }

} // namespace permgeo
