#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace artin {

/// Exact unsigned accumulator. Overflow throws std::overflow_error, which
/// callers translate into artin::OverflowError with the offending prime.
/// 512 bits covers p^k (p-1)^r for k <= 3, r <= 8 up to p ~ 2^46.
using Wide = boost::multiprecision::checked_uint512_t;

using Rational = boost::multiprecision::cpp_rational;

/// Extended precision used for ratio snapshots and CSV values.
using Extended = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<50>,
                                               boost::multiprecision::et_off>;

/// Working precision of the constants module.
using Real = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<100>,
                                           boost::multiprecision::et_off>;

} // namespace artin
