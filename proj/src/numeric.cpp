#include "arisem/numeric.hpp"

#include <gmp.h>

#include <cmath>
#include <sstream>

namespace arisem {

unsigned bits_to_digits10(unsigned bits) {
    // ceil(bits * log10(2)); the reverse conversion inside MPFR rounds up
    // again, so the effective significand is never below `bits`.
    return static_cast<unsigned>((static_cast<std::uint64_t>(bits) * 30103u + 99999u) / 100000u);
}

PrecisionScope::PrecisionScope(unsigned precision_bits)
    : saved_digits10_(Real::default_precision()) {
    if (precision_bits < 24) precision_bits = 24;
    Real::default_precision(bits_to_digits10(precision_bits));
}

PrecisionScope::~PrecisionScope() { Real::default_precision(saved_digits10_); }

Real rounding_eps() {
    const long digits10 = static_cast<long>(Real::default_precision());
    const long bits = static_cast<long>(digits10 * 3.33) ;
    Real eps(1);
    return ldexp(eps, static_cast<int>(-(bits - 3)));
}

Real pow_int(Real x, unsigned long n) {
    Real acc(1);
    while (n > 0) {
        if (n & 1ul) acc *= x;
        x *= x;
        n >>= 1;
    }
    return acc;
}

Real log1p_real(const Real& x) {
    Real result;
    mpfr_log1p(result.backend().data(), x.backend().data(), MPFR_RNDN);
    return result;
}

BoundedReal bounded_add(const BoundedReal& a, const BoundedReal& b) {
    Real v = a.value + b.value;
    return {v, a.bound + b.bound + rounding_eps() * (1 + abs(v))};
}

BoundedReal bounded_sub(const BoundedReal& a, const BoundedReal& b) {
    Real v = a.value - b.value;
    return {v, a.bound + b.bound + rounding_eps() * (1 + abs(v))};
}

BoundedReal bounded_log(const BoundedReal& a) {
    Real floor = a.value - a.bound;
    Real v = log(a.value);
    // |ln(x ± b) - ln(x)| <= b / (x - b) for b < x
    return {v, a.bound / floor + rounding_eps() * (1 + abs(v))};
}

BoundedReal bounded_exp(const BoundedReal& a) {
    Real v = exp(a.value);
    Real amplified = exp(a.value + a.bound) - v;
    return {v, amplified + rounding_eps() * (1 + abs(v))};
}

BoundedReal bounded_inv(const BoundedReal& a) {
    Real floor = a.value - a.bound;
    Real v = Real(1) / a.value;
    // |1/(x ± b) - 1/x| <= b / (x (x - b))
    return {v, a.bound / (a.value * floor) + rounding_eps() * (1 + abs(v))};
}

std::string format_real(const Real& x, unsigned digits) {
    if (digits == 0) digits = 1;
    return x.str(static_cast<std::streamsize>(digits), std::ios_base::scientific);
}

Int binomial(unsigned long n, unsigned long k) {
    if (k > n) return Int(0);
    Int result;
    mpz_bin_uiui(result.backend().data(), n, k);
    return result;
}

Int int_pow(Int q, unsigned long n) {
    Int acc(1);
    while (n > 0) {
        if (n & 1ul) acc *= q;
        q *= q;
        n >>= 1;
    }
    return acc;
}

}  // namespace arisem
