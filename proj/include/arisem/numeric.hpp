#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <string>

namespace arisem {

namespace mp = boost::multiprecision;

/// Exact arbitrary-size integer.
using Int = mp::mpz_int;
/// Exact rational.
using Rat = mp::mpq_rational;
/// Variable-precision real. The working precision is set per run through
/// PrecisionScope; all operations on values created inside one scope are
/// deterministic for a fixed configuration.
using Real = mp::number<mp::mpfr_float_backend<0>, mp::et_off>;

inline constexpr unsigned kDefaultPrecisionBits = 128;

unsigned bits_to_digits10(unsigned bits);

/// Sets the thread's default Real precision from a significand size in bits
/// (rounded up to whole decimal digits, so the effective precision is at
/// least `precision_bits`). Restores the previous setting on destruction.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned precision_bits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope&) = delete;
    PrecisionScope& operator=(const PrecisionScope&) = delete;

private:
    unsigned saved_digits10_;
};

/// Rounding granularity of the current default precision, as an absolute
/// quantity near 1: roughly 2^(3-bits). Used as per-operation slop when
/// propagating error bounds.
Real rounding_eps();

/// x^n by binary exponentiation on the rounded x. Deterministic and exact
/// for exactly representable x with small n.
Real pow_int(Real x, unsigned long n);

/// ln(1 + x) without cancellation for small |x|, at the ambient precision.
Real log1p_real(const Real& x);

/// Value together with a propagated absolute error bound (bound >= 0).
struct BoundedReal {
    Real value;
    Real bound;
};

BoundedReal bounded_add(const BoundedReal& a, const BoundedReal& b);
BoundedReal bounded_sub(const BoundedReal& a, const BoundedReal& b);
/// ln of a positive bounded value; requires value - bound > 0.
BoundedReal bounded_log(const BoundedReal& a);
/// exp of a bounded value.
BoundedReal bounded_exp(const BoundedReal& a);
/// 1/x for positive bounded x; requires value - bound > 0.
BoundedReal bounded_inv(const BoundedReal& a);

/// Scientific-notation rendering with `digits` significant digits.
/// Stable across runs for identical values.
std::string format_real(const Real& x, unsigned digits);

/// Binomial coefficient C(n, k) as an exact integer.
Int binomial(unsigned long n, unsigned long k);

/// Harmonic-style exact power q^n for integer q >= 2, n >= 0.
Int int_pow(Int q, unsigned long n);

}  // namespace arisem
