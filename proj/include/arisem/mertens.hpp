#pragma once

#include "arisem/envelope.hpp"
#include "arisem/normalization.hpp"
#include "arisem/numeric.hpp"
#include "arisem/semigroup.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace arisem::mertens {

using semigroup::ElementCounts;
using semigroup::GeneratorCounts;
using semigroup::ResolvedSemigroup;

/// Euler's constant at the requested precision. The value is checked once
/// per precision against the limit H_n - ln(n) with Euler-Maclaurin
/// correction terms, to at least 30 digits.
Real euler_gamma(unsigned precision_bits);

struct PartialSum {
    Real value;
    Real deviation;  // value - n
};

/// Prefix sum of lambda with its deviation from n.
PartialSum lambda_partial_sum(const std::vector<Real>& lambda, int n);
Rat lambda_partial_sum_exact(const GeneratorCounts& p, int q, int n);

/// S(n) = sum_{k<=n} P(k)/q^k.
Real mertens_sum(const GeneratorCounts& p, const Real& q, int n);
Rat mertens_sum_exact(const GeneratorCounts& p, int q, int n);
/// All prefix values S(1)..S(n) in one ascending pass.
std::vector<Real> mertens_sum_prefix(const GeneratorCounts& p, const Real& q, int n);

/// Sum over prime powers: pairs (d, j) with j d <= n contribute
/// P(d) q^(-jd) / j.
Real prime_power_sum(const GeneratorCounts& p, const Real& q, int n);
Rat prime_power_sum_exact(const GeneratorCounts& p, int q, int n);

struct MertensProduct {
    Real log_sum;  // sum P(k) ln(1 - q^-k), the quantity actually accumulated
    Real product;
    Real n_product;
    Real inv_n_product;
};

/// prod_{k<=n} (1 - q^-k)^P(k), evaluated in log space.
MertensProduct mertens_product(const GeneratorCounts& p, const Real& q, int n);

/// C_M = sum_k P(k) (-ln(1 - q^-k) - q^-k), with a certified geometric
/// tail bound <= tol (conditional on the empirical majorant
/// P(k) <= c q^k / k measured on the data). InsufficientData when the
/// available n_max cannot reach tol.
BoundedReal c_m(const GeneratorCounts& p, const Real& q, const Real& tol);

/// C_3 = sum_k k P(k) / (q^k (q^k - 1)), same bounding scheme.
BoundedReal c_3(const GeneratorCounts& p, const Real& q, const Real& tol);

BoundedReal c_1(const BoundedReal& a, const BoundedReal& cm, const BoundedReal& gamma);
BoundedReal c_2(const BoundedReal& a, const BoundedReal& gamma);

/// sum_k k P(k) G(n-k)/G(n), evaluated as one exact rational and rounded
/// once. ZeroDenominator when G(n) = 0.
Real lemma3_lhs(const GeneratorCounts& p, const ElementCounts& g, int n);

/// Exact integer identity n G(n) = sum_k P(k) k sum_j G(n - jk).
bool exact_degree_identity_check(const GeneratorCounts& p, const ElementCounts& g, int n);

/// I(N) = int_1^N (Lambda(t) - t)/t^2 dt, piecewise exact over unit
/// intervals; Lambda is the lambda prefix-sum step function. The bound is
/// the empirical tail estimate sup |Lambda - t| / N plus rounding slop.
BoundedReal lambda_deviation_integral(const std::vector<Real>& lambda, int n);

struct ConstantsReport {
    BoundedReal gamma;
    BoundedReal a;
    BoundedReal cm;
    BoundedReal c1;
    BoundedReal c2;
    BoundedReal c3;
    BoundedReal i_integral;
    bool degenerate = false;  // sum P(k) = 0
};

ConstantsReport constants_report(const ResolvedSemigroup& instance, unsigned precision_bits,
                                 const Real& tail_tol);

/// Theorem-4-style envelope diagnostic: fit the residual family f to |r|,
/// then measure how the deviation sum lambda_k - n (minus a fitted additive
/// constant, the median over the top half of the window) sits inside that
/// family's F. Raises NoDecay through fit_residual_model when |r| does not
/// decay.
struct EnvelopeDiagnostic {
    std::string family;     // fitted residual family description
    Real residual_c;        // smallest c with |r(n)| <= c f(n) on the window
    Real containment_c;     // max |dev(n) - const| / F(n) over the window
    Real fitted_constant;   // the additive constant absorbed by the O(1)
    bool zero_residuals = false;  // residuals at rounding level; containment_c
                                  // then holds max |dev(n) - const| instead
};

/// r_abs and deviation run over degrees window_lo .. window_lo + size - 1.
EnvelopeDiagnostic envelope_diagnostic(const std::vector<Real>& r_abs,
                                       const std::vector<Real>& deviation, int window_lo);

struct CheckResult {
    std::string name;
    Real statistic;
    Real tolerance;
    bool pass = false;
};

struct SeriesBlock {
    std::string name;
    std::vector<std::pair<int, Real>> points;  // rendered as an inline CSV block
};

struct ZhangReport {
    semigroup::SemigroupSpec spec;
    unsigned precision_bits = kDefaultPrecisionBits;
    bool degenerate = false;
    ConstantsReport constants;
    Real lambda_max;
    int lambda_argmax = 0;
    Real lambda_tail_max;  // max over the top decile; boundedness trend
    std::string envelope_family;
    std::vector<CheckResult> checks;
    std::vector<SeriesBlock> series;

    bool all_pass() const;
};

/// Default tolerances for the verify checks, overridable per name.
std::map<std::string, Real> default_verify_tolerances();

/// Runs the Proposition-1/2, Lemma-3 and Theorem-4 diagnostics on a
/// resolved instance and reports one pass/fail entry per check.
ZhangReport zhang_report(const ResolvedSemigroup& instance, unsigned precision_bits,
                         const std::map<std::string, Real>& tolerance_overrides);

}  // namespace arisem::mertens
