#pragma once

#include "arisem/numeric.hpp"
#include "arisem/semigroup.hpp"

#include <optional>
#include <vector>

namespace arisem::normalization {

using semigroup::ElementCounts;
using semigroup::GeneratorCounts;
using semigroup::RealGeneratorCounts;
using semigroup::SemigroupSpec;

/// Normalized view of a semigroup at a fixed working precision:
/// lambda[n-1] = n P(n) / q^n, g_norm[n] = G(n) / q^n, r[n] = g_norm[n] - A.
struct NormalizedSemigroup {
    Real q;
    unsigned precision_bits = kDefaultPrecisionBits;
    std::vector<Real> lambda;
    std::vector<Real> g_norm;
    std::optional<std::vector<Real>> r;
};

struct QEstimate {
    Real value;           // the ratio-extrapolation estimate
    Real ratio_estimate;  // same as value
    Real root_estimate;   // G(n_max)^(1/n_max) cross-check
    Real discrepancy;     // relative disagreement of the two estimates
};

enum class AMethod { tail_average, h_evaluation, exact_known };

const char* to_string(AMethod method);

struct AxiomAEstimate {
    Real a;
    AMethod method;
    Real residual_norm;  // reported error scale; see estimate_a
    int window_lo = 0;   // degree range (tail_average) or ladder range (h_evaluation)
    int window_hi = 0;
};

/// Growth-base estimate from coefficient ratios with iterated Aitken
/// acceleration; the n-th root of G(n_max) serves as an independent
/// cross-check. Disagreement above 10%, or an estimate at or below 1
/// (the excluded rho >= 1 regimes), raises NonGeometricGrowth.
QEstimate estimate_q(const ElementCounts& g);

/// lambda via the exact rational n P(n) / q^n, rounded once.
Rat lambda_exact(const GeneratorCounts& p, int q, int n);
std::vector<Real> lambda_sequence(const GeneratorCounts& p, int q);
/// lambda for non-integral q: q-powers by repeated squaring of the rounded q.
std::vector<Real> lambda_sequence(const GeneratorCounts& p, const Real& q);
/// Analysis-mode lambda over real-valued generator counts.
std::vector<Real> lambda_sequence(const RealGeneratorCounts& p, const Real& q);

/// g_norm(n) = G(n)/q^n; exact-rational path for integral q.
std::vector<Real> g_norm_sequence(const ElementCounts& g, int q);
std::vector<Real> g_norm_sequence(const ElementCounts& g, const Real& q);

/// H(y) = (1 - q y) Z_N(y) with the zeta truncation bound propagated.
/// Requires 0 < y < 1/q strictly.
BoundedReal h_eval(const ElementCounts& g, const Real& q, const Real& y, int N);

/// r(n) = G(n)/q^n - A for n = 0..n_max.
std::vector<Real> residuals(const ElementCounts& g, const Real& q, const Real& a);

/// Axiom-A estimate. tail_average fits A + c n^(-beta) over the top
/// quartile of degrees; h_evaluation extrapolates h_eval along a ladder
/// y -> 1/q; exact_known is available for poly_over_fq (A = 1).
/// residual_norm carries max |g_norm - A| over the window (tail_average)
/// or the extrapolation-plus-truncation bound (h_evaluation).
AxiomAEstimate estimate_a(const ElementCounts& g, const Real& q, AMethod method,
                          const SemigroupSpec* spec = nullptr);

NormalizedSemigroup normalize(const GeneratorCounts& p, const ElementCounts& g, const Real& q,
                              std::optional<int> integer_q, unsigned precision_bits,
                              const std::optional<Real>& a);

}  // namespace arisem::normalization
