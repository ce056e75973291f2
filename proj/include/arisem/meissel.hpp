#pragma once

#include "arisem/mertens.hpp"
#include "arisem/numeric.hpp"
#include "arisem/semigroup.hpp"

#include <vector>

namespace arisem::meissel {

using semigroup::GeneratorCounts;

/// s(x) = S(floor(x)) - ln(x) - C_1 against a precomputed prefix table
/// S(1..n_max).
Real s_deviation(const std::vector<Real>& s_prefix, const Real& x, const Real& c1);

/// int_1^N h(x) x^(-alpha-1) dx for the unit-interval step function
/// h = step[m-1] on [m, m+1), exact per piece; alpha >= 0 (alpha = 0 takes
/// the logarithmic antiderivative).
Real step_weighted_integral(const std::vector<Real>& step, const Real& alpha, int n);

/// int_1^N ln(x) x^(-alpha-1) dx in closed form; alpha >= 0.
Real log_weighted_integral(const Real& alpha, int n);

struct MeisselEvaluation {
    Real alpha;
    Real series_value;  // corrected series
    Real series_tail_bound;
    Real j_value;
    Real j_tail_bound;
    Real identity_residual;
    int k = 0;  // series truncation degree
    int n = 0;  // integral truncation point
};

struct SeriesValue {
    Real raw;
    Real corrected;
    Real tail_bound;
    bool correction_applicable = true;  // false for the zero semigroup
};

struct ScanRow {
    Real alpha;
    Real series;
    Real tail_bound;
    Real j;
    Real identity_residual;
    Real d_over_alpha;
};

struct ScanTable {
    std::vector<ScanRow> rows;
    std::vector<MeisselEvaluation> evaluations;
    BoundedReal j0;
    Real max_deviation;  // max |D(alpha)/alpha - J(0)| over the grid
};

/// Shared state for the Meissel-type evaluations of one instance: the
/// Mertens prefix sums, C_1, and empirical decay statistics for s beyond
/// the data (top-decile sup, labeled empirical in the reported bounds).
class MeisselContext {
public:
    MeisselContext(const GeneratorCounts& p, const Real& q, const BoundedReal& c1);

    int n_max() const { return p_.n_max; }
    const BoundedReal& c1() const { return c1_; }
    Real s_at(int n) const;  // s on [n, n+1)

    /// J(alpha) = int_1^N s(x) x^(-alpha-1) dx as a sum of closed-form
    /// pieces over unit intervals. alpha = 0 uses the logarithmic
    /// antiderivatives. The tail bound uses sup_{x>=N} |s| (empirical) for
    /// alpha > 0 and the fitted c/x decay model for alpha = 0
    /// (TailUnbounded when |s| shows no decay near the end of the data).
    BoundedReal j_integral(const Real& alpha, int n) const;

    /// Truncated series sum_{k<=K} P(k)/(q^k k^alpha) plus the
    /// partial-summation tail correction K^(-alpha)/alpha - s(K) K^(-alpha);
    /// the residual tail bound is sup_{x>=K} |s| K^(-alpha).
    SeriesValue meissel_series(const Real& alpha, int k) const;

    /// Residual of the Theorem-style identity
    /// series(alpha) - (1/alpha + C_1 + alpha J(alpha)).
    MeisselEvaluation identity_residual(const Real& alpha, int k, int n) const;

    /// Residual of the exact finite-n Abel-summation identity
    /// sum_{k<=n} P(k)/(q^k k^alpha) = S(n)/n^alpha + alpha int_1^n S(x) x^(-alpha-1) dx,
    /// which must vanish to rounding precision.
    Real abel_identity_residual(const Real& alpha, int n) const;

    /// Rows per alpha (decreasing grid in (0, 1]): corrected series, J,
    /// identity residual, and D(alpha)/alpha against J(0).
    ScanTable alpha_scan(const std::vector<Real>& alphas, int k, int n) const;

private:
    GeneratorCounts p_;
    Real q_;
    BoundedReal c1_;
    std::vector<Real> s_prefix_;  // S(1..n_max)
    Real sup_s_top_;              // max |s| over the top decile
    Real c_over_x_;               // max n |s(n)| over the top decile
    bool s_decays_ = false;
};

}  // namespace arisem::meissel
