#include "arisem/normalization.hpp"

#include "arisem/errors.hpp"

#include <algorithm>
#include <array>
#include <limits>

namespace arisem::normalization {

namespace {

// One Aitken delta-squared pass; stops early when second differences sink
// into rounding noise (the sequence is then as converged as it gets).
std::vector<Real> aitken_pass(const std::vector<Real>& seq, bool& degenerate) {
    std::vector<Real> next;
    const Real guard = rounding_eps();
    for (std::size_t i = 0; i + 2 < seq.size(); ++i) {
        Real d1 = seq[i + 1] - seq[i];
        Real d2 = seq[i + 2] - seq[i + 1];
        Real denom = d2 - d1;
        if (abs(denom) <= guard * (abs(seq[i + 2]) + 1)) {
            degenerate = true;
            return next;
        }
        next.push_back(seq[i + 2] - d2 * d2 / denom);
    }
    return next;
}

Real extrapolate_ratio_limit(std::vector<Real> seq) {
    Real best = seq.back();
    while (seq.size() >= 3) {
        bool degenerate = false;
        std::vector<Real> next = aitken_pass(seq, degenerate);
        if (degenerate || next.empty()) break;
        seq = std::move(next);
        best = seq.back();
    }
    return best;
}

}  // namespace

QEstimate estimate_q(const ElementCounts& g) {
    if (g.n_max < 8) fail(ErrorKind::DomainError, "estimate_q requires n_max >= 8");
    const int lo = g.n_max / 2;
    std::vector<Real> ratios;
    for (int n = lo; n < g.n_max; ++n) {
        if (g.at(n) <= 0 || g.at(n + 1) <= 0)
            fail(ErrorKind::NonGeometricGrowth, "G vanishes inside the extrapolation window");
        ratios.push_back(Real(g.at(n + 1)) / Real(g.at(n)));
    }

    QEstimate est;
    est.ratio_estimate = extrapolate_ratio_limit(ratios);
    est.root_estimate = exp(log(Real(g.at(g.n_max))) / g.n_max);
    est.discrepancy = abs(est.ratio_estimate - est.root_estimate) /
                      std::max(est.ratio_estimate, est.root_estimate);
    est.value = est.ratio_estimate;

    if (est.ratio_estimate <= Real("1.001"))
        fail(ErrorKind::NonGeometricGrowth,
             "estimated q <= 1; the rho = 1 regime is out of scope");
    if (est.discrepancy > Real("0.10"))
        fail(ErrorKind::NonGeometricGrowth,
             "ratio and n-th-root estimates disagree by " + format_real(est.discrepancy, 3));
    return est;
}

Rat lambda_exact(const GeneratorCounts& p, int q, int n) {
    if (q < 2) fail(ErrorKind::DomainError, "q must be >= 2");
    return Rat(Int(n) * p.at(n), int_pow(Int(q), static_cast<unsigned long>(n)));
}

std::vector<Real> lambda_sequence(const GeneratorCounts& p, int q) {
    std::vector<Real> lambda;
    lambda.reserve(static_cast<std::size_t>(p.n_max));
    Int q_pow(1);
    for (int n = 1; n <= p.n_max; ++n) {
        q_pow *= q;
        lambda.push_back(Real(Rat(Int(n) * p.at(n), q_pow)));
    }
    return lambda;
}

std::vector<Real> lambda_sequence(const GeneratorCounts& p, const Real& q) {
    if (q <= 1) fail(ErrorKind::DomainError, "q must exceed 1");
    std::vector<Real> lambda;
    lambda.reserve(static_cast<std::size_t>(p.n_max));
    for (int n = 1; n <= p.n_max; ++n)
        lambda.push_back(Real(p.at(n)) * n / pow_int(q, static_cast<unsigned long>(n)));
    return lambda;
}

std::vector<Real> lambda_sequence(const RealGeneratorCounts& p, const Real& q) {
    if (q <= 1) fail(ErrorKind::DomainError, "q must exceed 1");
    std::vector<Real> lambda;
    lambda.reserve(static_cast<std::size_t>(p.n_max));
    for (int n = 1; n <= p.n_max; ++n)
        lambda.push_back(p.at(n) * n / pow_int(q, static_cast<unsigned long>(n)));
    return lambda;
}

std::vector<Real> g_norm_sequence(const ElementCounts& g, int q) {
    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(g.n_max) + 1);
    Int q_pow(1);
    for (int n = 0; n <= g.n_max; ++n) {
        out.push_back(Real(Rat(g.at(n), q_pow)));
        q_pow *= q;
    }
    return out;
}

std::vector<Real> g_norm_sequence(const ElementCounts& g, const Real& q) {
    if (q <= 1) fail(ErrorKind::DomainError, "q must exceed 1");
    std::vector<Real> out;
    out.reserve(static_cast<std::size_t>(g.n_max) + 1);
    for (int n = 0; n <= g.n_max; ++n)
        out.push_back(Real(g.at(n)) / pow_int(q, static_cast<unsigned long>(n)));
    return out;
}

BoundedReal h_eval(const ElementCounts& g, const Real& q, const Real& y, int N) {
    if (!(y > 0) || !(y * q < 1))
        fail(ErrorKind::DomainError, "h_eval requires 0 < y < 1/q");
    semigroup::ZetaResult z = semigroup::zeta_truncated(g, y, N);
    const Real factor = 1 - q * y;
    Real bound = z.remainder_bound ? factor * (*z.remainder_bound)
                                   : std::numeric_limits<Real>::infinity();
    Real value = factor * z.value;
    return {value, bound + rounding_eps() * (1 + abs(value))};
}

std::vector<Real> residuals(const ElementCounts& g, const Real& q, const Real& a) {
    if (!(a > 0)) fail(ErrorKind::DomainError, "residuals require A > 0");
    std::vector<Real> r;
    r.reserve(static_cast<std::size_t>(g.n_max) + 1);
    for (int n = 0; n <= g.n_max; ++n)
        r.push_back(Real(g.at(n)) / pow_int(q, static_cast<unsigned long>(n)) - a);
    return r;
}

namespace {

// Least squares for g_norm(n) ~ A + c n^(-beta) over the window, beta from
// a small grid; returns the A of the best-SSE shape.
Real fit_tail_constant(const std::vector<Real>& g_norm, int lo, int hi) {
    static const std::array<double, 6> betas = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    const int count = hi - lo + 1;
    Real best_a(0);
    Real best_sse;
    bool have_best = false;
    for (double beta : betas) {
        Real s_w(0), s_ww(0), s_y(0), s_wy(0);
        for (int n = lo; n <= hi; ++n) {
            Real w = exp(-Real(beta) * log(Real(n)));
            const Real& y = g_norm[static_cast<std::size_t>(n)];
            s_w += w;
            s_ww += w * w;
            s_y += y;
            s_wy += w * y;
        }
        Real det = Real(count) * s_ww - s_w * s_w;
        if (abs(det) <= rounding_eps() * (1 + abs(s_ww) * count)) continue;
        Real a = (s_ww * s_y - s_w * s_wy) / det;
        Real c = (Real(count) * s_wy - s_w * s_y) / det;
        Real sse(0);
        for (int n = lo; n <= hi; ++n) {
            Real w = exp(-Real(beta) * log(Real(n)));
            Real e = g_norm[static_cast<std::size_t>(n)] - a - c * w;
            sse += e * e;
        }
        if (!have_best || sse < best_sse) {
            have_best = true;
            best_sse = sse;
            best_a = a;
        }
    }
    if (!have_best) fail(ErrorKind::NoConvergence, "tail fit is degenerate");
    return best_a;
}

AxiomAEstimate estimate_a_tail(const ElementCounts& g, const Real& q) {
    const int n_max = g.n_max;
    if (n_max < 8) fail(ErrorKind::DomainError, "tail_average requires n_max >= 8");
    const int lo = std::max(1, n_max - std::max(4, n_max / 4) + 1);

    std::vector<Real> g_norm;
    g_norm.reserve(static_cast<std::size_t>(n_max) + 1);
    for (int n = 0; n <= n_max; ++n)
        g_norm.push_back(Real(g.at(n)) / pow_int(q, static_cast<unsigned long>(n)));

    Real a = fit_tail_constant(g_norm, lo, n_max);
    if (!(a > 0)) fail(ErrorKind::NoConvergence, "estimated A is not positive");

    Real residual_norm(0);
    Real first_half_max(0), second_half_max(0);
    const int mid = lo + (n_max - lo) / 2;
    for (int n = lo; n <= n_max; ++n) {
        Real r = abs(g_norm[static_cast<std::size_t>(n)] - a);
        residual_norm = std::max(residual_norm, r);
        if (n <= mid)
            first_half_max = std::max(first_half_max, r);
        else
            second_half_max = std::max(second_half_max, r);
    }
    if (residual_norm > a / 2)
        fail(ErrorKind::NoConvergence, "residuals do not settle below the estimated A");
    if (second_half_max > 2 * first_half_max && second_half_max > a * Real("1e-9"))
        fail(ErrorKind::NoConvergence, "residuals grow across the calibration window");

    return {a, AMethod::tail_average, residual_norm, lo, n_max};
}

AxiomAEstimate estimate_a_h(const ElementCounts& g, const Real& q) {
    // Ladder y_i = (1 - 2^-i)/q; the h_eval truncation bound limits the
    // usable depth, Richardson extrapolation removes the leading epsilon
    // term between consecutive rungs.
    std::vector<Real> values;
    std::vector<Real> bounds;
    int first_rung = 2;
    for (int i = first_rung; i <= 24; ++i) {
        Real y = (1 - ldexp(Real(1), -i)) / q;
        BoundedReal h = h_eval(g, q, y, g.n_max);
        if (!(h.bound < Real("0.01"))) break;
        values.push_back(h.value);
        bounds.push_back(h.bound);
    }
    if (values.size() < 2)
        fail(ErrorKind::NoConvergence, "h ladder too short; increase n_max");
    std::vector<Real> extrapolated;
    for (std::size_t i = 0; i + 1 < values.size(); ++i)
        extrapolated.push_back(2 * values[i + 1] - values[i]);
    Real a = extrapolated.back();
    Real err = bounds.back() * 3 + rounding_eps();
    if (extrapolated.size() >= 2) err += abs(extrapolated.back() - extrapolated[extrapolated.size() - 2]);
    if (!(a > 0)) fail(ErrorKind::NoConvergence, "estimated A is not positive");
    return {a, AMethod::h_evaluation, err, first_rung,
            first_rung + static_cast<int>(values.size()) - 1};
}

}  // namespace

const char* to_string(AMethod method) {
    switch (method) {
        case AMethod::tail_average: return "tail_average";
        case AMethod::h_evaluation: return "h_evaluation";
        case AMethod::exact_known: return "exact_known";
    }
    return "unknown";
}

AxiomAEstimate estimate_a(const ElementCounts& g, const Real& q, AMethod method,
                          const SemigroupSpec* spec) {
    if (!(q > 1)) fail(ErrorKind::DomainError, "estimate_a requires q > 1");
    switch (method) {
        case AMethod::tail_average: return estimate_a_tail(g, q);
        case AMethod::h_evaluation: return estimate_a_h(g, q);
        case AMethod::exact_known:
            if (spec == nullptr || spec->kind != semigroup::SpecKind::poly_over_fq)
                fail(ErrorKind::DomainError, "exact A is only known for poly_over_fq instances");
            return {Real(1), AMethod::exact_known, Real(0), 0, g.n_max};
    }
    fail(ErrorKind::Internal, "unreachable A method");
}

NormalizedSemigroup normalize(const GeneratorCounts& p, const ElementCounts& g, const Real& q,
                              std::optional<int> integer_q, unsigned precision_bits,
                              const std::optional<Real>& a) {
    PrecisionScope scope(precision_bits);
    NormalizedSemigroup out;
    out.q = integer_q ? Real(*integer_q) : q;
    out.precision_bits = precision_bits;
    out.lambda = integer_q ? lambda_sequence(p, *integer_q) : lambda_sequence(p, q);
    out.g_norm = integer_q ? g_norm_sequence(g, *integer_q) : g_norm_sequence(g, q);
    if (a) {
        std::vector<Real> r;
        r.reserve(out.g_norm.size());
        for (const Real& v : out.g_norm) r.push_back(v - *a);
        out.r = std::move(r);
    }
    return out;
}

}  // namespace arisem::normalization
