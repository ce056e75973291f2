#include "arisem/meissel.hpp"

#include "arisem/errors.hpp"

#include <algorithm>

namespace arisem::meissel {

Real s_deviation(const std::vector<Real>& s_prefix, const Real& x, const Real& c1) {
    if (x < 1) fail(ErrorKind::DomainError, "s(x) is defined for x >= 1");
    Real fl = floor(x);
    const auto n = fl.convert_to<unsigned long>();
    if (n > s_prefix.size()) fail(ErrorKind::DomainError, "x beyond the available prefix sums");
    return s_prefix[n - 1] - log(x) - c1;
}

MeisselContext::MeisselContext(const GeneratorCounts& p, const Real& q, const BoundedReal& c1)
    : p_(p), q_(q), c1_(c1) {
    if (!(q > 1)) fail(ErrorKind::DomainError, "q must exceed 1");
    if (p_.n_max < 8) fail(ErrorKind::DomainError, "meissel analysis needs n_max >= 8");
    s_prefix_ = mertens::mertens_sum_prefix(p_, q_, p_.n_max);

    const int n_max = p_.n_max;
    const int top_lo = std::max(1, n_max - n_max / 10);
    const int prev_lo = std::max(1, top_lo - (n_max - top_lo + 1));
    Real sup_prev(0);
    sup_s_top_ = 0;
    c_over_x_ = 0;
    for (int n = prev_lo; n <= n_max; ++n) {
        Real s_n = abs(s_at(n));
        if (n >= top_lo) {
            sup_s_top_ = std::max(sup_s_top_, s_n);
            c_over_x_ = std::max(c_over_x_, s_n * n);
        } else {
            sup_prev = std::max(sup_prev, s_n);
        }
    }
    s_decays_ = sup_s_top_ <= sup_prev;
}

Real MeisselContext::s_at(int n) const {
    if (n < 1 || n > p_.n_max) fail(ErrorKind::DomainError, "s(n) outside the data range");
    return s_prefix_[static_cast<std::size_t>(n - 1)] - log(Real(n)) - c1_.value;
}

Real step_weighted_integral(const std::vector<Real>& step, const Real& alpha, int n) {
    if (alpha < 0) fail(ErrorKind::DomainError, "alpha must be >= 0");
    if (n < 2 || static_cast<std::size_t>(n - 1) > step.size())
        fail(ErrorKind::DomainError, "step table does not cover [1, N]");
    Real value(0);
    if (alpha > 0) {
        Real pow_cur(1);  // m^-alpha
        const Real inv_a = 1 / alpha;
        for (int m = 1; m < n; ++m) {
            Real pow_next = exp(-alpha * log(Real(m + 1)));
            value += step[static_cast<std::size_t>(m - 1)] * (pow_cur - pow_next) * inv_a;
            pow_cur = pow_next;
        }
        return value;
    }
    Real log_cur(0);
    for (int m = 1; m < n; ++m) {
        Real log_next = log(Real(m + 1));
        value += step[static_cast<std::size_t>(m - 1)] * (log_next - log_cur);
        log_cur = log_next;
    }
    return value;
}

Real log_weighted_integral(const Real& alpha, int n) {
    if (alpha < 0) fail(ErrorKind::DomainError, "alpha must be >= 0");
    if (n < 2) fail(ErrorKind::DomainError, "endpoint must be >= 2");
    const Real log_n = log(Real(n));
    if (alpha > 0) {
        // [-x^-a (ln(x)/a + 1/a^2)] from 1 to N
        const Real inv_a = 1 / alpha;
        return inv_a * inv_a - exp(-alpha * log_n) * (log_n * inv_a + inv_a * inv_a);
    }
    return log_n * log_n / 2;
}

BoundedReal MeisselContext::j_integral(const Real& alpha, int n) const {
    if (alpha < 0) fail(ErrorKind::DomainError, "j_integral requires alpha >= 0");
    if (n < 2 || n > p_.n_max) fail(ErrorKind::DomainError, "integral endpoint outside the data");

    std::vector<Real> shifted;
    shifted.reserve(static_cast<std::size_t>(n - 1));
    for (int m = 1; m < n; ++m)
        shifted.push_back(s_prefix_[static_cast<std::size_t>(m - 1)] - c1_.value);
    Real value = step_weighted_integral(shifted, alpha, n) - log_weighted_integral(alpha, n);

    if (alpha > 0) {
        Real n_pow = exp(-alpha * log(Real(n)));
        Real tail = sup_s_top_ * n_pow / alpha + c1_.bound / alpha +
                    rounding_eps() * (1 + abs(value)) * n;
        return {value, tail};
    }
    if (!s_decays_)
        fail(ErrorKind::TailUnbounded, "no decay evidence for s beyond the data; J(0) tail unbounded");
    Real tail = c_over_x_ / n + c1_.bound * log(Real(n)) + rounding_eps() * (1 + abs(value)) * n;
    return {value, tail};
}

SeriesValue MeisselContext::meissel_series(const Real& alpha, int k) const {
    if (!(alpha > 0)) fail(ErrorKind::DomainError, "meissel_series requires alpha > 0");
    if (k < 1 || k > p_.n_max)
        fail(ErrorKind::InsufficientData, "series truncation exceeds the available degrees");

    SeriesValue out;
    out.raw = 0;
    Real q_pow(1);
    for (int j = 1; j <= k; ++j) {
        q_pow *= q_;
        if (p_.at(j) == 0) continue;
        out.raw += Real(p_.at(j)) / (q_pow * exp(alpha * log(Real(j))));
    }

    bool degenerate = true;
    for (const Int& v : p_.values)
        if (v != 0) {
            degenerate = false;
            break;
        }
    if (degenerate) {
        // S has no ln(x) asymptotics, so the partial-summation correction
        // does not apply; report the raw sum alone.
        out.corrected = out.raw;
        out.tail_bound = 0;
        out.correction_applicable = false;
        return out;
    }

    const Real k_pow = exp(-alpha * log(Real(k)));
    out.corrected = out.raw + k_pow / alpha - s_at(k) * k_pow;
    out.tail_bound = (sup_s_top_ + c1_.bound) * k_pow + rounding_eps() * (1 + abs(out.corrected)) * k;
    out.correction_applicable = true;
    return out;
}

MeisselEvaluation MeisselContext::identity_residual(const Real& alpha, int k, int n) const {
    if (!(alpha > 0))
        fail(ErrorKind::DomainError, "identity_residual requires alpha > 0; use j_integral(0) directly");
    SeriesValue series = meissel_series(alpha, k);
    BoundedReal j = j_integral(alpha, n);
    MeisselEvaluation eval;
    eval.alpha = alpha;
    eval.series_value = series.corrected;
    eval.series_tail_bound = series.tail_bound;
    eval.j_value = j.value;
    eval.j_tail_bound = j.bound;
    eval.identity_residual = series.corrected - (1 / alpha + c1_.value + alpha * j.value);
    eval.k = k;
    eval.n = n;
    return eval;
}

Real MeisselContext::abel_identity_residual(const Real& alpha, int n) const {
    if (!(alpha > 0)) fail(ErrorKind::DomainError, "the Abel identity requires alpha > 0");
    if (n < 2 || n > p_.n_max) fail(ErrorKind::DomainError, "n outside the data range");

    Real lhs(0);
    Real q_pow(1);
    for (int j = 1; j <= n; ++j) {
        q_pow *= q_;
        if (p_.at(j) == 0) continue;
        lhs += Real(p_.at(j)) / (q_pow * exp(alpha * log(Real(j))));
    }

    Real rhs(0);
    Real pow_cur(1);  // m^-alpha
    for (int m = 1; m < n; ++m) {
        Real pow_next = exp(-alpha * log(Real(m + 1)));
        rhs += s_prefix_[static_cast<std::size_t>(m - 1)] * (pow_cur - pow_next);
        pow_cur = pow_next;
    }
    rhs += s_prefix_[static_cast<std::size_t>(n - 1)] * pow_cur;
    return lhs - rhs;
}

ScanTable MeisselContext::alpha_scan(const std::vector<Real>& alphas, int k, int n) const {
    if (alphas.empty()) fail(ErrorKind::DomainError, "empty alpha grid");
    for (std::size_t i = 0; i < alphas.size(); ++i) {
        if (!(alphas[i] > 0) || alphas[i] > 1)
            fail(ErrorKind::DomainError, "alpha grid values must lie in (0, 1]");
        if (i > 0 && !(alphas[i] < alphas[i - 1]))
            fail(ErrorKind::DomainError, "alpha grid must be strictly decreasing");
    }
    ScanTable table;
    table.j0 = j_integral(Real(0), n);
    table.max_deviation = 0;
    for (const Real& alpha : alphas) {
        MeisselEvaluation eval = identity_residual(alpha, k, n);
        ScanRow row;
        row.alpha = alpha;
        row.series = eval.series_value;
        row.tail_bound = eval.series_tail_bound;
        row.j = eval.j_value;
        row.identity_residual = eval.identity_residual;
        row.d_over_alpha = (eval.series_value - 1 / alpha - c1_.value) / alpha;
        table.max_deviation = std::max(table.max_deviation, abs(row.d_over_alpha - table.j0.value));
        table.rows.push_back(std::move(row));
        table.evaluations.push_back(std::move(eval));
    }
    return table;
}

}  // namespace arisem::meissel
