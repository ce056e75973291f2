#include "arisem/mertens.hpp"

#include "arisem/errors.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <mutex>
#include <set>

namespace arisem::mertens {

namespace {

// gamma = H_n - ln(n) - 1/(2n) + 1/(12n^2) - 1/(120n^4) + 1/(252n^6)
//         - 1/(240n^8) + 1/(132n^10) + O(n^-12), n = 2^14. The remainder
// is below 1e-50, far past the 30-digit validation target.
Real euler_maclaurin_gamma() {
    const long n = 16384;
    Real h(0);
    for (long k = 1; k <= n; ++k) h += Real(1) / k;
    const Real nn = Real(n);
    const Real n2 = nn * nn;
    const Real n4 = n2 * n2;
    Real g = h - log(nn) - 1 / (2 * nn);
    g += 1 / (12 * n2);
    g -= 1 / (120 * n4);
    g += 1 / (252 * n4 * n2);
    g -= 1 / (240 * n4 * n4);
    g += 1 / (132 * n4 * n4 * n2);
    return g;
}

Real max_lambda(const GeneratorCounts& p, const Real& q, int* argmax = nullptr) {
    Real best(0);
    int best_k = 0;
    Real q_pow(1);
    for (int k = 1; k <= p.n_max; ++k) {
        q_pow *= q;
        Real lam = Real(p.at(k)) * k / q_pow;
        if (lam > best) {
            best = lam;
            best_k = k;
        }
    }
    if (argmax) *argmax = best_k;
    return best;
}

Real median(std::vector<Real> v) {
    if (v.empty()) fail(ErrorKind::Internal, "median of empty range");
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    if (n % 2 == 1) return v[n / 2];
    return (v[n / 2 - 1] + v[n / 2]) / 2;
}

bool is_zero(const GeneratorCounts& p) {
    for (const Int& v : p.values)
        if (v != 0) return false;
    return true;
}

}  // namespace

Real euler_gamma(unsigned precision_bits) {
    if (precision_bits < 64) fail(ErrorKind::DomainError, "euler_gamma requires >= 64 bits");

    static std::mutex mutex;
    static std::set<unsigned> validated;
    bool needs_check = false;
    {
        std::lock_guard<std::mutex> lock(mutex);
        needs_check = validated.insert(precision_bits).second;
    }
    if (needs_check) {
        const unsigned check_bits = std::max(precision_bits, 192u);
        PrecisionScope scope(check_bits);
        Real reference = boost::math::constants::euler<Real>();
        Real oracle = euler_maclaurin_gamma();
        if (abs(reference - oracle) > Real("1e-30"))
            fail(ErrorKind::Internal, "euler_gamma disagrees with the H_n - ln(n) limit");
    }

    PrecisionScope scope(precision_bits);
    return boost::math::constants::euler<Real>();
}

PartialSum lambda_partial_sum(const std::vector<Real>& lambda, int n) {
    if (n < 0 || static_cast<std::size_t>(n) > lambda.size())
        fail(ErrorKind::DomainError, "prefix length outside the lambda range");
    Real sum(0);
    for (int k = 0; k < n; ++k) sum += lambda[static_cast<std::size_t>(k)];
    return {sum, sum - n};
}

Rat lambda_partial_sum_exact(const GeneratorCounts& p, int q, int n) {
    if (n < 0 || n > p.n_max) fail(ErrorKind::DomainError, "prefix length outside the sequence");
    Rat sum(0);
    Int q_pow(1);
    for (int k = 1; k <= n; ++k) {
        q_pow *= q;
        sum += Rat(Int(k) * p.at(k), q_pow);
    }
    return sum;
}

Real mertens_sum(const GeneratorCounts& p, const Real& q, int n) {
    if (n < 0 || n > p.n_max) fail(ErrorKind::DomainError, "n outside the sequence range");
    Real sum(0);
    Real q_pow(1);
    for (int k = 1; k <= n; ++k) {
        q_pow *= q;
        sum += Real(p.at(k)) / q_pow;
    }
    return sum;
}

Rat mertens_sum_exact(const GeneratorCounts& p, int q, int n) {
    if (n < 0 || n > p.n_max) fail(ErrorKind::DomainError, "n outside the sequence range");
    Rat sum(0);
    Int q_pow(1);
    for (int k = 1; k <= n; ++k) {
        q_pow *= q;
        sum += Rat(p.at(k), q_pow);
    }
    return sum;
}

std::vector<Real> mertens_sum_prefix(const GeneratorCounts& p, const Real& q, int n) {
    if (n < 1 || n > p.n_max) fail(ErrorKind::DomainError, "n outside the sequence range");
    std::vector<Real> s;
    s.reserve(static_cast<std::size_t>(n));
    Real sum(0);
    Real q_pow(1);
    for (int k = 1; k <= n; ++k) {
        q_pow *= q;
        sum += Real(p.at(k)) / q_pow;
        s.push_back(sum);
    }
    return s;
}

Real prime_power_sum(const GeneratorCounts& p, const Real& q, int n) {
    if (n < 0 || n > p.n_max) fail(ErrorKind::DomainError, "n outside the sequence range");
    Real sum(0);
    Real qd_pow(1);
    for (int d = 1; d <= n; ++d) {
        qd_pow *= q;
        if (p.at(d) == 0) continue;
        const Real base = Real(1) / qd_pow;  // q^-d
        Real power = 1;                      // q^-jd
        Real inner(0);
        for (int j = 1; j * d <= n; ++j) {
            power *= base;
            inner += power / j;
        }
        sum += Real(p.at(d)) * inner;
    }
    return sum;
}

Rat prime_power_sum_exact(const GeneratorCounts& p, int q, int n) {
    if (n < 0 || n > p.n_max) fail(ErrorKind::DomainError, "n outside the sequence range");
    Rat sum(0);
    Int qd_pow(1);
    for (int d = 1; d <= n; ++d) {
        qd_pow *= q;
        if (p.at(d) == 0) continue;
        Int power(1);
        Rat inner(0);
        for (int j = 1; j * d <= n; ++j) {
            power *= qd_pow;
            inner += Rat(Int(1), power * j);
        }
        sum += Rat(p.at(d)) * inner;
    }
    return sum;
}

MertensProduct mertens_product(const GeneratorCounts& p, const Real& q, int n) {
    if (n < 0 || n > p.n_max) fail(ErrorKind::DomainError, "n outside the sequence range");
    Real log_sum(0);
    Real q_pow(1);
    for (int k = 1; k <= n; ++k) {
        q_pow *= q;
        if (p.at(k) == 0) continue;
        log_sum += Real(p.at(k)) * log1p_real(-1 / q_pow);
    }
    MertensProduct out;
    out.log_sum = log_sum;
    out.product = exp(log_sum);
    out.n_product = out.product * n;
    out.inv_n_product = n > 0 ? 1 / out.n_product : Real(0);
    return out;
}

namespace {

// Empirical Chebyshev-style majorant: the smallest c with
// k P(k) <= c q^k on the available range, i.e. max lambda_k.
Real empirical_majorant(const GeneratorCounts& p, const Real& q) {
    return max_lambda(p, q);
}

}  // namespace

BoundedReal c_m(const GeneratorCounts& p, const Real& q, const Real& tol) {
    if (!(tol > 0)) fail(ErrorKind::DomainError, "tol must be positive");
    if (!(q > 1)) fail(ErrorKind::DomainError, "q must exceed 1");
    const int k_max = p.n_max;
    const Real c_emp = empirical_majorant(p, q);
    // term_k <= P(k) q^-2k / (2 (1 - 1/q)) <= c_emp q^-k / (2 k (1 - 1/q))
    const Real q_tail = exp(-Real(k_max) * log(q));
    Real tail = c_emp * q_tail / (2 * (k_max + 1) * (1 - 1 / q) * (q - 1));
    if (!(tail <= tol))
        fail(ErrorKind::InsufficientData,
             "n_max = " + std::to_string(k_max) + " leaves a tail bound above tol");

    Real sum(0);
    Real q_pow(1);
    for (int k = 1; k <= k_max; ++k) {
        q_pow *= q;
        if (p.at(k) == 0) continue;
        const Real x = 1 / q_pow;
        sum += Real(p.at(k)) * (-log1p_real(-x) - x);
    }
    return {sum, tail + rounding_eps() * (1 + abs(sum)) * k_max};
}

BoundedReal c_3(const GeneratorCounts& p, const Real& q, const Real& tol) {
    if (!(tol > 0)) fail(ErrorKind::DomainError, "tol must be positive");
    if (!(q > 1)) fail(ErrorKind::DomainError, "q must exceed 1");
    const int k_max = p.n_max;
    const Real c_emp = empirical_majorant(p, q);
    // k P(k) / (q^k (q^k - 1)) <= c_emp q^-k / (1 - 1/q)
    const Real q_tail = exp(-Real(k_max) * log(q));
    Real tail = c_emp * q_tail / ((1 - 1 / q) * (q - 1));
    if (!(tail <= tol))
        fail(ErrorKind::InsufficientData,
             "n_max = " + std::to_string(k_max) + " leaves a tail bound above tol");

    Real sum(0);
    Real q_pow(1);
    for (int k = 1; k <= k_max; ++k) {
        q_pow *= q;
        if (p.at(k) == 0) continue;
        sum += Real(p.at(k)) * k / (q_pow * (q_pow - 1));
    }
    return {sum, tail + rounding_eps() * (1 + abs(sum)) * k_max};
}

BoundedReal c_1(const BoundedReal& a, const BoundedReal& cm, const BoundedReal& gamma) {
    if (!(a.value > 0)) fail(ErrorKind::DomainError, "C_1 requires A > 0");
    return bounded_sub(bounded_add(gamma, bounded_log(a)), cm);
}

BoundedReal c_2(const BoundedReal& a, const BoundedReal& gamma) {
    if (!(a.value > 0)) fail(ErrorKind::DomainError, "C_2 requires A > 0");
    BoundedReal denom = bounded_exp(gamma);
    denom.value *= a.value;
    denom.bound = denom.bound * a.value + a.bound * exp(gamma.value + gamma.bound);
    return bounded_inv(denom);
}

Real lemma3_lhs(const GeneratorCounts& p, const ElementCounts& g, int n) {
    if (n < 1 || n > g.n_max) fail(ErrorKind::DomainError, "n outside the sequence range");
    if (g.at(n) == 0) fail(ErrorKind::ZeroDenominator, "G(" + std::to_string(n) + ") = 0");
    Int numerator(0);
    const int k_hi = std::min(n, p.n_max);
    for (int k = 1; k <= k_hi; ++k) numerator += Int(k) * p.at(k) * g.at(n - k);
    return Real(Rat(numerator, g.at(n)));
}

bool exact_degree_identity_check(const GeneratorCounts& p, const ElementCounts& g, int n) {
    if (n < 1 || n > g.n_max) fail(ErrorKind::DomainError, "n outside the sequence range");
    Int rhs(0);
    const int k_hi = std::min(n, p.n_max);
    for (int k = 1; k <= k_hi; ++k) {
        if (p.at(k) == 0) continue;
        Int inner(0);
        for (int j = 1; j * k <= n; ++j) inner += g.at(n - j * k);
        rhs += p.at(k) * k * inner;
    }
    return Int(n) * g.at(n) == rhs;
}

BoundedReal lambda_deviation_integral(const std::vector<Real>& lambda, int n) {
    if (n < 2 || static_cast<std::size_t>(n) > lambda.size() + 1)
        fail(ErrorKind::DomainError, "integration endpoint outside the lambda range");
    // On [m, m+1): Lambda(t) = Lambda(m), so each piece is
    // Lambda(m) (1/m - 1/(m+1)) - (ln(m+1) - ln(m)).
    Real value(0);
    Real big_lambda(0);
    Real log_cur(0);
    Real dev_sup(0);
    const int decile_lo = std::max(1, n - n / 10);
    for (int m = 1; m < n; ++m) {
        big_lambda += lambda[static_cast<std::size_t>(m - 1)];
        Real log_next = log(Real(m + 1));
        value += big_lambda * (Real(1) / m - Real(1) / (m + 1)) - (log_next - log_cur);
        log_cur = log_next;
        if (m >= decile_lo) dev_sup = std::max(dev_sup, abs(big_lambda - m));
    }
    Real bound = dev_sup / n + rounding_eps() * (1 + abs(value)) * n;
    return {value, bound};
}

ConstantsReport constants_report(const ResolvedSemigroup& instance, unsigned precision_bits,
                                 const Real& tail_tol) {
    PrecisionScope scope(precision_bits);
    ConstantsReport rep;
    rep.gamma = {euler_gamma(precision_bits), rounding_eps() * 2};

    if (is_zero(instance.p)) {
        rep.degenerate = true;
        rep.a = {Real(0), Real(0)};
        rep.cm = {Real(0), Real(0)};
        rep.c3 = {Real(0), Real(0)};
        rep.c1 = {Real(0), Real(0)};
        rep.c2 = {Real(0), Real(0)};
        rep.i_integral = {Real(0), Real(0)};
        return rep;
    }

    const Real q = instance.integer_q ? Real(*instance.integer_q)
                                      : normalization::estimate_q(instance.g).value;
    if (instance.exact_a_known) {
        rep.a = {Real(1), Real(0)};
    } else {
        auto est = normalization::estimate_a(instance.g, q, normalization::AMethod::tail_average);
        rep.a = {est.a, est.residual_norm + rounding_eps()};
    }
    rep.cm = c_m(instance.p, q, tail_tol);
    rep.c3 = c_3(instance.p, q, tail_tol);
    rep.c1 = c_1(rep.a, rep.cm, rep.gamma);
    rep.c2 = c_2(rep.a, rep.gamma);

    const std::vector<Real> lambda =
        instance.integer_q ? normalization::lambda_sequence(instance.p, *instance.integer_q)
                           : normalization::lambda_sequence(instance.p, q);
    rep.i_integral = lambda_deviation_integral(lambda, instance.p.n_max);
    return rep;
}

EnvelopeDiagnostic envelope_diagnostic(const std::vector<Real>& r_abs,
                                       const std::vector<Real>& deviation, int window_lo) {
    if (r_abs.size() != deviation.size() || r_abs.empty())
        fail(ErrorKind::DomainError, "residual and deviation windows must align");

    std::vector<Real> top(deviation.begin() + static_cast<long>(deviation.size() / 2),
                          deviation.end());
    EnvelopeDiagnostic diag;
    diag.fitted_constant = median(std::move(top));

    Real r_max(0);
    for (const Real& v : r_abs) r_max = std::max(r_max, abs(v));
    if (r_max <= Real("1e-28")) {
        diag.zero_residuals = true;
        diag.family = "power(c=0, beta=1)";
        diag.residual_c = 0;
        Real worst(0);
        for (const Real& d : deviation) worst = std::max(worst, abs(d - diag.fitted_constant));
        diag.containment_c = worst;
        return diag;
    }

    ResidualFit fit = fit_residual_model(r_abs, window_lo);
    const FamilyFit& best = fit.best_fit();
    diag.family = best.envelope.describe();
    diag.residual_c = best.c;
    Real worst(0);
    for (std::size_t i = 0; i < deviation.size(); ++i) {
        Real f_n = best.envelope.big_f(Real(window_lo + static_cast<int>(i)));
        if (f_n <= Real("1e-28")) continue;  // F(1) = 0
        worst = std::max(worst, abs(deviation[i] - diag.fitted_constant) / f_n);
    }
    diag.containment_c = worst;
    return diag;
}

std::map<std::string, Real> default_verify_tolerances() {
    return {
        {"lambda_max", Real(2)},
        {"lemma3_c3", Real("1e-6")},
        {"mertens_sum_c1", Real("2e-3")},
        {"mertens_product_c2", Real("5e-3")},
        {"prime_power_gamma", Real("2e-3")},
        {"i_integral_c1", Real("5e-3")},
        {"deviation_envelope", Real(100)},
    };
}

bool ZhangReport::all_pass() const {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

ZhangReport zhang_report(const ResolvedSemigroup& instance, unsigned precision_bits,
                         const std::map<std::string, Real>& tolerance_overrides) {
    const int n_max = instance.p.n_max;
    if (n_max < 64) fail(ErrorKind::DomainError, "verify requires n_max >= 64");
    PrecisionScope scope(precision_bits);

    std::map<std::string, Real> tol = default_verify_tolerances();
    for (const auto& [name, value] : tolerance_overrides) {
        if (tol.find(name) == tol.end())
            fail(ErrorKind::DomainError, "unknown check name '" + name + "'");
        if (!(value > 0)) fail(ErrorKind::DomainError, "tolerances must be positive");
        tol[name] = value;
    }

    ZhangReport report;
    report.spec = instance.spec;
    report.precision_bits = precision_bits;
    report.lambda_max = Real(0);
    report.lambda_tail_max = Real(0);

    if (is_zero(instance.p)) {
        report.degenerate = true;
        report.constants = constants_report(instance, precision_bits, Real("1e-8"));
        Real s_top = mertens_sum(instance.p, Real(2), n_max);  // identically zero
        report.checks.push_back({"degenerate_semigroup", s_top, Real(0), false});
        return report;
    }

    report.constants = constants_report(instance, precision_bits, Real("1e-8"));
    const Real q = instance.integer_q ? Real(*instance.integer_q)
                                      : normalization::estimate_q(instance.g).value;
    const std::vector<Real> lambda =
        instance.integer_q ? normalization::lambda_sequence(instance.p, *instance.integer_q)
                           : normalization::lambda_sequence(instance.p, q);

    // lambda boundedness diagnostics
    const int decile_lo = std::max(1, n_max - n_max / 10);
    for (int k = 1; k <= n_max; ++k) {
        const Real& lam = lambda[static_cast<std::size_t>(k - 1)];
        if (lam > report.lambda_max) {
            report.lambda_max = lam;
            report.lambda_argmax = k;
        }
        if (k >= decile_lo) report.lambda_tail_max = std::max(report.lambda_tail_max, lam);
    }

    std::vector<Real> deviation;  // sum_{k<=n} lambda_k - n, n = 1..n_max
    deviation.reserve(static_cast<std::size_t>(n_max));
    {
        Real sum(0);
        for (int k = 1; k <= n_max; ++k) {
            sum += lambda[static_cast<std::size_t>(k - 1)];
            deviation.push_back(sum - k);
        }
    }

    const auto push_check = [&](const std::string& name, const Real& statistic) {
        report.checks.push_back({name, statistic, tol.at(name), statistic <= tol.at(name)});
    };

    push_check("lambda_max", report.lambda_max);
    push_check("lemma3_c3", abs(lemma3_lhs(instance.p, instance.g, n_max) -
                                (n_max - report.constants.c3.value)));
    const Real s_top = mertens_sum(instance.p, q, n_max);
    push_check("mertens_sum_c1", abs(s_top - log(Real(n_max)) - report.constants.c1.value));
    push_check("mertens_product_c2", abs(mertens_product(instance.p, q, n_max).n_product -
                                         report.constants.c2.value));
    push_check("prime_power_gamma",
               abs(prime_power_sum(instance.p, q, n_max) - log(Real(n_max)) -
                   report.constants.gamma.value - log(report.constants.a.value)));
    push_check("i_integral_c1",
               abs(report.constants.i_integral.value + 1 - report.constants.c1.value));

    // Deviation envelope: residual family fitted to |g_norm - A|, deviation
    // contained in that family's F (minus a fitted additive constant).
    {
        const int win_lo = std::max(16, n_max / 4);
        const std::vector<Real> g_norm =
            instance.integer_q ? normalization::g_norm_sequence(instance.g, *instance.integer_q)
                               : normalization::g_norm_sequence(instance.g, q);
        std::vector<Real> r_abs;
        std::vector<Real> dev_window;
        for (int m = win_lo; m <= n_max; ++m) {
            r_abs.push_back(abs(g_norm[static_cast<std::size_t>(m)] - report.constants.a.value));
            dev_window.push_back(deviation[static_cast<std::size_t>(m - 1)]);
        }
        try {
            EnvelopeDiagnostic diag = envelope_diagnostic(r_abs, dev_window, win_lo);
            report.envelope_family = diag.family;
            push_check("deviation_envelope", diag.containment_c);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoDecay) throw;
            report.envelope_family = "none (no residual decay)";
            report.checks.push_back(
                {"deviation_envelope", Real(0), tol.at("deviation_envelope"), false});
        }
    }

    // Inline series for external tooling, downsampled to ~64 points.
    const int stride = std::max(1, (n_max + 63) / 64);
    SeriesBlock dev_block{"deviation", {}};
    SeriesBlock s_block{"s", {}};
    const std::vector<Real> s_prefix = mertens_sum_prefix(instance.p, q, n_max);
    for (int m = 1; m <= n_max; m += stride) {
        dev_block.points.emplace_back(m, deviation[static_cast<std::size_t>(m - 1)]);
        s_block.points.emplace_back(m, s_prefix[static_cast<std::size_t>(m - 1)] - log(Real(m)) -
                                           report.constants.c1.value);
    }
    report.series.push_back(std::move(dev_block));
    report.series.push_back(std::move(s_block));
    return report;
}

}  // namespace arisem::mertens
