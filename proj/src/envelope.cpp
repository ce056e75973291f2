#include "arisem/envelope.hpp"

#include "arisem/errors.hpp"
#include "arisem/quadrature.hpp"

#include <array>
#include <limits>

namespace arisem::mertens {

namespace {

const Real& quad_tol() {
    static const Real tol("1e-10");
    return tol;
}

Real factorial_real(int n) {
    Real acc(1);
    for (int i = 2; i <= n; ++i) acc *= i;
    return acc;
}

bool is_small_integer(const Real& x, int& out) {
    Real r = floor(x + Real("0.5"));
    if (abs(x - r) > Real("1e-20") || r < 0 || r > 64) return false;
    out = r.convert_to<int>();
    return true;
}

}  // namespace

const char* to_string(EnvelopeFamily family) {
    switch (family) {
        case EnvelopeFamily::power: return "power";
        case EnvelopeFamily::log_power: return "log_power";
        case EnvelopeFamily::inverse_log: return "inverse_log";
    }
    return "unknown";
}

ErrorEnvelope::ErrorEnvelope(EnvelopeFamily family, Real c, Real shape)
    : family_(family), c_(std::move(c)), shape_(std::move(shape)) {
    if (c_ < 0) fail(ErrorKind::DivergentEnvelope, "envelope constant must be >= 0");
    switch (family_) {
        case EnvelopeFamily::power:
            if (!(shape_ > 0))
                fail(ErrorKind::DivergentEnvelope,
                     "power family needs beta > 0: int F(x)/x^2 dx diverges otherwise");
            break;
        case EnvelopeFamily::log_power:
            if (shape_ < 0) fail(ErrorKind::DivergentEnvelope, "log_power family needs a >= 0");
            break;
        case EnvelopeFamily::inverse_log:
            if (!(shape_ > 0))
                fail(ErrorKind::DivergentEnvelope,
                     "inverse_log family needs eps > 0 (exponent must exceed 2)");
            break;
    }
}

ErrorEnvelope ErrorEnvelope::power(const Real& c, const Real& beta) {
    return ErrorEnvelope(EnvelopeFamily::power, c, beta);
}

ErrorEnvelope ErrorEnvelope::log_power(const Real& c, const Real& a) {
    return ErrorEnvelope(EnvelopeFamily::log_power, c, a);
}

ErrorEnvelope ErrorEnvelope::inverse_log(const Real& c, const Real& eps) {
    return ErrorEnvelope(EnvelopeFamily::inverse_log, c, eps);
}

bool ErrorEnvelope::f_integrable() const {
    return family_ == EnvelopeFamily::power && shape_ > 1;
}

Real ErrorEnvelope::f(const Real& x) const {
    if (x < 1) fail(ErrorKind::DomainError, "envelope domain starts at x = 1");
    switch (family_) {
        case EnvelopeFamily::power: return c_ * exp(-shape_ * log(x));
        case EnvelopeFamily::log_power: {
            if (shape_ == 0) return c_ / x;
            return c_ * exp(shape_ * log(log(x))) / x;  // x = 1 gives 0 for a > 0
        }
        case EnvelopeFamily::inverse_log: {
            Real t = x < 2 ? Real(2) : x;  // clamp keeps f finite and nonincreasing
            return c_ * exp(-(2 + shape_) * log(log(t)));
        }
    }
    fail(ErrorKind::Internal, "unreachable envelope family");
}

Real ErrorEnvelope::big_f(const Real& x) const {
    if (x < 1) fail(ErrorKind::DomainError, "envelope domain starts at x = 1");
    switch (family_) {
        case EnvelopeFamily::power: {
            if (shape_ == 1) return c_ * log(x);
            return c_ * (exp((1 - shape_) * log(x)) - 1) / (1 - shape_);
        }
        case EnvelopeFamily::log_power:
            return c_ * exp((shape_ + 1) * log(log(x < 1 ? Real(1) : x))) / (shape_ + 1);
        case EnvelopeFamily::inverse_log: {
            const Real f2 = f(Real(2));
            if (x <= 2) return (x - 1) * f2;
            Real smooth = adaptive_simpson([this](const Real& t) { return f(t); }, Real(2), x,
                                           quad_tol());
            return f2 + smooth;
        }
    }
    fail(ErrorKind::Internal, "unreachable envelope family");
}

Real ErrorEnvelope::tail(const Real& n) const {
    if (n < 1) fail(ErrorKind::DomainError, "tail domain starts at n = 1");
    // Integration by parts: int_n^inf F(x)/x^2 dx = F(n)/n + int_n^inf f(x)/x dx.
    const Real head = big_f(n) / n;
    switch (family_) {
        case EnvelopeFamily::power:
            return head + c_ * exp(-shape_ * log(n)) / shape_;
        case EnvelopeFamily::log_power: {
            int a = 0;
            if (is_small_integer(shape_, a)) {
                // int_n^inf ln^a x / x^2 dx = (a!/n) sum_{k<=a} ln^k(n)/k!
                Real sum(0);
                Real ln_n = log(n);
                Real term(1);  // ln^k n / k!
                for (int k = 0; k <= a; ++k) {
                    sum += term;
                    term = term * ln_n / (k + 1);
                }
                return head + c_ * factorial_real(a) * sum / n;
            }
            // substitute u = ln x: int_{ln n}^inf u^a e^-u du, truncated far
            // past the point where the integrand is negligible
            Real lo = log(n);
            Real hi = lo + 200;
            Real val = adaptive_simpson(
                [this](const Real& u) { return exp(shape_ * log(u < Real("1e-30") ? Real("1e-30") : u) - u); },
                lo < Real("1e-30") ? Real("1e-30") : lo, hi, quad_tol());
            return head + c_ * val;
        }
        case EnvelopeFamily::inverse_log: {
            if (n >= 2) {
                // int_n^inf f/x dx = c / ((1+eps) ln(n)^(1+eps))
                return head + c_ / ((1 + shape_) * exp((1 + shape_) * log(log(n))));
            }
            const Real f2 = f(Real(2));
            Real below = f2 * (log(Real(2)) - log(n));
            Real above = c_ / ((1 + shape_) * exp((1 + shape_) * log(log(Real(2)))));
            return head + below + above;
        }
    }
    fail(ErrorKind::Internal, "unreachable envelope family");
}

std::string ErrorEnvelope::describe(unsigned digits) const {
    std::string out = to_string(family_);
    out += "(c=" + format_real(c_, digits);
    switch (family_) {
        case EnvelopeFamily::power: out += ", beta="; break;
        case EnvelopeFamily::log_power: out += ", a="; break;
        case EnvelopeFamily::inverse_log: out += ", eps="; break;
    }
    out += format_real(shape_, digits) + ")";
    return out;
}

std::pair<Real, Real> error_envelope(const ErrorEnvelope& env, const Real& n) {
    return {env.big_f(n), env.tail(n)};
}

ResidualFit fit_residual_model(const std::vector<Real>& r, int first_n) {
    if (r.size() < 16) fail(ErrorKind::DomainError, "fit needs at least 16 usable entries");
    if (first_n < 1) fail(ErrorKind::DomainError, "window must start at degree >= 1");

    std::vector<Real> mag;
    mag.reserve(r.size());
    Real overall(0);
    for (const Real& v : r) {
        if (!isfinite(v)) fail(ErrorKind::DomainError, "residual entries must be finite");
        mag.push_back(abs(v));
        overall = std::max(overall, abs(v));
    }
    const int n_last = first_n + static_cast<int>(r.size()) - 1;
    const Real zero_floor("1e-28");

    if (overall > zero_floor) {
        Real first_half(0), second_half(0);
        const std::size_t mid = mag.size() / 2;
        for (std::size_t i = 0; i < mag.size(); ++i)
            (i < mid ? first_half : second_half) = std::max(i < mid ? first_half : second_half, mag[i]);
        if (second_half >= first_half * Real("0.9"))
            fail(ErrorKind::NoDecay, "|r| does not decay over the window");
    }

    const auto fit_shape = [&](EnvelopeFamily family, const Real& shape) -> FamilyFit {
        ErrorEnvelope unit = family == EnvelopeFamily::power ? ErrorEnvelope::power(Real(1), shape)
                             : family == EnvelopeFamily::log_power
                                 ? ErrorEnvelope::log_power(Real(1), shape)
                                 : ErrorEnvelope::inverse_log(Real(1), shape);
        Real c(0);
        for (std::size_t i = 0; i < mag.size(); ++i) {
            Real fx = unit.f(Real(first_n + static_cast<int>(i)));
            if (fx <= zero_floor) {
                if (mag[i] <= zero_floor) continue;
                c = std::numeric_limits<Real>::infinity();
                break;
            }
            c = std::max(c, mag[i] / fx);
        }
        Real score = isfinite(c) ? c * unit.big_f(Real(n_last)) : c;
        ErrorEnvelope fitted = family == EnvelopeFamily::power
                                   ? ErrorEnvelope::power(isfinite(c) ? c : Real(0), shape)
                               : family == EnvelopeFamily::log_power
                                   ? ErrorEnvelope::log_power(isfinite(c) ? c : Real(0), shape)
                                   : ErrorEnvelope::inverse_log(isfinite(c) ? c : Real(0), shape);
        return {fitted, c, score};
    };

    static const std::array<double, 6> power_grid = {0.5, 1.0, 1.5, 2.0, 2.5, 3.0};
    static const std::array<double, 3> log_power_grid = {0.0, 1.0, 2.0};
    static const std::array<double, 3> inverse_log_grid = {0.25, 0.5, 1.0};

    ResidualFit out;
    const auto best_of = [&](EnvelopeFamily family, const auto& grid) {
        bool have = false;
        FamilyFit best = fit_shape(family, Real(grid[0]));
        have = true;
        for (std::size_t i = 1; i < grid.size(); ++i) {
            FamilyFit cand = fit_shape(family, Real(grid[i]));
            if (!have || cand.score < best.score) best = cand;
        }
        return best;
    };
    out.per_family.push_back(best_of(EnvelopeFamily::power, power_grid));
    out.per_family.push_back(best_of(EnvelopeFamily::log_power, log_power_grid));
    out.per_family.push_back(best_of(EnvelopeFamily::inverse_log, inverse_log_grid));

    out.best = 0;
    for (std::size_t i = 1; i < out.per_family.size(); ++i)
        if (out.per_family[i].score < out.per_family[out.best].score) out.best = i;
    return out;
}

}  // namespace arisem::mertens
