#pragma once

#include "arisem/numeric.hpp"

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace arisem::mertens {

enum class EnvelopeFamily {
    power,        // f(x) = c x^(-beta), beta > 0
    log_power,    // f(x) = c ln(x)^a / x, a >= 0
    inverse_log,  // f(x) = c / ln(x)^(2+eps), eps > 0, clamped below x = 2
};

const char* to_string(EnvelopeFamily family);

/// A nonincreasing error-model function f with vanishing limit, together
/// with F(x) = int_1^x f and the tail integral int_n^inf F(x)/x^2 dx. The
/// constructor validates the convergence hypothesis (the tail integral must
/// be finite) and raises DivergentEnvelope otherwise.
class ErrorEnvelope {
public:
    static ErrorEnvelope power(const Real& c, const Real& beta);
    static ErrorEnvelope log_power(const Real& c, const Real& a);
    static ErrorEnvelope inverse_log(const Real& c, const Real& eps);

    EnvelopeFamily family() const { return family_; }
    const Real& c() const { return c_; }
    const Real& shape() const { return shape_; }
    /// F(inf) < inf, i.e. the first Theorem-style error term is bounded.
    bool f_integrable() const;

    Real f(const Real& x) const;
    Real big_f(const Real& x) const;
    Real tail(const Real& n) const;

    std::string describe(unsigned digits = 6) const;

private:
    ErrorEnvelope(EnvelopeFamily family, Real c, Real shape);

    EnvelopeFamily family_;
    Real c_;
    Real shape_;  // beta, a, or eps
};

/// (F(n), tail(n)) per the envelope's closed forms (adaptive quadrature for
/// the shapes without one).
std::pair<Real, Real> error_envelope(const ErrorEnvelope& env, const Real& n);

struct FamilyFit {
    ErrorEnvelope envelope;  // with the fitted c folded in
    Real c;
    Real score;  // c * F(n_last); the cross-family selection key
};

struct ResidualFit {
    std::vector<FamilyFit> per_family;
    std::size_t best = 0;

    const FamilyFit& best_fit() const { return per_family.at(best); }
};

/// Fits the smallest c per family with |r(n)| <= c f(n) on the window
/// (shape parameters from small grids, chosen by minimal c * F(n_last)),
/// then selects the family with the smallest score. `first_n` is the
/// degree of r.front(). Raises NoDecay when |r| does not decay over the
/// window; an all-zero r yields c = 0 for every family.
ResidualFit fit_residual_model(const std::vector<Real>& r, int first_n);

}  // namespace arisem::mertens
