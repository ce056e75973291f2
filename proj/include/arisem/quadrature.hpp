#pragma once

#include "arisem/numeric.hpp"

#include <functional>

namespace arisem {

/// Adaptive Simpson integration of a smooth integrand on [a, b] to the
/// requested relative accuracy (with an absolute floor for near-zero
/// integrals). Deterministic: the subdivision depends only on the inputs.
Real adaptive_simpson(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                      const Real& rel_tol, int max_depth = 48);

}  // namespace arisem
