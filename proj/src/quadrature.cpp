#include "arisem/quadrature.hpp"

namespace arisem {

namespace {

Real simpson(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
             const Real& fa, const Real& fm, const Real& fb) {
    return (b - a) / 6 * (fa + 4 * fm + fb);
}

Real simpson_rec(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                 const Real& fa, const Real& fm, const Real& fb, const Real& whole,
                 const Real& abs_tol, int depth) {
    const Real m = (a + b) / 2;
    const Real lm = (a + m) / 2;
    const Real rm = (m + b) / 2;
    const Real flm = f(lm);
    const Real frm = f(rm);
    const Real left = simpson(f, a, m, fa, flm, fm);
    const Real right = simpson(f, m, b, fm, frm, fb);
    const Real delta = left + right - whole;
    if (depth <= 0 || abs(delta) <= 15 * abs_tol) return left + right + delta / 15;
    return simpson_rec(f, a, m, fa, flm, fm, left, abs_tol / 2, depth - 1) +
           simpson_rec(f, m, b, fm, frm, fb, right, abs_tol / 2, depth - 1);
}

}  // namespace

Real adaptive_simpson(const std::function<Real(const Real&)>& f, const Real& a, const Real& b,
                      const Real& rel_tol, int max_depth) {
    if (a == b) return Real(0);
    const Real fa = f(a);
    const Real fb = f(b);
    const Real fm = f((a + b) / 2);
    const Real whole = simpson(f, a, b, fa, fm, fb);
    Real abs_tol = rel_tol * abs(whole);
    const Real floor = rel_tol * rel_tol;  // absolute floor for tiny integrals
    if (abs_tol < floor) abs_tol = floor;
    return simpson_rec(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

}  // namespace arisem
