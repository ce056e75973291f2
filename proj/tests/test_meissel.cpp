#include "arisem/meissel.hpp"

#include "arisem/errors.hpp"
#include "arisem/quadrature.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace arisem;
using namespace arisem::meissel;
using semigroup::GeneratorCounts;

namespace {

MeisselContext poly_context(int q, int n_max, BoundedReal* c1_out = nullptr) {
    GeneratorCounts p = semigroup::poly_generator_counts(q, n_max);
    BoundedReal gamma{mertens::euler_gamma(128), Real("1e-36")};
    BoundedReal a{Real(1), Real(0)};
    BoundedReal cm = mertens::c_m(p, Real(q), Real("1e-9"));
    BoundedReal c1 = mertens::c_1(a, cm, gamma);
    if (c1_out) *c1_out = c1;
    return MeisselContext(p, Real(q), c1);
}

}  // namespace

TEST_CASE("s_deviation piecewise values on the binary catalog") {
    PrecisionScope scope(128);
    BoundedReal c1;
    MeisselContext ctx = poly_context(2, 1024, &c1);
    GeneratorCounts p = semigroup::poly_generator_counts(2, 1024);
    std::vector<Real> prefix = mertens::mertens_sum_prefix(p, Real(2), 1024);

    // on [1, 2): s(x) = 1 - ln(x) - C_1
    CHECK(abs(s_deviation(prefix, Real(1), c1.value) - (1 - c1.value)) < Real("1e-30"));
    CHECK(abs((1 - c1.value) - Real("0.875018")) < Real("1e-5"));
    CHECK(abs(s_deviation(prefix, Real("1.5"), c1.value) -
              (1 - log(Real("1.5")) - c1.value)) < Real("1e-30"));

    CHECK(abs(s_deviation(prefix, Real(10), c1.value) - Real("0.051925")) < Real("1e-5"));
    for (int n : {200, 400, 700, 1000})
        CHECK(abs(ctx.s_at(n)) <= Real("0.01"));

    CHECK_THROWS_AS(s_deviation(prefix, Real("0.5"), c1.value), Error);
}

TEST_CASE("step integrals: zero step, single box, quadrature agreement") {
    PrecisionScope scope(128);
    std::vector<Real> zero(63, Real(0));
    for (const char* a : {"0", "0.3", "1"})
        CHECK(step_weighted_integral(zero, Real(a), 64) == 0);

    // step 1 on [1,2): int_1^2 x^(-a-1) dx = (1 - 2^-a)/a, ln(2) at a = 0
    std::vector<Real> box(63, Real(0));
    box[0] = 1;
    Real a("0.7");
    CHECK(abs(step_weighted_integral(box, a, 64) - (1 - exp(-a * log(Real(2)))) / a) <
          Real("1e-35"));
    CHECK(abs(step_weighted_integral(box, Real(0), 64) - log(Real(2))) < Real("1e-35"));

    // irregular step vector against blind per-piece quadrature
    std::vector<Real> step;
    for (int m = 1; m <= 40; ++m) step.push_back(Real(((m * 7919) % 11)) / (m + 3));
    for (const char* alpha_text : {"0", "0.25", "1"}) {
        Real alpha(alpha_text);
        Real by_quad(0);
        for (int m = 1; m < 40; ++m) {
            const Real h = step[static_cast<std::size_t>(m - 1)];
            by_quad += adaptive_simpson(
                [&](const Real& x) { return h * exp(-(alpha + 1) * log(x)); }, Real(m),
                Real(m + 1), Real("1e-12"));
        }
        CHECK(abs(step_weighted_integral(step, alpha, 40) - by_quad) < Real("1e-10"));
    }
}

TEST_CASE("log_weighted_integral closed form matches quadrature") {
    PrecisionScope scope(128);
    for (const char* alpha_text : {"0", "0.5", "1"}) {
        Real alpha(alpha_text);
        Real by_quad = adaptive_simpson(
            [&](const Real& x) { return log(x) * exp(-(alpha + 1) * log(x)); }, Real(1),
            Real(200), Real("1e-12"));
        CHECK(abs(log_weighted_integral(alpha, 200) - by_quad) < Real("1e-10"));
    }
}

TEST_CASE("piecewise-exact J agrees with blind per-piece quadrature") {
    PrecisionScope scope(128);
    BoundedReal c1;
    MeisselContext ctx = poly_context(2, 256, &c1);
    GeneratorCounts p = semigroup::poly_generator_counts(2, 256);
    std::vector<Real> prefix = mertens::mertens_sum_prefix(p, Real(2), 256);

    for (const char* alpha_text : {"0.5", "0.2"}) {
        Real alpha(alpha_text);
        BoundedReal j = ctx.j_integral(alpha, 200);
        Real by_quad(0);
        for (int m = 1; m < 200; ++m) {
            const Real s_m = prefix[static_cast<std::size_t>(m - 1)] - c1.value;
            by_quad += adaptive_simpson(
                [&](const Real& x) { return (s_m - log(x)) * exp(-(alpha + 1) * log(x)); },
                Real(m), Real(m + 1), Real("1e-13"));
        }
        CHECK(abs(j.value - by_quad) <= abs(by_quad) * Real("1e-9") + Real("1e-12"));
    }
}

TEST_CASE("meissel series values, corrections and stability") {
    PrecisionScope scope(128);
    MeisselContext ctx = poly_context(2, 2000);

    GeneratorCounts zero(16);
    BoundedReal flat_c1{Real(0), Real(0)};
    MeisselContext degenerate(zero, Real(2), flat_c1);
    SeriesValue none = degenerate.meissel_series(Real("0.5"), 16);
    CHECK(none.raw == 0);
    CHECK(!none.correction_applicable);
    CHECK(none.corrected == 0);

    // doubling K moves the corrected value by less than the prior bound
    SeriesValue k1000 = ctx.meissel_series(Real(1), 1000);
    SeriesValue k2000 = ctx.meissel_series(Real(1), 2000);
    CHECK(abs(k2000.corrected - k1000.corrected) <= k1000.tail_bound + Real("1e-20"));
    CHECK(k1000.correction_applicable);

    SeriesValue half = ctx.meissel_series(Real("0.5"), 1000);
    SeriesValue half_hi = ctx.meissel_series(Real("0.5"), 2000);
    CHECK(abs(half_hi.corrected - half.corrected) <= half.tail_bound + Real("1e-20"));

    CHECK_THROWS_AS(ctx.meissel_series(Real(0), 1000), Error);
    CHECK_THROWS_AS(ctx.meissel_series(Real("0.5"), 4000), Error);  // beyond the data
}

TEST_CASE("identity residual vanishes at matched truncations") {
    PrecisionScope scope(128);
    MeisselContext ctx = poly_context(2, 1000);
    for (const char* alpha_text : {"0.5", "0.2"}) {
        MeisselEvaluation eval = ctx.identity_residual(Real(alpha_text), 500, 500);
        CHECK(abs(eval.identity_residual) < Real("1e-12"));
    }
    // mismatched truncations leave only integral mass between N and K
    MeisselEvaluation skew = ctx.identity_residual(Real("0.5"), 1000, 500);
    CHECK(abs(skew.identity_residual) <=
          skew.series_tail_bound + Real("0.5") * skew.j_tail_bound + Real("1e-12"));
    CHECK_THROWS_AS(ctx.identity_residual(Real(0), 500, 500), Error);
}

TEST_CASE("exact finite-n Abel identity holds to rounding noise") {
    PrecisionScope scope(128);
    MeisselContext f2 = poly_context(2, 600);
    MeisselContext f3 = poly_context(3, 600);
    for (const char* alpha_text : {"1", "0.5", "0.2", "0.1"}) {
        CHECK(abs(f2.abel_identity_residual(Real(alpha_text), 500)) < Real("1e-12"));
        CHECK(abs(f3.abel_identity_residual(Real(alpha_text), 500)) < Real("1e-12"));
    }
}

TEST_CASE("alpha scan: D/alpha tracks J and stays near J(0)") {
    PrecisionScope scope(128);
    MeisselContext ctx = poly_context(2, 1000);
    std::vector<Real> grid{Real("0.4"), Real("0.2"), Real("0.1"), Real("0.05")};
    ScanTable table = ctx.alpha_scan(grid, 1000, 1000);
    REQUIRE(table.rows.size() == 4);
    REQUIRE(table.evaluations.size() == 4);
    for (const ScanRow& row : table.rows)
        CHECK(abs(row.d_over_alpha - row.j) < Real("1e-10"));  // D = alpha J_N exactly
    CHECK(table.max_deviation <= Real("0.5"));
    CHECK(table.j0.value > 0);

    ScanTable single = ctx.alpha_scan({Real(1)}, 800, 800);
    REQUIRE(single.rows.size() == 1);
    CHECK(abs(single.rows[0].d_over_alpha - single.rows[0].j) < Real("1e-10"));

    CHECK_THROWS_AS(ctx.alpha_scan({Real("0.2"), Real("0.4")}, 500, 500), Error);
    CHECK_THROWS_AS(ctx.alpha_scan({Real(2)}, 500, 500), Error);
    CHECK_THROWS_AS(ctx.alpha_scan({}, 500, 500), Error);
}

TEST_CASE("J(0) tail needs decay evidence") {
    PrecisionScope scope(128);
    // a zero semigroup has S = 0, so s(x) = -ln(x) - C_1 grows without decay
    GeneratorCounts zero(64);
    BoundedReal c1{Real(0), Real(0)};
    MeisselContext ctx(zero, Real(2), c1);
    CHECK_THROWS_AS(ctx.j_integral(Real(0), 64), Error);
    try {
        ctx.j_integral(Real(0), 64);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::TailUnbounded);
    }
}
