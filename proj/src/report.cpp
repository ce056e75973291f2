#include "arisem/report.hpp"

#include <sstream>

namespace arisem::report {

namespace {

std::string fmt(const Real& x, unsigned digits) { return format_real(x, digits); }

}  // namespace

Json spec_json(const semigroup::SemigroupSpec& spec) {
    Json j;
    j["kind"] = semigroup::to_string(spec.kind);
    j["q"] = spec.q;
    j["n_max"] = spec.n_max;
    j["seed"] = spec.seed;
    if (spec.kind == semigroup::SpecKind::perturbed) j["perturb_max"] = spec.perturb_max;
    if (!spec.p_file.empty()) j["p_file"] = spec.p_file;
    if (!spec.g_file.empty()) j["g_file"] = spec.g_file;
    return j;
}

Json bounded_json(const BoundedReal& value, unsigned digits) {
    Json j;
    j["value"] = fmt(value.value, digits);
    j["bound"] = fmt(value.bound, digits);
    return j;
}

Json constants_json(const mertens::ConstantsReport& constants, unsigned digits) {
    Json j;
    j["gamma"] = bounded_json(constants.gamma, digits);
    j["A"] = bounded_json(constants.a, digits);
    j["C_M"] = bounded_json(constants.cm, digits);
    j["C_1"] = bounded_json(constants.c1, digits);
    j["C_2"] = bounded_json(constants.c2, digits);
    j["C_3"] = bounded_json(constants.c3, digits);
    j["I_integral"] = bounded_json(constants.i_integral, digits);
    return j;
}

Json zhang_json(const mertens::ZhangReport& report, unsigned digits) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = spec_json(report.spec);
    j["precision_bits"] = report.precision_bits;
    j["degenerate"] = report.degenerate;
    j["constants"] = constants_json(report.constants, digits);
    Json lam;
    lam["max"] = fmt(report.lambda_max, digits);
    lam["argmax"] = report.lambda_argmax;
    lam["tail_max"] = fmt(report.lambda_tail_max, digits);
    j["lambda"] = lam;
    j["envelope"] = report.envelope_family;
    Json checks = Json::array();
    for (const auto& check : report.checks) {
        Json c;
        c["name"] = check.name;
        c["statistic"] = fmt(check.statistic, digits);
        c["tolerance"] = fmt(check.tolerance, digits);
        c["pass"] = check.pass;
        checks.push_back(c);
    }
    j["checks"] = checks;
    Json series;
    for (const auto& block : report.series) {
        std::ostringstream csv;
        csv << "n,value\n";
        for (const auto& [n, value] : block.points) csv << n << ',' << fmt(value, digits) << '\n';
        series[block.name] = csv.str();
    }
    j["series"] = series;
    return j;
}

Json constants_report_json(const semigroup::SemigroupSpec& spec,
                           const mertens::ConstantsReport& constants, unsigned precision_bits,
                           unsigned digits) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = spec_json(spec);
    j["precision_bits"] = precision_bits;
    j["degenerate"] = constants.degenerate;
    j["constants"] = constants_json(constants, digits);
    return j;
}

Json meissel_json(const semigroup::SemigroupSpec& spec, const meissel::ScanTable& table,
                  unsigned precision_bits, unsigned digits) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = spec_json(spec);
    j["precision_bits"] = precision_bits;
    Json rows = Json::array();
    for (const auto& row : table.rows) {
        Json r;
        r["alpha"] = fmt(row.alpha, digits);
        r["series"] = fmt(row.series, digits);
        r["tail_bound"] = fmt(row.tail_bound, digits);
        r["J"] = fmt(row.j, digits);
        r["identity_residual"] = fmt(row.identity_residual, digits);
        r["D_over_alpha"] = fmt(row.d_over_alpha, digits);
        rows.push_back(r);
    }
    j["alpha_scan"] = rows;
    Json evals = Json::array();
    for (const auto& eval : table.evaluations) {
        Json e;
        e["alpha"] = fmt(eval.alpha, digits);
        e["series_value"] = fmt(eval.series_value, digits);
        e["series_tail_bound"] = fmt(eval.series_tail_bound, digits);
        e["J_value"] = fmt(eval.j_value, digits);
        e["J_tail_bound"] = fmt(eval.j_tail_bound, digits);
        e["identity_residual"] = fmt(eval.identity_residual, digits);
        e["K"] = eval.k;
        e["N"] = eval.n;
        evals.push_back(e);
    }
    j["evaluations"] = evals;
    j["J0"] = bounded_json(table.j0, digits);
    j["max_D_over_alpha_deviation"] = fmt(table.max_deviation, digits);
    return j;
}

std::string scan_csv(const meissel::ScanTable& table, unsigned digits) {
    std::ostringstream out;
    out << "alpha,series,tail_bound,J,identity_residual,D_over_alpha\n";
    for (const auto& row : table.rows) {
        out << fmt(row.alpha, digits) << ',' << fmt(row.series, digits) << ','
            << fmt(row.tail_bound, digits) << ',' << fmt(row.j, digits) << ','
            << fmt(row.identity_residual, digits) << ',' << fmt(row.d_over_alpha, digits) << '\n';
    }
    return out.str();
}

std::string normalized_table_csv(const semigroup::GeneratorCounts& p,
                                 const semigroup::ElementCounts& g,
                                 const normalization::NormalizedSemigroup& norm, unsigned digits) {
    std::ostringstream out;
    out << "n,P,G,lambda,g_norm,r\n";
    out << "0,," << g.at(0).str() << ",," << fmt(norm.g_norm.at(0), digits) << ',';
    if (norm.r) out << fmt(norm.r->at(0), digits);
    out << '\n';
    for (int n = 1; n <= g.n_max; ++n) {
        out << n << ',' << p.at(n).str() << ',' << g.at(n).str() << ','
            << fmt(norm.lambda.at(static_cast<std::size_t>(n - 1)), digits) << ','
            << fmt(norm.g_norm.at(static_cast<std::size_t>(n)), digits) << ',';
        if (norm.r) out << fmt(norm.r->at(static_cast<std::size_t>(n)), digits);
        out << '\n';
    }
    return out.str();
}

Json normalized_table_json(const semigroup::SemigroupSpec& spec,
                           const semigroup::GeneratorCounts& p, const semigroup::ElementCounts& g,
                           const normalization::NormalizedSemigroup& norm, unsigned digits) {
    Json j;
    j["schema_version"] = kSchemaVersion;
    j["spec"] = spec_json(spec);
    j["precision_bits"] = norm.precision_bits;
    Json rows = Json::array();
    for (int n = 0; n <= g.n_max; ++n) {
        Json r;
        r["n"] = n;
        r["P"] = n == 0 ? "" : p.at(n).str();
        r["G"] = g.at(n).str();
        r["lambda"] = n == 0 ? "" : fmt(norm.lambda.at(static_cast<std::size_t>(n - 1)), digits);
        r["g_norm"] = fmt(norm.g_norm.at(static_cast<std::size_t>(n)), digits);
        if (norm.r) r["r"] = fmt(norm.r->at(static_cast<std::size_t>(n)), digits);
        rows.push_back(r);
    }
    j["table"] = rows;
    return j;
}

}  // namespace arisem::report
