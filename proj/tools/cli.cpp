#include "cli.hpp"

#include "arisem/errors.hpp"
#include "arisem/meissel.hpp"
#include "arisem/mertens.hpp"
#include "arisem/normalization.hpp"
#include "arisem/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace arisem::cli {

namespace {

struct RawOpts {
    std::string semigroup = "polyfq";
    int q = 0;
    int nmax = 0;
    std::string pfile;
    std::string gfile;
    std::uint64_t seed = 0;
    int perturb_max = 1;
    unsigned precision = kDefaultPrecisionBits;
    std::string out = "-";
    std::string format = "csv";
    int threads = 1;
    unsigned digits = report::kDefaultDigits;
    std::vector<std::string> tol;
    std::string alpha = "0.4,0.2,0.1,0.05";
};

void add_common_options(CLI::App* cmd, RawOpts& raw) {
    cmd->add_option("--semigroup", raw.semigroup, "Instance kind: polyfq, file, or perturbed")
        ->check(CLI::IsMember({"polyfq", "file", "perturbed"}));
    cmd->add_option("--q", raw.q, "Growth base q >= 2 (polyfq/perturbed; optional hint for files)");
    cmd->add_option("--nmax", raw.nmax, "Truncation degree (0 with file input: take from file)");
    cmd->add_option("--pfile", raw.pfile, "Sequence CSV with generator counts (explicit_P)");
    cmd->add_option("--gfile", raw.gfile, "Sequence CSV with element counts (explicit_G)");
    cmd->add_option("--seed", raw.seed, "Seed for perturbed instances");
    cmd->add_option("--perturb-max", raw.perturb_max, "Max per-degree delta for perturbed instances");
    cmd->add_option("--precision", raw.precision, "Working precision in significand bits")
        ->check(CLI::Range(64u, 16384u));
    cmd->add_option("--out", raw.out, "Output path; '-' writes to stdout");
    cmd->add_option("--format", raw.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--threads", raw.threads, "Parallelism cap")->check(CLI::PositiveNumber);
    cmd->add_option("--digits", raw.digits, "Significant digits for rendered reals (output only)")
        ->check(CLI::Range(1u, 1000u));
    cmd->add_option("--tol", raw.tol, "Tolerance override name=value (repeatable)");
    cmd->set_config("--config", "", "Key-value config file mirroring the flags; flags win");
    cmd->allow_config_extras(CLI::config_extras_mode::error);
}

Real parse_real(const std::string& text, const std::string& what) {
    try {
        return Real(text);
    } catch (const std::exception&) {
        fail(ErrorKind::UsageError, "cannot parse " + what + " value '" + text + "'");
    }
}

std::map<std::string, Real> parse_tolerances(const std::vector<std::string>& entries,
                                             const std::vector<std::string>& allowed) {
    std::map<std::string, Real> out;
    for (const std::string& entry : entries) {
        const auto eq = entry.find('=');
        if (eq == std::string::npos || eq == 0)
            fail(ErrorKind::UsageError, "--tol expects name=value, got '" + entry + "'");
        const std::string name = entry.substr(0, eq);
        if (std::find(allowed.begin(), allowed.end(), name) == allowed.end())
            fail(ErrorKind::UsageError, "unknown tolerance name '" + name + "' for this command");
        Real value = parse_real(entry.substr(eq + 1), "--tol");
        if (!(value > 0)) fail(ErrorKind::UsageError, "tolerances must be positive");
        out[name] = value;
    }
    return out;
}

std::vector<Real> parse_alpha_grid(const std::string& text) {
    std::vector<Real> grid;
    std::stringstream stream(text);
    std::string item;
    while (std::getline(stream, item, ',')) {
        if (item.empty()) continue;
        Real alpha = parse_real(item, "--alpha");
        if (!(alpha > 0) || alpha > 1)
            fail(ErrorKind::UsageError, "--alpha values must lie in (0, 1]");
        if (!grid.empty() && !(alpha < grid.back()))
            fail(ErrorKind::UsageError, "--alpha grid must be strictly decreasing");
        grid.push_back(alpha);
    }
    if (grid.empty()) fail(ErrorKind::UsageError, "--alpha grid is empty");
    return grid;
}

semigroup::SemigroupSpec build_spec(const RawOpts& raw) {
    semigroup::SemigroupSpec spec;
    spec.n_max = raw.nmax;
    spec.seed = raw.seed;
    spec.perturb_max = raw.perturb_max;
    if (raw.semigroup == "polyfq" || raw.semigroup == "perturbed") {
        spec.kind = raw.semigroup == "polyfq" ? semigroup::SpecKind::poly_over_fq
                                              : semigroup::SpecKind::perturbed;
        if (raw.q < 2) fail(ErrorKind::UsageError, "--q must be >= 2");
        if (raw.nmax < 1) fail(ErrorKind::UsageError, "--nmax must be >= 1");
        if (!raw.pfile.empty() || !raw.gfile.empty())
            fail(ErrorKind::UsageError, "--pfile/--gfile only apply to --semigroup file");
        spec.q = raw.q;
        if (spec.perturb_max < 0) fail(ErrorKind::UsageError, "--perturb-max must be >= 0");
        return spec;
    }
    // file input
    if (raw.pfile.empty() == raw.gfile.empty())
        fail(ErrorKind::UsageError, "--semigroup file requires exactly one of --pfile/--gfile");
    if (raw.nmax < 0) fail(ErrorKind::UsageError, "--nmax must be >= 0");
    if (raw.q != 0 && raw.q < 2) fail(ErrorKind::UsageError, "--q must be >= 2");
    spec.q = raw.q;
    if (!raw.pfile.empty()) {
        spec.kind = semigroup::SpecKind::explicit_p;
        spec.p_file = raw.pfile;
    } else {
        spec.kind = semigroup::SpecKind::explicit_g;
        spec.g_file = raw.gfile;
    }
    return spec;
}

void write_output(const std::string& path, const std::string& content) {
    if (path == "-") {
        std::cout << content;
        std::cout.flush();
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::IoError, "cannot open '" + path + "' for writing");
    out << content;
    out.flush();
    if (!out) fail(ErrorKind::IoError, "write to '" + path + "' failed");
}

std::string json_text(const report::Json& j) { return j.dump(2) + "\n"; }

Real instance_q(const semigroup::ResolvedSemigroup& instance) {
    if (instance.integer_q) return Real(*instance.integer_q);
    return normalization::estimate_q(instance.g).value;
}

int cmd_generate(const RunConfig& config) {
    semigroup::ResolvedSemigroup instance = semigroup::resolve(config.spec);
    const Real q = instance_q(instance);
    std::optional<Real> a;
    if (instance.exact_a_known) {
        a = Real(1);
    } else {
        try {
            a = normalization::estimate_a(instance.g, q, normalization::AMethod::tail_average).a;
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoConvergence && e.kind() != ErrorKind::DomainError) throw;
            std::cerr << "note: no axiom-A estimate (" << e.what() << "); r column left empty\n";
        }
    }
    normalization::NormalizedSemigroup norm =
        normalization::normalize(instance.p, instance.g, q, instance.integer_q,
                                 config.precision_bits, a);
    if (config.format == "json") {
        write_output(config.out, json_text(report::normalized_table_json(
                                     instance.spec, instance.p, instance.g, norm, config.digits)));
    } else {
        write_output(config.out,
                     report::normalized_table_csv(instance.p, instance.g, norm, config.digits));
    }
    return 0;
}

Real constants_tail_tol(const RunConfig& config) {
    auto it = config.tolerances.find("constants_tail");
    return it != config.tolerances.end() ? it->second : Real("1e-8");
}

int cmd_constants(const RunConfig& config) {
    semigroup::ResolvedSemigroup instance = semigroup::resolve(config.spec);
    mertens::ConstantsReport constants =
        mertens::constants_report(instance, config.precision_bits, constants_tail_tol(config));
    write_output(config.out, json_text(report::constants_report_json(
                                 instance.spec, constants, config.precision_bits, config.digits)));
    return 0;
}

int cmd_verify(const RunConfig& config) {
    semigroup::ResolvedSemigroup instance = semigroup::resolve(config.spec);
    mertens::ZhangReport rep =
        mertens::zhang_report(instance, config.precision_bits, config.tolerances);
    write_output(config.out, json_text(report::zhang_json(rep, config.digits)));
    if (!rep.all_pass()) {
        for (const auto& check : rep.checks)
            if (!check.pass)
                std::cerr << "verification failed: " << check.name << " (statistic "
                          << format_real(check.statistic, 6) << " > tolerance "
                          << format_real(check.tolerance, 6) << ")\n";
        return 5;
    }
    return 0;
}

int cmd_meissel(const RunConfig& config) {
    semigroup::ResolvedSemigroup instance = semigroup::resolve(config.spec);
    mertens::ConstantsReport constants =
        mertens::constants_report(instance, config.precision_bits, constants_tail_tol(config));
    if (constants.degenerate)
        fail(ErrorKind::DomainError, "meissel analysis needs a non-degenerate semigroup");
    const Real q = instance_q(instance);
    meissel::MeisselContext context(instance.p, q, constants.c1);
    const int truncation = instance.p.n_max;
    meissel::ScanTable table = context.alpha_scan(config.alpha_grid, truncation, truncation);
    if (config.format == "json") {
        write_output(config.out, json_text(report::meissel_json(instance.spec, table,
                                                                config.precision_bits,
                                                                config.digits)));
    } else {
        write_output(config.out, report::scan_csv(table, config.digits));
    }
    return 0;
}

int cmd_identity(const RunConfig& config) {
    semigroup::ResolvedSemigroup instance = semigroup::resolve(config.spec);
    for (int n = 1; n <= instance.g.n_max; ++n) {
        if (!mertens::exact_degree_identity_check(instance.p, instance.g, n)) {
            std::cerr << "verification failed: exact_degree_identity at n = " << n << "\n";
            return 5;
        }
    }
    std::cout << "exact degree identity holds for 1 <= n <= " << instance.g.n_max << "\n";
    return 0;
}

}  // namespace

RunConfig parse_config(const std::vector<std::string>& args) {
    CLI::App app{"arisem: additive arithmetical semigroup workbench"};
    app.require_subcommand(1);
    RawOpts raw;
    CLI::App* generate = app.add_subcommand("generate", "Write the n,P,G,lambda,g_norm,r table");
    CLI::App* constants = app.add_subcommand("constants", "Report gamma, A, C_M, C_1, C_2, C_3");
    CLI::App* verify = app.add_subcommand("verify", "Run the Mertens-type checks and report JSON");
    CLI::App* meissel_cmd = app.add_subcommand("meissel", "Alpha-scan of the weighted prime series");
    CLI::App* identity = app.add_subcommand("identity", "Exact degree-identity check for all n");
    for (CLI::App* cmd : {generate, constants, verify, meissel_cmd, identity})
        add_common_options(cmd, raw);
    meissel_cmd->add_option("--alpha", raw.alpha, "Comma-separated decreasing grid in (0, 1]");

    std::vector<const char*> argv;
    argv.push_back("arisem");
    for (const std::string& arg : args) argv.push_back(arg.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        std::cout << app.help();
        throw HelpRequested{};
    } catch (const CLI::CallForAllHelp& e) {
        std::cout << app.help("", CLI::AppFormatMode::All);
        throw HelpRequested{};
    } catch (const CLI::ConfigError& e) {
        fail(ErrorKind::ConfigError, e.what());
    } catch (const CLI::FileError& e) {
        fail(ErrorKind::ConfigError, e.what());
    } catch (const CLI::ParseError& e) {
        fail(ErrorKind::UsageError, e.what());
    }

    RunConfig config;
    if (app.got_subcommand(generate)) config.command = Command::generate;
    else if (app.got_subcommand(constants)) config.command = Command::constants;
    else if (app.got_subcommand(verify)) config.command = Command::verify;
    else if (app.got_subcommand(meissel_cmd)) config.command = Command::meissel;
    else config.command = Command::identity;

    config.spec = build_spec(raw);
    config.precision_bits = raw.precision;
    config.digits = raw.digits;
    config.threads = raw.threads;
    config.out = raw.out;
    config.format = raw.format;

    std::vector<std::string> allowed;
    if (config.command == Command::verify) {
        for (const auto& [name, value] : mertens::default_verify_tolerances())
            allowed.push_back(name);
    }
    if (config.command == Command::constants || config.command == Command::meissel)
        allowed.push_back("constants_tail");
    config.tolerances = parse_tolerances(raw.tol, allowed);
    if (config.command == Command::meissel) config.alpha_grid = parse_alpha_grid(raw.alpha);
    return config;
}

int run_command(const RunConfig& config) {
    PrecisionScope scope(config.precision_bits);
    switch (config.command) {
        case Command::generate: return cmd_generate(config);
        case Command::constants: return cmd_constants(config);
        case Command::verify: return cmd_verify(config);
        case Command::meissel: return cmd_meissel(config);
        case Command::identity: return cmd_identity(config);
    }
    fail(ErrorKind::Internal, "unreachable command");
}

int run_cli(const std::vector<std::string>& args) {
    try {
        RunConfig config = parse_config(args);
        return run_command(config);
    } catch (const HelpRequested&) {
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        switch (e.kind()) {
            case ErrorKind::UsageError: return 2;
            case ErrorKind::ConfigError: return 3;
            case ErrorKind::IoError: return 4;
            default: return 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace arisem::cli
