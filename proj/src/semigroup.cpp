#include "arisem/semigroup.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <random>
#include <sstream>
#include <type_traits>

namespace arisem::semigroup {

namespace {

// Division by the degree in the transform identities. Exact by construction
// for integer sequences; a nonzero remainder means a broken invariant.
template <typename T>
T divide_by_degree(const T& numerator, int n, ErrorKind kind, const char* what) {
    if constexpr (std::is_same_v<T, Int>) {
        if (numerator % n != 0) fail(kind, std::string(what) + ": sum not divisible by n");
        return numerator / n;
    } else {
        (void)kind;
        (void)what;
        return numerator / n;
    }
}

// Weights c(m) = sum_{d|m} d P(d); the forward identity collapses to the
// convolution n G(n) = sum_{m<=n} c(m) G(n-m).
template <typename T>
std::vector<T> degree_weights(const BasicGeneratorCounts<T>& p) {
    const int n = p.n_max;
    std::vector<T> c(static_cast<std::size_t>(n) + 1, T(0));
    for (int k = 1; k <= n; ++k) {
        if (p.at(k) == 0) continue;
        T weighted = p.at(k) * k;
        for (int m = k; m <= n; m += k) c[static_cast<std::size_t>(m)] += weighted;
    }
    return c;
}

}  // namespace

void validate_strict(const GeneratorCounts& p) {
    if (p.n_max < 1 || p.values.size() != static_cast<std::size_t>(p.n_max))
        fail(ErrorKind::DomainError, "generator sequence length must equal n_max");
    for (int k = 1; k <= p.n_max; ++k)
        if (p.at(k) < 0) fail(ErrorKind::NotASemigroup, "P(" + std::to_string(k) + ") is negative");
}

void validate_strict(const ElementCounts& g) {
    if (g.n_max < 1 || g.values.size() != static_cast<std::size_t>(g.n_max) + 1)
        fail(ErrorKind::DomainError, "element sequence length must equal n_max + 1");
    if (g.at(0) != 1) fail(ErrorKind::NotASemigroup, "G(0) must equal 1");
    for (int n = 0; n <= g.n_max; ++n)
        if (g.at(n) < 0) fail(ErrorKind::NotASemigroup, "G(" + std::to_string(n) + ") is negative");
}

int mobius(unsigned long n) {
    if (n == 0) fail(ErrorKind::DomainError, "mobius is undefined at 0");
    int prime_factors = 0;
    for (unsigned long p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            n /= p;
            if (n % p == 0) return 0;
            ++prime_factors;
        }
    }
    if (n > 1) ++prime_factors;
    return (prime_factors % 2 == 0) ? 1 : -1;
}

GeneratorCounts poly_generator_counts(int q, int n_max) {
    if (q < 2) fail(ErrorKind::DomainError, "q must be >= 2");
    GeneratorCounts p(n_max);
    for (int n = 1; n <= n_max; ++n) {
        Int sum(0);
        for (int d = 1; d * d <= n; ++d) {
            if (n % d != 0) continue;
            const int e = n / d;
            sum += mobius(static_cast<unsigned long>(d)) * int_pow(Int(q), static_cast<unsigned long>(e));
            if (d != e)
                sum += mobius(static_cast<unsigned long>(e)) * int_pow(Int(q), static_cast<unsigned long>(d));
        }
        p.at(n) = divide_by_degree(sum, n, ErrorKind::Internal, "necklace count");
    }
    return p;
}

template <typename T>
BasicElementCounts<T> count_elements(const BasicGeneratorCounts<T>& p) {
    const int n_max = p.n_max;
    const std::vector<T> c = degree_weights(p);
    BasicElementCounts<T> g(n_max);
    for (int n = 1; n <= n_max; ++n) {
        T sum(0);
        for (int m = 1; m <= n; ++m) sum += c[static_cast<std::size_t>(m)] * g.at(n - m);
        g.at(n) = divide_by_degree(sum, n, ErrorKind::Internal, "count_elements");
    }
    return g;
}

template <typename T>
BasicGeneratorCounts<T> recover_generators(const BasicElementCounts<T>& g) {
    if constexpr (std::is_same_v<T, Int>) {
        if (g.at(0) != 1) fail(ErrorKind::DomainError, "recover_generators requires G(0) = 1");
    } else {
        if (abs(g.at(0) - 1) > rounding_eps() * 16)
            fail(ErrorKind::DomainError, "recover_generators requires G(0) = 1");
    }
    const int n_max = g.n_max;
    BasicGeneratorCounts<T> p(n_max);
    std::vector<T> c(static_cast<std::size_t>(n_max) + 1, T(0));
    for (int n = 1; n <= n_max; ++n) {
        T acc = g.at(n) * n;
        for (int m = 1; m < n; ++m) acc -= c[static_cast<std::size_t>(m)] * g.at(n - m);
        c[static_cast<std::size_t>(n)] = acc;
        for (int d = 1; d < n; ++d)
            if (n % d == 0) acc -= p.at(d) * d;
        p.at(n) = divide_by_degree(acc, n, ErrorKind::NotASemigroup, "recover_generators");
        if constexpr (std::is_same_v<T, Int>) {
            if (p.at(n) < 0)
                fail(ErrorKind::NotASemigroup,
                     "recovered P(" + std::to_string(n) + ") = " + p.at(n).str() + " is negative");
        }
    }
    return p;
}

template BasicElementCounts<Int> count_elements<Int>(const BasicGeneratorCounts<Int>&);
template BasicElementCounts<Real> count_elements<Real>(const BasicGeneratorCounts<Real>&);
template BasicGeneratorCounts<Int> recover_generators<Int>(const BasicElementCounts<Int>&);
template BasicGeneratorCounts<Real> recover_generators<Real>(const BasicElementCounts<Real>&);

namespace {

// Multisets of total degree n drawn from generators of degree <= k. The
// per-degree count over P(k) distinct generators is stars-and-bars.
Int count_multisets(const GeneratorCounts& p, int k, int n, std::map<std::pair<int, int>, Int>& memo) {
    if (n == 0) return Int(1);
    if (k == 0) return Int(0);
    const auto key = std::make_pair(k, n);
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    Int total(0);
    const Int& pk = p.at(k);
    for (int j = 0; j * k <= n; ++j) {
        if (j > 0 && pk == 0) break;
        Int ways = (j == 0) ? Int(1)
                            : binomial(static_cast<unsigned long>(j) + pk.convert_to<unsigned long>() - 1,
                                       pk.convert_to<unsigned long>() - 1);
        total += ways * count_multisets(p, k - 1, n - j * k, memo);
    }
    memo.emplace(key, total);
    return memo.at(key);
}

}  // namespace

ElementCounts brute_force_elements(const GeneratorCounts& p, int n_max) {
    validate_strict(p);
    if (n_max < 1 || n_max > 16)
        fail(ErrorKind::ResourceGuard, "brute force guard: n_max must be in [1, 16]");
    Int total_generators(0);
    for (const Int& v : p.values) total_generators += v;
    if (total_generators > 64)
        fail(ErrorKind::ResourceGuard, "brute force guard: sum P(k) must be <= 64");
    ElementCounts g(n_max);
    std::map<std::pair<int, int>, Int> memo;
    for (int n = 1; n <= n_max; ++n) g.at(n) = count_multisets(p, std::min(p.n_max, n), n, memo);
    return g;
}

ZetaResult zeta_truncated(const ElementCounts& g, const Real& y, int N) {
    if (abs(y) >= 1) fail(ErrorKind::DomainError, "zeta_truncated requires |y| < 1");
    if (N < 0 || N > g.n_max) fail(ErrorKind::DomainError, "truncation degree N must be in [0, n_max]");
    Real value(0);
    Real y_pow(1);
    for (int n = 0; n <= N; ++n) {
        value += Real(g.at(n)) * y_pow;
        y_pow *= y;
    }

    // Growth estimate from the top of the known range; the remainder bound
    // is conditional on G(n) <= M q_est^n continuing past N.
    Real q_est(1);
    for (int n = N; n >= 1; --n) {
        if (g.at(n) > 0 && g.at(n - 1) > 0) {
            q_est = Real(g.at(n)) / Real(g.at(n - 1));
            break;
        }
    }
    if (q_est < 1) q_est = 1;

    ZetaResult result{value, std::nullopt, false, q_est};
    const Real t = q_est * abs(y);
    if (t < 1) {
        Real m(0);
        Real scale(1);
        for (int n = 0; n <= N; ++n) {
            Real g_scaled = Real(g.at(n)) * scale;  // G(n) / q_est^n
            if (g_scaled > m) m = g_scaled;
            scale /= q_est;
        }
        Real t_pow = pow_int(t, static_cast<unsigned long>(N) + 1);
        result.remainder_bound = m * t_pow / (1 - t);
    } else {
        result.divergence_warning = true;
    }
    return result;
}

const char* to_string(SpecKind kind) {
    switch (kind) {
        case SpecKind::poly_over_fq: return "poly_over_fq";
        case SpecKind::explicit_p: return "explicit_P";
        case SpecKind::explicit_g: return "explicit_G";
        case SpecKind::perturbed: return "perturbed";
    }
    return "unknown";
}

void validate(const SemigroupSpec& spec) {
    const bool file_kind = spec.kind == SpecKind::explicit_p || spec.kind == SpecKind::explicit_g;
    if (spec.n_max < 1 && !(file_kind && spec.n_max == 0))
        fail(ErrorKind::DomainError, "n_max must be >= 1");
    if ((spec.kind == SpecKind::poly_over_fq || spec.kind == SpecKind::perturbed) && spec.q < 2)
        fail(ErrorKind::DomainError, "q must be >= 2");
    if (spec.kind == SpecKind::explicit_p && spec.p_file.empty())
        fail(ErrorKind::DomainError, "explicit_P requires a P file");
    if (spec.kind == SpecKind::explicit_g && spec.g_file.empty())
        fail(ErrorKind::DomainError, "explicit_G requires a G file");
    if (spec.perturb_max < 0) fail(ErrorKind::DomainError, "perturb_max must be >= 0");
}

ResolvedSemigroup resolve(const SemigroupSpec& spec) {
    validate(spec);
    ResolvedSemigroup out;
    out.spec = spec;
    switch (spec.kind) {
        case SpecKind::poly_over_fq: {
            out.p = poly_generator_counts(spec.q, spec.n_max);
            out.g = count_elements(out.p);
            out.integer_q = spec.q;
            out.exact_a_known = true;
            break;
        }
        case SpecKind::perturbed: {
            out.p = poly_generator_counts(spec.q, spec.n_max);
            std::mt19937_64 rng(spec.seed);
            std::uniform_int_distribution<int> delta(0, spec.perturb_max);
            for (int k = 1; k <= spec.n_max; ++k) out.p.at(k) += delta(rng);
            out.g = count_elements(out.p);
            out.integer_q = spec.q;
            break;
        }
        case SpecKind::explicit_p: {
            SequenceTable table = read_sequence_file(spec.p_file);
            GeneratorCounts p = generators_from_table(table);
            if (spec.n_max > 0) {
                if (spec.n_max > p.n_max)
                    fail(ErrorKind::DomainError, "requested n_max exceeds the P file length");
                p.n_max = spec.n_max;
                p.values.resize(static_cast<std::size_t>(spec.n_max));
            }
            validate_strict(p);
            out.p = std::move(p);
            out.g = count_elements(out.p);
            out.spec.n_max = out.p.n_max;
            if (spec.q >= 2) out.integer_q = spec.q;
            break;
        }
        case SpecKind::explicit_g: {
            SequenceTable table = read_sequence_file(spec.g_file);
            ElementCounts g = elements_from_table(table);
            if (spec.n_max > 0) {
                if (spec.n_max > g.n_max)
                    fail(ErrorKind::DomainError, "requested n_max exceeds the G file length");
                g.n_max = spec.n_max;
                g.values.resize(static_cast<std::size_t>(spec.n_max) + 1);
            }
            validate_strict(g);
            out.g = std::move(g);
            out.p = recover_generators(out.g);
            out.spec.n_max = out.g.n_max;
            if (spec.q >= 2) out.integer_q = spec.q;
            break;
        }
    }
    return out;
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    for (char ch : line) {
        if (ch == ',') {
            cells.push_back(cell);
            cell.clear();
        } else if (ch != '\r') {
            cell += ch;
        }
    }
    cells.push_back(cell);
    return cells;
}

Int parse_exact_integer(const std::string& cell, int row) {
    std::size_t i = (cell.size() > 0 && (cell[0] == '-' || cell[0] == '+')) ? 1 : 0;
    if (i == cell.size()) fail(ErrorKind::DomainError, "row " + std::to_string(row) + ": empty integer");
    for (; i < cell.size(); ++i)
        if (cell[i] < '0' || cell[i] > '9')
            fail(ErrorKind::DomainError,
                 "row " + std::to_string(row) + ": '" + cell + "' is not an exact decimal integer");
    return Int(cell);
}

}  // namespace

SequenceTable read_sequence_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) fail(ErrorKind::DomainError, "empty sequence file");
    {
        auto header = split_csv_row(line);
        if (header.size() < 3 || header[0] != "n" || header[1] != "P" || header[2] != "G")
            fail(ErrorKind::DomainError, "sequence file header must start with n,P,G");
    }
    SequenceTable table;
    table.p.emplace_back(std::nullopt);  // P(0) placeholder
    int expected = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto cells = split_csv_row(line);
        if (cells.size() < 3)
            fail(ErrorKind::DomainError, "row " + std::to_string(expected) + ": expected n,P,G cells");
        Int n = parse_exact_integer(cells[0], expected);
        if (n != expected)
            fail(ErrorKind::DomainError, "rows must list degrees consecutively from 0");
        if (expected > 0)
            table.p.push_back(cells[1].empty() ? std::nullopt
                                               : std::optional<Int>(parse_exact_integer(cells[1], expected)));
        table.g.push_back(cells[2].empty() ? std::nullopt
                                           : std::optional<Int>(parse_exact_integer(cells[2], expected)));
        ++expected;
    }
    if (expected < 2) fail(ErrorKind::DomainError, "sequence file must cover degrees 0 and 1");
    table.n_max = expected - 1;
    return table;
}

SequenceTable read_sequence_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::IoError, "cannot open '" + path + "'");
    return read_sequence_csv(in);
}

void write_sequence_csv(std::ostream& out, const GeneratorCounts& p, const ElementCounts& g) {
    out << "n,P,G\n";
    out << "0,," << g.at(0).str() << "\n";
    for (int n = 1; n <= g.n_max; ++n) {
        out << n << ',';
        if (n <= p.n_max) out << p.at(n).str();
        out << ',' << g.at(n).str() << "\n";
    }
}

GeneratorCounts generators_from_table(const SequenceTable& table) {
    GeneratorCounts p(table.n_max);
    for (int k = 1; k <= table.n_max; ++k) {
        const auto& cell = table.p.at(static_cast<std::size_t>(k));
        if (!cell) fail(ErrorKind::DomainError, "P(" + std::to_string(k) + ") is missing");
        p.at(k) = *cell;
    }
    return p;
}

ElementCounts elements_from_table(const SequenceTable& table) {
    ElementCounts g(table.n_max);
    for (int n = 0; n <= table.n_max; ++n) {
        const auto& cell = table.g.at(static_cast<std::size_t>(n));
        if (!cell) fail(ErrorKind::DomainError, "G(" + std::to_string(n) + ") is missing");
        g.at(n) = *cell;
    }
    return g;
}

}  // namespace arisem::semigroup
