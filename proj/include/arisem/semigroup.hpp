#pragma once

#include "arisem/errors.hpp"
#include "arisem/numeric.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace arisem::semigroup {

/// Per-degree generator counts P(1)..P(n_max). T is Int in strict mode and
/// Real in analysis mode (real-valued sequences for residual-model studies).
template <typename T>
struct BasicGeneratorCounts {
    int n_max = 0;
    std::vector<T> values;  // values[k-1] == P(k)

    BasicGeneratorCounts() = default;
    explicit BasicGeneratorCounts(int n) : n_max(n), values(static_cast<std::size_t>(n), T(0)) {
        if (n < 1) fail(ErrorKind::DomainError, "n_max must be >= 1");
    }

    const T& at(int k) const { return values.at(static_cast<std::size_t>(k - 1)); }
    T& at(int k) { return values.at(static_cast<std::size_t>(k - 1)); }
};

/// Per-degree element counts G(0)..G(n_max); G(0) == 1 by convention and
/// G(m) == 0 for m < 0 wherever a transform looks below degree zero.
template <typename T>
struct BasicElementCounts {
    int n_max = 0;
    std::vector<T> values;  // values[n] == G(n)

    BasicElementCounts() = default;
    explicit BasicElementCounts(int n) : n_max(n), values(static_cast<std::size_t>(n) + 1, T(0)) {
        if (n < 1) fail(ErrorKind::DomainError, "n_max must be >= 1");
        values[0] = T(1);
    }

    const T& at(int n) const { return values.at(static_cast<std::size_t>(n)); }
    T& at(int n) { return values.at(static_cast<std::size_t>(n)); }
};

using GeneratorCounts = BasicGeneratorCounts<Int>;
using ElementCounts = BasicElementCounts<Int>;
using RealGeneratorCounts = BasicGeneratorCounts<Real>;
using RealElementCounts = BasicElementCounts<Real>;

/// Strict-mode invariants: sequence shape, non-negativity, G(0) == 1.
void validate_strict(const GeneratorCounts& p);
void validate_strict(const ElementCounts& g);

/// Möbius function by trial factorization. Rejects n == 0.
int mobius(unsigned long n);

/// Irreducible monic polynomial counts over a q-element field:
/// P(n) = (1/n) * sum_{d|n} mu(d) q^{n/d}. The division is checked exact.
GeneratorCounts poly_generator_counts(int q, int n_max);

/// Forward transform: solves n G(n) = sum_k k P(k) sum_{j>=1} G(n-jk) for
/// G degree by degree. Exact in T's arithmetic; equals the coefficients of
/// prod_k (1 - y^k)^(-P(k)).
template <typename T>
BasicElementCounts<T> count_elements(const BasicGeneratorCounts<T>& p);

/// Backward transform: recovers P from G through the same identity. In
/// strict (Int) mode a negative or fractional P(n) raises NotASemigroup.
template <typename T>
BasicGeneratorCounts<T> recover_generators(const BasicElementCounts<T>& g);

/// Independent oracle: counts multisets of generators of total degree n by
/// memoized descent over generator degrees, with a stars-and-bars count per
/// degree class. Guarded to n_max <= 16 and sum P(k) <= 64.
ElementCounts brute_force_elements(const GeneratorCounts& p, int n_max);

struct ZetaResult {
    Real value;
    std::optional<Real> remainder_bound;  // present when |y| * q_est < 1
    bool divergence_warning = false;      // y >= 1/q_est
    Real q_estimate;
};

/// Partial sum of the generating function Z(y) = sum G(n) y^n up to degree
/// N, with a geometric remainder bound keyed to the tail growth of G.
ZetaResult zeta_truncated(const ElementCounts& g, const Real& y, int N);

enum class SpecKind { poly_over_fq, explicit_p, explicit_g, perturbed };

const char* to_string(SpecKind kind);

/// Catalog instance descriptor. `perturbed` adds a seeded uniform integer
/// delta in [0, perturb_max] to each P(k) of the poly_over_fq base, so runs
/// reproduce from (kind, q, n_max, seed, perturb_max).
struct SemigroupSpec {
    SpecKind kind = SpecKind::poly_over_fq;
    int q = 2;
    int n_max = 1;
    std::uint64_t seed = 0;
    int perturb_max = 1;
    std::string p_file;
    std::string g_file;
};

void validate(const SemigroupSpec& spec);

struct ResolvedSemigroup {
    SemigroupSpec spec;
    GeneratorCounts p;
    ElementCounts g;
    std::optional<int> integer_q;  // enables the exact-rational paths
    bool exact_a_known = false;    // poly_over_fq: A == 1 identically
};

ResolvedSemigroup resolve(const SemigroupSpec& spec);

/// Sequence file format: CSV with header `n,P,G`, one row per degree,
/// exact decimal integers; the degree-0 row carries an empty P field.
/// Extra columns are ignored on read.
struct SequenceTable {
    std::vector<std::optional<Int>> p;  // index 1..n_max
    std::vector<std::optional<Int>> g;  // index 0..n_max
    int n_max = 0;
};

SequenceTable read_sequence_csv(std::istream& in);
SequenceTable read_sequence_file(const std::string& path);
void write_sequence_csv(std::ostream& out, const GeneratorCounts& p, const ElementCounts& g);

GeneratorCounts generators_from_table(const SequenceTable& table);
ElementCounts elements_from_table(const SequenceTable& table);

}  // namespace arisem::semigroup
