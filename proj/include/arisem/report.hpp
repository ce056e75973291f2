#pragma once

#include "arisem/meissel.hpp"
#include "arisem/mertens.hpp"
#include "arisem/normalization.hpp"
#include "arisem/semigroup.hpp"

#include <json.hpp>

#include <string>

namespace arisem::report {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
inline constexpr unsigned kDefaultDigits = 25;

Json spec_json(const semigroup::SemigroupSpec& spec);
Json bounded_json(const BoundedReal& value, unsigned digits);
Json constants_json(const mertens::ConstantsReport& constants, unsigned digits);

/// Full verify report: spec, constants (value+bound pairs), checks
/// (name/statistic/tolerance/pass), and inline CSV series blocks.
Json zhang_json(const mertens::ZhangReport& report, unsigned digits);

Json constants_report_json(const semigroup::SemigroupSpec& spec,
                           const mertens::ConstantsReport& constants, unsigned precision_bits,
                           unsigned digits);

Json meissel_json(const semigroup::SemigroupSpec& spec, const meissel::ScanTable& table,
                  unsigned precision_bits, unsigned digits);

/// Scan table export: `alpha,series,tail_bound,J,identity_residual,D_over_alpha`.
std::string scan_csv(const meissel::ScanTable& table, unsigned digits);

/// Normalized table export: `n,P,G,lambda,g_norm,r`; the degree-0 row has
/// empty P and lambda cells, r cells are empty when A is not fixed.
std::string normalized_table_csv(const semigroup::GeneratorCounts& p,
                                 const semigroup::ElementCounts& g,
                                 const normalization::NormalizedSemigroup& norm, unsigned digits);

Json normalized_table_json(const semigroup::SemigroupSpec& spec,
                           const semigroup::GeneratorCounts& p, const semigroup::ElementCounts& g,
                           const normalization::NormalizedSemigroup& norm, unsigned digits);

}  // namespace arisem::report
