#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cecp/ordinal.hpp"
#include "cecp/error.hpp"
#include "cecp/quantifiers.hpp"

namespace cecp::oracle {

/// Brute-force pattern histogram: materializes every embedding vector,
/// orders its lag offsets by (value, offset) descending with std::sort, and
/// looks the permutation up in a table built with std::next_permutation.
PatternDistribution naive_pattern_oracle(const TimeSeries& series, const OrdinalConfig& config);

/// Random series, optionally rounded to a coarse grid so that ties occur.
std::vector<double> random_series(std::mt19937_64& rng, std::size_t n, bool with_ties);

/// Dirichlet(alpha) draw over `states` outcomes, renormalized to sum to 1.
std::vector<double> random_simplex(std::mt19937_64& rng, std::size_t states, double alpha);

/// (H, C) evaluated term by term in long double, independent of the library
/// summation path.
CecpPoint direct_cecp(const std::vector<double>& p);

}  // namespace cecp::oracle
