#pragma once

#include "scg/grammar.hpp"

#include <cstdint>
#include <set>

namespace scg::showcase {

/// Generates { a^n b^n c^n : n >= 1 } with three productions.
Grammar example1();

/// Parameters of the { a^(l^(k^n)) : n >= 0 } grammar. Requires k, l >= 2 and
/// l^(k*k) <= 4096 so the longest right-hand side stays materializable.
struct ShowcaseParams {
    std::uint64_t k = 2;
    std::uint64_t l = 2;
};

constexpr std::uint64_t max_materialized_length = 4096;

/// Throws std::invalid_argument when `p` is out of range.
void check_params(const ShowcaseParams& p);

/// Twelve nonterminals {S, A, A', A'', B, C, X, X2, X3, Y, Z, Z'} over {a},
/// fourteen nonerasing productions in two stages.
Grammar lemma1(const ShowcaseParams& p);

/// { l^(k^n) : n >= 0 } intersected with [0, max_len].
std::set<std::uint64_t> lemma1_expected_lengths(const ShowcaseParams& p, std::uint64_t max_len);

} // namespace scg::showcase
