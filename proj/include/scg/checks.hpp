#pragma once

#include "scg/derivation.hpp"
#include "scg/geffert.hpp"
#include "scg/grammar.hpp"

#include <optional>
#include <string>

namespace scg::checks {

struct CheckReport {
    std::size_t visited = 0;
    std::size_t violations = 0;
    /// Rendered derivation of the first violating form.
    std::optional<std::string> witness;
    std::optional<std::string> witness_form;
    BoundedLanguage language;
};

/// Requires nonterminals {S, A, B} with start S. Tracks i (applications of
/// the production with lhs (S)) and j (lhs (S,S,S,A)) along each form's
/// discovery path and checks the counting equations at every visited form.
/// Throws std::invalid_argument when the grammar does not have that shape.
CheckReport three_nt(const Grammar& g, const EnumerationBounds& bounds);

/// |form|_Y + |form|_X3 <= 1 and |form|_X2 <= 1 at every visited form.
CheckReport lemma1_markers(const Grammar& g, const EnumerationBounds& bounds);

/// Nonterminal projection in {A,C}* (S' | lambda) {B,D}* and at most one S'.
CheckReport geffert_shape(const geffert::GeffertGrammar& g, const EnumerationBounds& bounds);

} // namespace scg::checks
