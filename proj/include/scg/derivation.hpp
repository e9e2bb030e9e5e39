#pragma once

#include "scg/grammar.hpp"
#include "scg/state_space.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scg {

/// One application of a production: `production` is a 0-based index into the
/// grammar, `positions` are 1-based and strictly increasing.
struct DerivationStep {
    std::size_t production = 0;
    std::vector<std::size_t> positions;

    friend bool operator==(const DerivationStep&, const DerivationStep&) = default;
    friend auto operator<=>(const DerivationStep&, const DerivationStep&) = default;
};

using Derivative = Successor<DerivationStep>;
using DerivationTrace = Trace<DerivationStep>;

class InvalidStep : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

class ReplayError : public std::runtime_error {
public:
    ReplayError(std::size_t step, const std::string& reason);
    /// 1-based index of the failing step.
    std::size_t step() const { return step_; }

private:
    std::size_t step_;
};

/// Every strictly increasing position tuple whose symbols spell p.lhs, in
/// lexicographic order. `production` of each step is left 0.
std::vector<DerivationStep> find_applications(FormView form, const ScatteredProduction& p);

/// Throws InvalidStep when positions are out of range, not increasing, the
/// wrong count, or hold the wrong symbols.
Form apply_step(FormView form, const ScatteredProduction& p, const DerivationStep& step);

/// All one-step derivatives of `form`, one per distinct result, each with its
/// smallest (production, positions) step, sorted by that step.
std::vector<Derivative> successors(const Grammar& g, FormView form);

using DerivationSpace = StateSpace<DerivationStep>;

/// Search space rooted at the start symbol; the node label is the production
/// index. The space holds its own copy of `g`.
DerivationSpace make_derivation_space(const Grammar& g, EnumerationBounds bounds);

BoundedLanguage enumerate(const Grammar& g, const EnumerationBounds& bounds);

struct Member {
    DerivationTrace trace;
};
struct NotMemberExhaustive {};
struct Unknown {};
using MembershipVerdict = std::variant<Member, NotMemberExhaustive, Unknown>;

/// For nonerasing grammars the search is capped at |word|, which makes a
/// negative answer exhaustive unless the depth or form budget runs out.
/// Throws std::invalid_argument when `word` holds a nonterminal or an
/// undeclared symbol.
MembershipVerdict decide_membership(const Grammar& g, FormView word, const EnumerationBounds& bounds);

/// Throws ReplayError naming the first invalid step.
Form replay(const Grammar& g, const DerivationTrace& trace);

/// `start: <tok> ...` followed by `step <production> @ <pos> ...` lines,
/// production indices 1-based.
std::string render_trace(const DerivationTrace& trace);
DerivationTrace parse_trace(const Grammar& g, std::string_view text);

} // namespace scg
