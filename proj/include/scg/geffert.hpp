#pragma once

#include "scg/state_space.hpp"
#include "scg/symbol.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace scg::geffert {

/// Fixed nonterminals S', A, B, C, D.
Symbol s_prime();
Symbol sym_a();
Symbol sym_b();
Symbol sym_c();
Symbol sym_d();

/// S' -> u S' a
struct AppendTerminal {
    Form u;
    Symbol a;
    friend bool operator==(const AppendTerminal&, const AppendTerminal&) = default;
};

/// S' -> u S' v
struct Bilateral {
    Form u;
    Form v;
    friend bool operator==(const Bilateral&, const Bilateral&) = default;
};

/// S' -> lambda
struct Erase {
    friend bool operator==(const Erase&, const Erase&) = default;
};

using CfRule = std::variant<AppendTerminal, Bilateral, Erase>;

/// Geffert normal form grammar. The nonterminal alphabet {S', A, B, C, D} and
/// the erasure rules AB -> lambda, CD -> lambda are implicit. Construction
/// performs no shape checks; see validate_geffert.
struct GeffertGrammar {
    std::vector<Symbol> terminals;
    std::vector<CfRule> rules;

    friend bool operator==(const GeffertGrammar&, const GeffertGrammar&) = default;
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

ValidationReport validate_geffert(const GeffertGrammar& g);

/// Positions are 1-based.
struct ApplyCf {
    std::size_t rule = 0; ///< 0-based index into GeffertGrammar::rules
    std::size_t position = 0;
    friend bool operator==(const ApplyCf&, const ApplyCf&) = default;
    friend auto operator<=>(const ApplyCf&, const ApplyCf&) = default;
};
struct EraseAB {
    std::size_t position = 0; ///< of the A
    friend bool operator==(const EraseAB&, const EraseAB&) = default;
    friend auto operator<=>(const EraseAB&, const EraseAB&) = default;
};
struct EraseCD {
    std::size_t position = 0; ///< of the C
    friend bool operator==(const EraseCD&, const EraseCD&) = default;
    friend auto operator<=>(const EraseCD&, const EraseCD&) = default;
};

using GeffertStep = std::variant<ApplyCf, EraseAB, EraseCD>;
using GeffertTrace = Trace<GeffertStep>;

std::string describe(const GeffertStep& step);

/// Throws std::invalid_argument when the step does not apply.
Form apply_step(const GeffertGrammar& g, FormView form, const GeffertStep& step);

/// Throws std::runtime_error naming the failing 1-based step.
Form replay(const GeffertGrammar& g, const GeffertTrace& trace);

/// Deduplicated by result; ApplyCf steps first (by rule, then position), then
/// EraseAB, then EraseCD, each by position.
std::vector<Successor<GeffertStep>> geffert_successors(const GeffertGrammar& g, FormView form);

using GeffertSpace = StateSpace<GeffertStep>;

/// Rooted at S'. Node label: rule index for ApplyCf, rules.size() for EraseAB,
/// rules.size() + 1 for EraseCD. The space holds its own copy of `g`.
GeffertSpace make_geffert_space(const GeffertGrammar& g, EnumerationBounds bounds);

BoundedLanguage enumerate_geffert(const GeffertGrammar& g, const EnumerationBounds& bounds);

std::optional<GeffertTrace> find_geffert_trace(const GeffertGrammar& g, FormView word,
                                               const EnumerationBounds& bounds);

/// The nonterminal subsequence of `form` lies in {A,C}* (S' | lambda) {B,D}*.
bool has_normal_shape(FormView form);

GeffertGrammar parse_geffert(std::string_view text);
std::string render_geffert(const GeffertGrammar& g);

} // namespace scg::geffert
