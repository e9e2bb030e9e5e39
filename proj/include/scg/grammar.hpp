#pragma once

#include "scg/symbol.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scg {

/// Raised by the text readers; `line()` is 1-based, 0 when not tied to a line.
class ParseError : public std::runtime_error {
public:
    ParseError(std::size_t line, const std::string& message);
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

/// (A1, ..., An) -> (x1, ..., xn): rewrites n nonterminals occurring
/// left-to-right in a sentential form, not necessarily adjacent.
struct ScatteredProduction {
    std::vector<Symbol> lhs;
    std::vector<Form> rhs;

    std::size_t width() const { return lhs.size(); }
    bool is_context_free() const { return lhs.size() == 1; }
    bool is_erasing() const;

    friend bool operator==(const ScatteredProduction&, const ScatteredProduction&) = default;
};

class Grammar {
public:
    /// Throws std::invalid_argument when an invariant is violated: overlapping
    /// alphabets, start outside the nonterminals, a malformed production, or
    /// an undeclared symbol.
    Grammar(std::vector<Symbol> nonterminals, std::vector<Symbol> terminals, Symbol start,
            std::vector<ScatteredProduction> productions);

    const std::vector<Symbol>& nonterminals() const { return nonterminals_; }
    const std::vector<Symbol>& terminals() const { return terminals_; }
    Symbol start() const { return start_; }
    const std::vector<ScatteredProduction>& productions() const { return productions_; }
    const ScatteredProduction& production(std::size_t index) const { return productions_.at(index); }

    bool declares(Symbol s) const;
    bool is_erasing() const;

    friend bool operator==(const Grammar&, const Grammar&) = default;

private:
    std::vector<Symbol> nonterminals_;
    std::vector<Symbol> terminals_;
    Symbol start_;
    std::vector<ScatteredProduction> productions_;
};

struct GrammarMetrics {
    std::size_t nonterminal_count = 0;
    std::size_t terminal_count = 0;
    std::size_t production_count = 0;
    std::size_t non_cf_production_count = 0;
    std::size_t width = 0;
    bool is_erasing = false;

    friend bool operator==(const GrammarMetrics&, const GrammarMetrics&) = default;
};

GrammarMetrics compute_metrics(const Grammar& g);

/// Non-fatal findings (currently: duplicate productions, by 1-based index).
std::vector<std::string> validation_warnings(const Grammar& g);

Grammar parse_grammar(std::string_view text);
std::string render_grammar(const Grammar& g);

/// Resolves whitespace-separated tokens against the grammar's alphabets.
/// `@` alone denotes the empty form.
Form parse_form(const Grammar& g, std::string_view text);

} // namespace scg
