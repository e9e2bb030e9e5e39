#include "scg/grammar.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <optional>
#include <sstream>
#include <unordered_set>

namespace scg {

ParseError::ParseError(std::size_t line, const std::string& message)
    : std::runtime_error(line ? "line " + std::to_string(line) + ": " + message : message), line_(line)
{
}

bool ScatteredProduction::is_erasing() const
{
    return std::any_of(rhs.begin(), rhs.end(), [](const Form& x) { return x.empty(); });
}

Grammar::Grammar(std::vector<Symbol> nonterminals, std::vector<Symbol> terminals, Symbol start,
                 std::vector<ScatteredProduction> productions)
    : nonterminals_(std::move(nonterminals)), terminals_(std::move(terminals)), start_(start),
      productions_(std::move(productions))
{
    for (Symbol n : nonterminals_)
        if (!n.is_nonterminal())
            throw std::invalid_argument("'" + n.name() + "' declared as nonterminal has terminal kind");
    for (Symbol t : terminals_) {
        if (!t.is_terminal())
            throw std::invalid_argument("'" + t.name() + "' declared as terminal has nonterminal kind");
        auto clash = std::find_if(nonterminals_.begin(), nonterminals_.end(),
                                  [t](Symbol n) { return n.name() == t.name(); });
        if (clash != nonterminals_.end())
            throw std::invalid_argument("'" + t.name() + "' declared as both terminal and nonterminal");
    }
    if (std::find(nonterminals_.begin(), nonterminals_.end(), start_) == nonterminals_.end())
        throw std::invalid_argument("start symbol '" + start_.name() + "' is not a declared nonterminal");

    for (std::size_t i = 0; i < productions_.size(); ++i) {
        const auto& p = productions_[i];
        auto where = "production " + std::to_string(i + 1) + ": ";
        if (p.lhs.empty())
            throw std::invalid_argument(where + "empty left-hand side");
        if (p.lhs.size() != p.rhs.size())
            throw std::invalid_argument(where + "left and right sides differ in width");
        for (Symbol a : p.lhs) {
            if (!a.is_nonterminal() || !declares(a))
                throw std::invalid_argument(where + "'" + a.name() + "' is not a declared nonterminal");
        }
        for (const Form& x : p.rhs)
            for (Symbol s : x)
                if (!declares(s))
                    throw std::invalid_argument(where + "undeclared symbol '" + s.name() + "'");
    }
}

bool Grammar::declares(Symbol s) const
{
    const auto& alphabet = s.is_terminal() ? terminals_ : nonterminals_;
    return std::find(alphabet.begin(), alphabet.end(), s) != alphabet.end();
}

bool Grammar::is_erasing() const
{
    return std::any_of(productions_.begin(), productions_.end(),
                       [](const ScatteredProduction& p) { return p.is_erasing(); });
}

GrammarMetrics compute_metrics(const Grammar& g)
{
    GrammarMetrics m;
    m.nonterminal_count = g.nonterminals().size();
    m.terminal_count = g.terminals().size();
    m.production_count = g.productions().size();
    for (const auto& p : g.productions()) {
        m.width = std::max(m.width, p.width());
        if (!p.is_context_free())
            ++m.non_cf_production_count;
        m.is_erasing = m.is_erasing || p.is_erasing();
    }
    return m;
}

std::vector<std::string> validation_warnings(const Grammar& g)
{
    std::vector<std::string> out;
    const auto& ps = g.productions();
    for (std::size_t i = 0; i < ps.size(); ++i)
        for (std::size_t j = 0; j < i; ++j)
            if (ps[i] == ps[j]) {
                out.push_back("production " + std::to_string(i + 1) + " duplicates production " +
                              std::to_string(j + 1));
                break;
            }
    return out;
}

namespace {

struct RawProduction {
    std::size_t line;
    std::vector<std::vector<std::string>> lhs;
    std::vector<std::vector<std::string>> rhs;
};

// Parses "(c1, c2, ...)" starting at `pos`; advances `pos` past ')'.
std::vector<std::vector<std::string>> parse_tuple(std::string_view text, std::size_t& pos, std::size_t line)
{
    while (pos < text.size() && detail::is_space(text[pos]))
        ++pos;
    if (pos >= text.size() || text[pos] != '(')
        throw ParseError(line, "expected '('");
    auto close = text.find(')', pos);
    if (close == std::string_view::npos)
        throw ParseError(line, "missing ')'");
    auto inner = text.substr(pos + 1, close - pos - 1);
    pos = close + 1;

    std::vector<std::vector<std::string>> components;
    for (auto piece : detail::split(inner, ','))
        components.push_back(detail::tokens(piece));
    return components;
}

RawProduction parse_production_line(std::string_view body, std::size_t line)
{
    RawProduction raw{line, {}, {}};
    std::size_t pos = 0;
    raw.lhs = parse_tuple(body, pos, line);
    auto arrow = body.find("->", pos);
    if (arrow == std::string_view::npos || !detail::trim(body.substr(pos, arrow - pos)).empty())
        throw ParseError(line, "expected '->' between the two tuples");
    pos = arrow + 2;
    raw.rhs = parse_tuple(body, pos, line);
    if (!detail::trim(body.substr(pos)).empty())
        throw ParseError(line, "unexpected text after production");
    if (raw.lhs.size() != raw.rhs.size())
        throw ParseError(line, "left side has " + std::to_string(raw.lhs.size()) + " components, right side " +
                                   std::to_string(raw.rhs.size()));
    for (const auto& c : raw.lhs) {
        if (c.empty())
            throw ParseError(line, "empty lhs component");
        if (c.size() != 1)
            throw ParseError(line, "lhs component must be a single nonterminal");
    }
    for (const auto& c : raw.rhs) {
        if (c.empty())
            throw ParseError(line, "empty rhs component (use '@' for the empty string)");
        if (c.size() > 1 && std::find(c.begin(), c.end(), "@") != c.end())
            throw ParseError(line, "'@' must stand alone in a component");
    }
    return raw;
}

std::vector<Symbol> declare(const std::vector<std::string>& names, SymbolKind kind, std::size_t line)
{
    std::vector<Symbol> out;
    for (const auto& name : names) {
        if (!is_valid_token(name))
            throw ParseError(line, "invalid token '" + name + "'");
        Symbol s = Symbol::make(name, kind);
        if (std::find(out.begin(), out.end(), s) != out.end())
            throw ParseError(line, "symbol '" + name + "' declared twice");
        out.push_back(s);
    }
    return out;
}

} // namespace

Grammar parse_grammar(std::string_view text)
{
    std::optional<std::vector<Symbol>> nonterminals;
    std::optional<std::vector<Symbol>> terminals;
    std::optional<std::pair<std::string, std::size_t>> start;
    std::vector<RawProduction> raw;
    bool tagged = false;

    for (const auto& [line_no, line] : detail::content_lines(text)) {
        if (!tagged) {
            if (line != "scg")
                throw ParseError(line_no, "expected format tag 'scg'");
            tagged = true;
            continue;
        }
        auto [key, rest] = detail::split_key(line);
        if (key == "nonterminals") {
            if (nonterminals)
                throw ParseError(line_no, "duplicate 'nonterminals' line");
            nonterminals = declare(detail::tokens(rest), SymbolKind::nonterminal, line_no);
        } else if (key == "terminals") {
            if (terminals)
                throw ParseError(line_no, "duplicate 'terminals' line");
            terminals = declare(detail::tokens(rest), SymbolKind::terminal, line_no);
        } else if (key == "start") {
            auto toks = detail::tokens(rest);
            if (start)
                throw ParseError(line_no, "duplicate 'start' line");
            if (toks.size() != 1)
                throw ParseError(line_no, "start needs exactly one symbol");
            start.emplace(toks.front(), line_no);
        } else if (detail::starts_with_keyword(line, "prod")) {
            raw.push_back(parse_production_line(line.substr(4), line_no));
        } else {
            throw ParseError(line_no, "unrecognized line '" + std::string(line) + "'");
        }
    }
    if (!tagged)
        throw ParseError(0, "empty grammar file");
    if (!nonterminals)
        throw ParseError(0, "missing 'nonterminals' line");
    if (!terminals)
        throw ParseError(0, "missing 'terminals' line");
    if (!start)
        throw ParseError(0, "missing 'start' line");
    for (Symbol t : *terminals)
        for (Symbol n : *nonterminals)
            if (t.name() == n.name())
                throw ParseError(0, "'" + t.name() + "' declared as both terminal and nonterminal");

    auto resolve = [&](const std::string& name, std::size_t line) {
        for (Symbol n : *nonterminals)
            if (n.name() == name)
                return n;
        for (Symbol t : *terminals)
            if (t.name() == name)
                return t;
        throw ParseError(line, "undeclared symbol '" + name + "'");
    };

    Symbol start_symbol = resolve(start->first, start->second);
    if (!start_symbol.is_nonterminal())
        throw ParseError(start->second, "start symbol '" + start->first + "' is not a declared nonterminal");

    std::vector<ScatteredProduction> productions;
    for (const auto& r : raw) {
        ScatteredProduction p;
        for (const auto& c : r.lhs) {
            Symbol s = resolve(c.front(), r.line);
            if (!s.is_nonterminal())
                throw ParseError(r.line, "lhs symbol '" + c.front() + "' is not a nonterminal");
            p.lhs.push_back(s);
        }
        for (const auto& c : r.rhs) {
            Form x;
            if (c.front() != "@")
                for (const auto& tok : c)
                    x.push_back(resolve(tok, r.line));
            p.rhs.push_back(std::move(x));
        }
        productions.push_back(std::move(p));
    }
    return Grammar(std::move(*nonterminals), std::move(*terminals), start_symbol, std::move(productions));
}

std::string render_grammar(const Grammar& g)
{
    std::ostringstream out;
    auto list = [&](const std::vector<Symbol>& symbols) {
        for (Symbol s : symbols)
            out << ' ' << s.name();
        out << '\n';
    };
    out << "scg\n";
    out << "nonterminals:";
    list(g.nonterminals());
    out << "terminals:";
    list(g.terminals());
    out << "start: " << g.start().name() << '\n';
    for (const auto& p : g.productions()) {
        out << "prod (";
        for (std::size_t i = 0; i < p.lhs.size(); ++i)
            out << (i ? ", " : "") << p.lhs[i].name();
        out << ") -> (";
        for (std::size_t i = 0; i < p.rhs.size(); ++i)
            out << (i ? ", " : "") << to_string(p.rhs[i]);
        out << ")\n";
    }
    return out.str();
}

Form parse_form(const Grammar& g, std::string_view text)
{
    auto toks = detail::tokens(text);
    Form form;
    if (toks.size() == 1 && toks.front() == "@")
        return form;
    for (const auto& tok : toks) {
        if (tok == "@")
            throw std::invalid_argument("'@' must stand alone");
        auto match = [&](const std::vector<Symbol>& alphabet) -> std::optional<Symbol> {
            for (Symbol s : alphabet)
                if (s.name() == tok)
                    return s;
            return std::nullopt;
        };
        auto s = match(g.nonterminals());
        if (!s)
            s = match(g.terminals());
        if (!s)
            throw std::invalid_argument("undeclared symbol '" + tok + "'");
        form.push_back(*s);
    }
    return form;
}

} // namespace scg
