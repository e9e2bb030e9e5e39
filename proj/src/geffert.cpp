#include "scg/geffert.hpp"

#include "scg/grammar.hpp"
#include "text_util.hpp"

#include <algorithm>
#include <memory>
#include <sstream>
#include <unordered_set>

namespace scg::geffert {

Symbol s_prime()
{
    static const Symbol s = Symbol::nonterminal("S'");
    return s;
}
Symbol sym_a()
{
    static const Symbol s = Symbol::nonterminal("A");
    return s;
}
Symbol sym_b()
{
    static const Symbol s = Symbol::nonterminal("B");
    return s;
}
Symbol sym_c()
{
    static const Symbol s = Symbol::nonterminal("C");
    return s;
}
Symbol sym_d()
{
    static const Symbol s = Symbol::nonterminal("D");
    return s;
}

namespace {

bool is_fixed_name(std::string_view name)
{
    return name == "S'" || name == "A" || name == "B" || name == "C" || name == "D";
}

std::string rule_text(const CfRule& rule)
{
    return std::visit(
        [](const auto& r) -> std::string {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, Erase>) {
                return "S' -> @";
            } else {
                std::string out = "S' ->";
                for (Symbol s : r.u)
                    out += " " + s.name();
                out += " S'";
                if constexpr (std::is_same_v<R, AppendTerminal>) {
                    out += " " + r.a.name();
                } else {
                    for (Symbol s : r.v)
                        out += " " + s.name();
                }
                return out;
            }
        },
        rule);
}

Form right_side(const CfRule& rule)
{
    return std::visit(
        [](const auto& r) -> Form {
            using R = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<R, Erase>) {
                return {};
            } else {
                Form out = r.u;
                out.push_back(s_prime());
                if constexpr (std::is_same_v<R, AppendTerminal>)
                    out.push_back(r.a);
                else
                    out.insert(out.end(), r.v.begin(), r.v.end());
                return out;
            }
        },
        rule);
}

} // namespace

ValidationReport validate_geffert(const GeffertGrammar& g)
{
    ValidationReport report;
    std::unordered_set<Symbol> terminals;
    for (Symbol t : g.terminals) {
        if (!t.is_terminal())
            report.errors.push_back("'" + t.name() + "' listed as terminal is a nonterminal");
        else if (is_fixed_name(t.name()))
            report.errors.push_back("terminal '" + t.name() + "' clashes with a fixed nonterminal");
        if (!terminals.insert(t).second)
            report.errors.push_back("terminal '" + t.name() + "' declared twice");
    }

    auto check_side = [&](std::size_t k, const Form& side, Symbol x, Symbol y, const char* what) {
        for (Symbol s : side)
            if (s != x && s != y)
                report.errors.push_back("rule " + std::to_string(k + 1) + " (" + rule_text(g.rules[k]) + "): " +
                                        what + " contains '" + s.name() + "'");
    };

    bool has_erase = false;
    for (std::size_t k = 0; k < g.rules.size(); ++k) {
        const auto& rule = g.rules[k];
        if (const auto* r = std::get_if<AppendTerminal>(&rule)) {
            check_side(k, r->u, sym_a(), sym_c(), "u");
            if (!terminals.contains(r->a))
                report.errors.push_back("rule " + std::to_string(k + 1) + " (" + rule_text(rule) +
                                        "): '" + r->a.name() + "' is not a declared terminal");
        } else if (const auto* r = std::get_if<Bilateral>(&rule)) {
            check_side(k, r->u, sym_a(), sym_c(), "u");
            check_side(k, r->v, sym_b(), sym_d(), "v");
        } else {
            has_erase = true;
        }
        for (std::size_t j = 0; j < k; ++j)
            if (g.rules[j] == rule) {
                report.warnings.push_back("rule " + std::to_string(k + 1) + " duplicates rule " +
                                          std::to_string(j + 1));
                break;
            }
    }
    if (!has_erase)
        report.warnings.push_back("cannot terminate: no S' -> @ rule");
    return report;
}

std::string describe(const GeffertStep& step)
{
    return std::visit(
        [](const auto& s) -> std::string {
            using S = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<S, ApplyCf>)
                return "cf " + std::to_string(s.rule + 1) + " @ " + std::to_string(s.position);
            else if constexpr (std::is_same_v<S, EraseAB>)
                return "erase-ab @ " + std::to_string(s.position);
            else
                return "erase-cd @ " + std::to_string(s.position);
        },
        step);
}

Form apply_step(const GeffertGrammar& g, FormView form, const GeffertStep& step)
{
    auto splice = [&](std::size_t at, std::size_t count, const Form& with) {
        Form out(form.begin(), form.begin() + (at - 1));
        out.insert(out.end(), with.begin(), with.end());
        out.insert(out.end(), form.begin() + (at - 1 + count), form.end());
        return out;
    };
    if (const auto* s = std::get_if<ApplyCf>(&step)) {
        if (s->rule >= g.rules.size())
            throw std::invalid_argument("no rule " + std::to_string(s->rule + 1));
        if (s->position < 1 || s->position > form.size() || form[s->position - 1] != s_prime())
            throw std::invalid_argument("position " + std::to_string(s->position) + " does not hold S'");
        return splice(s->position, 1, right_side(g.rules[s->rule]));
    }
    const bool ab = std::holds_alternative<EraseAB>(step);
    const std::size_t at = ab ? std::get<EraseAB>(step).position : std::get<EraseCD>(step).position;
    const Symbol left = ab ? sym_a() : sym_c();
    const Symbol right = ab ? sym_b() : sym_d();
    if (at < 1 || at + 1 > form.size() || form[at - 1] != left || form[at] != right)
        throw std::invalid_argument("positions " + std::to_string(at) + "," + std::to_string(at + 1) +
                                    " do not hold " + left.name() + right.name());
    return splice(at, 2, {});
}

Form replay(const GeffertGrammar& g, const GeffertTrace& trace)
{
    Form form = trace.start;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        try {
            form = apply_step(g, form, trace.steps[k]);
        } catch (const std::invalid_argument& e) {
            throw std::runtime_error("step " + std::to_string(k + 1) + ": " + e.what());
        }
    }
    return form;
}

std::vector<Successor<GeffertStep>> geffert_successors(const GeffertGrammar& g, FormView form)
{
    std::vector<Successor<GeffertStep>> out;
    std::unordered_set<Form, FormHash> seen;
    auto emit = [&](GeffertStep step) {
        Form next = apply_step(g, form, step);
        if (seen.insert(next).second)
            out.push_back({step, std::move(next)});
    };
    for (std::size_t k = 0; k < g.rules.size(); ++k)
        for (std::size_t p = 0; p < form.size(); ++p)
            if (form[p] == s_prime())
                emit(ApplyCf{k, p + 1});
    for (std::size_t p = 0; p + 1 < form.size(); ++p)
        if (form[p] == sym_a() && form[p + 1] == sym_b())
            emit(EraseAB{p + 1});
    for (std::size_t p = 0; p + 1 < form.size(); ++p)
        if (form[p] == sym_c() && form[p + 1] == sym_d())
            emit(EraseCD{p + 1});
    return out;
}

GeffertSpace make_geffert_space(const GeffertGrammar& g, EnumerationBounds bounds)
{
    const auto rule_count = static_cast<std::uint32_t>(g.rules.size());
    auto owned = std::make_shared<const GeffertGrammar>(g);
    GeffertSpace::Expand expand = [owned](FormView f) { return geffert_successors(*owned, f); };
    auto label = [rule_count](const GeffertStep& s) -> std::uint32_t {
        if (const auto* cf = std::get_if<ApplyCf>(&s))
            return static_cast<std::uint32_t>(cf->rule);
        return std::holds_alternative<EraseAB>(s) ? rule_count : rule_count + 1;
    };
    return GeffertSpace(Form{s_prime()}, expand, emit_from<GeffertStep>(expand, label), bounds, false);
}

BoundedLanguage enumerate_geffert(const GeffertGrammar& g, const EnumerationBounds& bounds)
{
    auto space = make_geffert_space(g, bounds);
    space.run();
    return space.language();
}

std::optional<GeffertTrace> find_geffert_trace(const GeffertGrammar& g, FormView word,
                                               const EnumerationBounds& bounds)
{
    EnumerationBounds effective = bounds;
    effective.max_word_length = word.size();
    auto space = make_geffert_space(g, effective);
    space.set_filter([word](FormView f) { return terminals_embed(f, word); });
    std::optional<GeffertSpace::NodeId> hit;
    space.run([&](GeffertSpace::NodeId id, FormView f, const GeffertSpace::Node&) {
        if (std::equal(f.begin(), f.end(), word.begin(), word.end())) {
            hit = id;
            return false;
        }
        return true;
    });
    if (!hit)
        return std::nullopt;
    return space.trace_to(*hit);
}

bool has_normal_shape(FormView form)
{
    // 0: in {A,C}*, 1: after S', 2: in {B,D}*
    int phase = 0;
    for (Symbol s : form) {
        if (s.is_terminal())
            continue;
        if (s == sym_a() || s == sym_c()) {
            if (phase != 0)
                return false;
        } else if (s == s_prime()) {
            if (phase != 0)
                return false;
            phase = 1;
        } else if (s == sym_b() || s == sym_d()) {
            phase = 2;
        } else {
            return false;
        }
    }
    return true;
}

GeffertGrammar parse_geffert(std::string_view text)
{
    GeffertGrammar g;
    bool tagged = false;
    bool have_terminals = false;
    struct RawRule {
        std::size_t line;
        std::vector<std::string> rhs;
    };
    std::vector<RawRule> raw;

    for (const auto& [line_no, line] : detail::content_lines(text)) {
        if (!tagged) {
            if (line != "geffert")
                throw ParseError(line_no, "expected format tag 'geffert'");
            tagged = true;
            continue;
        }
        if (detail::starts_with_keyword(line, "prod")) {
            auto toks = detail::tokens(line.substr(4));
            if (toks.size() < 2 || toks[0] != "S'" || toks[1] != "->")
                throw ParseError(line_no, "expected \"prod S' -> ...\"");
            toks.erase(toks.begin(), toks.begin() + 2);
            if (toks.empty())
                throw ParseError(line_no, "empty right-hand side (use '@')");
            raw.push_back({line_no, std::move(toks)});
            continue;
        }
        auto [key, rest] = detail::split_key(line);
        if (key != "terminals")
            throw ParseError(line_no, "unrecognized line '" + std::string(line) + "'");
        if (have_terminals)
            throw ParseError(line_no, "duplicate 'terminals' line");
        have_terminals = true;
        for (const auto& name : detail::tokens(rest)) {
            if (!is_valid_token(name))
                throw ParseError(line_no, "invalid token '" + name + "'");
            if (is_fixed_name(name))
                throw ParseError(line_no, "terminal '" + name + "' clashes with a fixed nonterminal");
            Symbol t = Symbol::terminal(name);
            if (std::find(g.terminals.begin(), g.terminals.end(), t) != g.terminals.end())
                throw ParseError(line_no, "terminal '" + name + "' declared twice");
            g.terminals.push_back(t);
        }
    }
    if (!tagged)
        throw ParseError(0, "empty grammar file");
    if (!have_terminals)
        throw ParseError(0, "missing 'terminals' line");

    for (const auto& r : raw) {
        if (r.rhs.size() == 1 && r.rhs.front() == "@") {
            g.rules.emplace_back(Erase{});
            continue;
        }
        Form u, v;
        bool seen_s = false;
        for (const auto& tok : r.rhs) {
            Symbol s;
            if (tok == "@")
                throw ParseError(r.line, "'@' must stand alone");
            if (is_fixed_name(tok)) {
                s = Symbol::nonterminal(tok);
            } else {
                auto it = std::find_if(g.terminals.begin(), g.terminals.end(),
                                       [&](Symbol t) { return t.name() == tok; });
                if (it == g.terminals.end())
                    throw ParseError(r.line, "undeclared symbol '" + tok + "'");
                s = *it;
            }
            if (s == s_prime()) {
                if (seen_s)
                    throw ParseError(r.line, "S' occurs more than once");
                seen_s = true;
                continue;
            }
            (seen_s ? v : u).push_back(s);
        }
        if (!seen_s)
            throw ParseError(r.line, "right-hand side must contain S' (or be '@')");
        if (v.size() == 1 && v.front().is_terminal())
            g.rules.emplace_back(AppendTerminal{std::move(u), v.front()});
        else
            g.rules.emplace_back(Bilateral{std::move(u), std::move(v)});
    }
    return g;
}

std::string render_geffert(const GeffertGrammar& g)
{
    std::ostringstream out;
    out << "geffert\nterminals:";
    for (Symbol t : g.terminals)
        out << ' ' << t.name();
    out << '\n';
    for (const auto& rule : g.rules)
        out << "prod " << rule_text(rule) << '\n';
    return out.str();
}

} // namespace scg::geffert
