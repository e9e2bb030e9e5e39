#include "scg/three_nt.hpp"

#include <algorithm>
#include <array>
#include <sstream>
#include <stdexcept>

namespace scg::three_nt {

Symbol sym_s()
{
    static const Symbol s = Symbol::nonterminal("S");
    return s;
}
Symbol sym_a() { return geffert::sym_a(); }
Symbol sym_b() { return geffert::sym_b(); }

namespace {

Form sequence(std::initializer_list<Symbol> symbols) { return Form(symbols); }

Form concat(std::initializer_list<Form> parts)
{
    Form out;
    for (const auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

ScatteredProduction nine_wide(std::initializer_list<Symbol> lhs, Form middle_left)
{
    // rhs (lambda, lambda, lambda, middle_left, S, S, lambda, lambda, lambda)
    ScatteredProduction p;
    p.lhs = lhs;
    p.rhs = {{}, {}, {}, std::move(middle_left), {sym_s()}, {sym_s()}, {}, {}, {}};
    return p;
}

} // namespace

Form encode(FormView s)
{
    const Symbol A = sym_a(), B = sym_b();
    Form out;
    out.reserve(s.size() * 4);
    for (Symbol x : s) {
        if (x.is_terminal()) {
            out.insert(out.end(), {A, x, B, B});
        } else if (x == geffert::sym_a()) {
            out.insert(out.end(), {A, B, B});
        } else if (x == geffert::sym_b()) {
            out.insert(out.end(), {B, B, A});
        } else if (x == geffert::sym_c() || x == geffert::sym_d()) {
            out.insert(out.end(), {B, A, B});
        } else {
            throw std::invalid_argument("'" + x.name() + "' is outside the encoding domain");
        }
    }
    return out;
}

std::string to_string(const Origin& origin)
{
    auto rule = [&] { return std::to_string(origin.source_rule.value_or(0) + 1); };
    switch (origin.kind) {
    case OriginKind::init:
        return "init";
    case OriginKind::cf_terminal:
        return "cf-a " + rule();
    case OriginKind::cf_bilateral:
        return "cf-v " + rule();
    case OriginKind::erase_ab:
        return "erase-ab";
    case OriginKind::erase_cd:
        return "erase-cd";
    case OriginKind::unpack_keep:
        return "unpack-keep";
    case OriginKind::unpack_drop:
        return "unpack-drop";
    case OriginKind::final_:
        return "final";
    }
    return "?";
}

std::size_t TransformOutput::index_of(OriginKind kind) const
{
    for (std::size_t k = 0; k < provenance.size(); ++k)
        if (provenance[k].kind == kind)
            return k;
    throw std::logic_error("transform output lacks origin " + to_string(Origin{kind, std::nullopt}));
}

std::optional<std::size_t> TransformOutput::index_for_rule(std::size_t rule) const
{
    for (std::size_t k = 0; k < provenance.size(); ++k)
        if (provenance[k].source_rule == rule)
            return k;
    return std::nullopt;
}

TransformOutput transform(const geffert::GeffertGrammar& g)
{
    if (auto report = geffert::validate_geffert(g); !report.ok())
        throw std::invalid_argument("invalid source grammar: " + report.errors.front());
    for (Symbol t : g.terminals)
        if (t.name() == sym_s().name())
            throw std::invalid_argument("terminal 'S' collides with the transformed start symbol");

    const Symbol S = sym_s(), A = sym_a(), B = sym_b();
    std::vector<ScatteredProduction> productions;
    std::vector<Origin> provenance;

    productions.push_back({{S}, {sequence({S, B, B, A, S, A, B, B, S, A})}});
    provenance.push_back({OriginKind::init, std::nullopt});

    auto middle = [&](const Form& left, const Form& right) {
        return ScatteredProduction{{S, S, S}, {{S}, concat({encode(left), {S}, encode(right)}), {S}}};
    };
    for (std::size_t k = 0; k < g.rules.size(); ++k)
        if (const auto* r = std::get_if<geffert::AppendTerminal>(&g.rules[k])) {
            productions.push_back(middle(r->u, {r->a}));
            provenance.push_back({OriginKind::cf_terminal, k});
        }
    for (std::size_t k = 0; k < g.rules.size(); ++k)
        if (const auto* r = std::get_if<geffert::Bilateral>(&g.rules[k])) {
            productions.push_back(middle(r->u, r->v));
            provenance.push_back({OriginKind::cf_bilateral, k});
        }

    productions.push_back(nine_wide({S, A, B, B, S, B, B, A, S}, {S}));
    provenance.push_back({OriginKind::erase_ab, std::nullopt});
    productions.push_back(nine_wide({S, B, A, B, S, B, A, B, S}, {S}));
    provenance.push_back({OriginKind::erase_cd, std::nullopt});
    productions.push_back(nine_wide({S, B, B, A, S, A, B, B, S}, sequence({S, B, B, A})));
    provenance.push_back({OriginKind::unpack_keep, std::nullopt});
    productions.push_back(nine_wide({S, B, B, A, S, A, B, B, S}, {S}));
    provenance.push_back({OriginKind::unpack_drop, std::nullopt});
    productions.push_back({{S, S, S, A}, {{}, {}, {}, {}}});
    provenance.push_back({OriginKind::final_, std::nullopt});

    return TransformOutput{Grammar({S, A, B}, g.terminals, S, std::move(productions)), std::move(provenance)};
}

std::string render_provenance(const TransformOutput& out)
{
    std::ostringstream text;
    for (std::size_t k = 0; k < out.provenance.size(); ++k)
        text << k + 1 << ": " << to_string(out.provenance[k]) << '\n';
    return text.str();
}

namespace {

// Builds the transformed derivation while tracking the current form.
class Simulation {
public:
    explicit Simulation(const Grammar& g) : g_(g), form_{sym_s()} { trace_.start = form_; }

    void apply(std::size_t production, std::vector<std::size_t> positions)
    {
        DerivationStep step{production, std::move(positions)};
        form_ = apply_step(form_, g_.production(production), step);
        trace_.steps.push_back(std::move(step));
    }

    /// 1-based positions of the three S symbols.
    std::array<std::size_t, 3> s_positions() const
    {
        std::array<std::size_t, 3> out{};
        std::size_t found = 0;
        for (std::size_t p = 0; p < form_.size(); ++p)
            if (form_[p] == sym_s()) {
                if (found == 3)
                    throw std::logic_error("simulated form has more than three S");
                out[found++] = p + 1;
            }
        if (found != 3)
            throw std::logic_error("simulated form has fewer than three S");
        return out;
    }

    const Form& form() const { return form_; }
    DerivationTrace take() { return std::move(trace_); }

private:
    const Grammar& g_;
    Form form_;
    DerivationTrace trace_;
};

} // namespace

DerivationTrace simulate(const geffert::GeffertGrammar& g, const TransformOutput& out,
                         const geffert::GeffertTrace& t)
{
    if (t.start != Form{geffert::s_prime()})
        throw std::invalid_argument("source trace must start from S'");
    Form word;
    try {
        word = geffert::replay(g, t);
    } catch (const std::exception& e) {
        throw std::invalid_argument(std::string("source trace does not replay: ") + e.what());
    }
    if (!is_terminal_word(word))
        throw std::invalid_argument("source trace does not end in a terminal word");

    std::vector<std::size_t> cf_productions;
    std::vector<bool> erasures_ab;
    for (const auto& step : t.steps) {
        if (const auto* cf = std::get_if<geffert::ApplyCf>(&step)) {
            if (auto k = out.index_for_rule(cf->rule))
                cf_productions.push_back(*k);
        } else {
            erasures_ab.push_back(std::holds_alternative<geffert::EraseAB>(step));
        }
    }

    Simulation sim(out.grammar);
    sim.apply(out.index_of(OriginKind::init), {1});

    for (std::size_t k : cf_productions) {
        auto [s1, s2, s3] = sim.s_positions();
        sim.apply(k, {s1, s2, s3});
    }

    // Unpack the ABB end marker, then each encoded terminal right to left; the
    // last unit goes through the marker-dropping production.
    const std::size_t units = word.size() + 1;
    for (std::size_t u = 0; u < units; ++u) {
        auto [s1, s2, s3] = sim.s_positions();
        const bool marker = u == 0;
        if (s3 < (marker ? 4u : 5u))
            throw std::logic_error("no encoded unit before the third S");
        const std::size_t a_pos = marker ? s3 - 3 : s3 - 4;
        const auto kind = u + 1 == units ? OriginKind::unpack_drop : OriginKind::unpack_keep;
        sim.apply(out.index_of(kind), {s1, s1 + 1, s1 + 2, s1 + 3, s2, a_pos, s3 - 2, s3 - 1, s3});
    }

    // Outermost pair first: the reverse of the source erasure order.
    for (auto it = erasures_ab.rbegin(); it != erasures_ab.rend(); ++it) {
        auto [s1, s2, s3] = sim.s_positions();
        const auto kind = *it ? OriginKind::erase_ab : OriginKind::erase_cd;
        sim.apply(out.index_of(kind), {s1, s1 + 1, s1 + 2, s1 + 3, s2, s3 - 3, s3 - 2, s3 - 1, s3});
    }

    auto [s1, s2, s3] = sim.s_positions();
    sim.apply(out.index_of(OriginKind::final_), {s1, s2, s3, sim.form().size()});

    if (sim.form() != word)
        throw std::logic_error("simulation ended in '" + scg::to_string(sim.form()) + "' instead of '" +
                               scg::to_string(word) + "'");
    return sim.take();
}

DerivationTrace simulate(const geffert::GeffertGrammar& g, const geffert::GeffertTrace& t)
{
    return simulate(g, transform(g), t);
}

bool check_counting(FormView form, CountingState cs)
{
    std::size_t a = 0, b = 0, s = 0;
    for (Symbol x : form) {
        if (x == sym_a())
            ++a;
        else if (x == sym_b())
            ++b;
        else if (x == sym_s())
            ++s;
    }
    if (b % 2 != 0)
        return false;
    const auto k = static_cast<long long>(b / 2);
    const auto i = static_cast<long long>(cs.i);
    const auto j = static_cast<long long>(cs.j);
    return static_cast<long long>(a) == k + i - j && static_cast<long long>(s) == 1 + 2 * i - 3 * j;
}

} // namespace scg::three_nt
