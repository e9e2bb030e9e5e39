#include "scg/checks.hpp"

#include "scg/three_nt.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

namespace scg::checks {
namespace {

std::size_t count(FormView form, Symbol s) { return static_cast<std::size_t>(std::count(form.begin(), form.end(), s)); }

std::string render_geffert_trace(const geffert::GeffertTrace& t)
{
    std::ostringstream out;
    out << "start: " << to_string(t.start) << '\n';
    for (const auto& step : t.steps)
        out << "step " << geffert::describe(step) << '\n';
    return out.str();
}

template <class Space, class Render, class Predicate>
CheckReport sweep(Space& space, Render render, Predicate holds)
{
    CheckReport report;
    std::optional<typename Space::NodeId> first;
    space.run([&](typename Space::NodeId id, FormView form, const typename Space::Node& node) {
        if (!holds(id, form, node)) {
            ++report.violations;
            if (!first)
                first = id;
        }
        return true;
    });
    report.visited = space.size();
    report.language = space.language();
    if (first) {
        report.witness = render(space.trace_to(*first));
        report.witness_form = to_string(space.form(*first));
    }
    return report;
}

} // namespace

CheckReport three_nt(const Grammar& g, const EnumerationBounds& bounds)
{
    const Symbol S = three_nt::sym_s(), A = three_nt::sym_a(), B = three_nt::sym_b();
    std::vector<Symbol> expected{S, A, B};
    auto actual = g.nonterminals();
    auto by_raw = [](Symbol x, Symbol y) { return x.raw() < y.raw(); };
    std::sort(expected.begin(), expected.end(), by_raw);
    std::sort(actual.begin(), actual.end(), by_raw);
    if (actual != expected || g.start() != S)
        throw std::invalid_argument("family three-nt needs nonterminals {S, A, B} and start S");

    enum class Role : std::uint8_t { other, init, final_ };
    std::vector<Role> roles;
    for (const auto& p : g.productions()) {
        if (p.lhs == std::vector<Symbol>{S})
            roles.push_back(Role::init);
        else if (p.lhs == std::vector<Symbol>{S, S, S, A})
            roles.push_back(Role::final_);
        else
            roles.push_back(Role::other);
    }

    auto space = make_derivation_space(g, bounds);
    std::vector<three_nt::CountingState> counts;
    return sweep(space, render_trace, [&](DerivationSpace::NodeId id, FormView form, const DerivationSpace::Node& node) {
        three_nt::CountingState cs;
        if (node.parent != DerivationSpace::no_parent) {
            cs = counts[node.parent];
            if (roles[node.label] == Role::init)
                ++cs.i;
            else if (roles[node.label] == Role::final_)
                ++cs.j;
        }
        counts.resize(std::max<std::size_t>(counts.size(), id + 1));
        counts[id] = cs;
        return three_nt::check_counting(form, cs);
    });
}

CheckReport lemma1_markers(const Grammar& g, const EnumerationBounds& bounds)
{
    const Symbol Y = Symbol::nonterminal("Y"), X2 = Symbol::nonterminal("X2"), X3 = Symbol::nonterminal("X3");
    auto space = make_derivation_space(g, bounds);
    return sweep(space, render_trace, [&](DerivationSpace::NodeId, FormView form, const DerivationSpace::Node&) {
        return count(form, Y) + count(form, X3) <= 1 && count(form, X2) <= 1;
    });
}

CheckReport geffert_shape(const geffert::GeffertGrammar& g, const EnumerationBounds& bounds)
{
    auto space = geffert::make_geffert_space(g, bounds);
    return sweep(space, render_geffert_trace, [&](geffert::GeffertSpace::NodeId, FormView form, const geffert::GeffertSpace::Node&) {
        return geffert::has_normal_shape(form) && count(form, geffert::s_prime()) <= 1;
    });
}

} // namespace scg::checks
