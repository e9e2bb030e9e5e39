#include "doctest.h"
#include "support.hpp"

#include "scg/geffert.hpp"

#include <random>

using namespace scg;
using namespace scg::geffert;
using scg::test::f;
using scg::test::repeat;

namespace {

GeffertGrammar g_append() { return parse_geffert("geffert\nterminals: a\nprod S' -> S' a\nprod S' -> @\n"); }
GeffertGrammar g_ab() { return parse_geffert("geffert\nterminals: a\nprod S' -> A S' a\nprod S' -> S' B\nprod S' -> @\n"); }

GeffertGrammar g_mirror()
{
    return parse_geffert("geffert\nterminals: a b\nprod S' -> A S' a\nprod S' -> C S' b\nprod S' -> S' B\n"
                         "prod S' -> S' D\nprod S' -> @\n");
}

std::vector<Form> forms_of(const std::vector<Successor<GeffertStep>>& s)
{
    std::vector<Form> out;
    for (const auto& x : s)
        out.push_back(x.form);
    return out;
}

} // namespace

TEST_CASE("parse and render")
{
    auto g = g_ab();
    REQUIRE(g.rules.size() == 3);
    CHECK(std::get<AppendTerminal>(g.rules[0]) == AppendTerminal{f("A"), Symbol::terminal("a")});
    CHECK(std::get<Bilateral>(g.rules[1]) == Bilateral{{}, f("B")});
    CHECK(std::holds_alternative<Erase>(g.rules[2]));
    CHECK(render_geffert(g) == "geffert\nterminals: a\nprod S' -> A S' a\nprod S' -> S' B\nprod S' -> @\n");
    CHECK(parse_geffert(render_geffert(g_mirror())) == g_mirror());
}

TEST_CASE("parse errors")
{
    CHECK_THROWS_AS(parse_geffert("scg\n"), ParseError);
    CHECK_THROWS_AS(parse_geffert("geffert\nterminals: a\nprod S' -> S' x\n"), ParseError);
    CHECK_THROWS_AS(parse_geffert("geffert\nterminals: a\nprod S' -> A a\n"), ParseError);
    CHECK_THROWS_AS(parse_geffert("geffert\nterminals: a\nprod S' -> S' S'\n"), ParseError);
    CHECK_THROWS_AS(parse_geffert("geffert\nterminals: A\n"), ParseError);
    try {
        parse_geffert("geffert\nterminals: a\nprod S' -> @\nprod A -> a\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line() == 4);
    }
}

TEST_CASE("validation")
{
    CHECK(validate_geffert(g_ab()).ok());
    CHECK(validate_geffert(g_ab()).warnings.empty());

    auto bad = parse_geffert("geffert\nterminals: a\nprod S' -> B S' B\nprod S' -> @\n");
    auto r = validate_geffert(bad);
    REQUIRE_FALSE(r.ok());
    CHECK(r.errors[0].find("rule 1") != std::string::npos);

    auto endless = parse_geffert("geffert\nterminals: a\nprod S' -> S' a\n");
    auto e = validate_geffert(endless);
    CHECK(e.ok());
    REQUIRE(e.warnings.size() == 1);
    CHECK(e.warnings[0].find("cannot terminate") != std::string::npos);

    GeffertGrammar undeclared{{Symbol::terminal("a")}, {AppendTerminal{{}, Symbol::terminal("b")}}};
    CHECK_FALSE(validate_geffert(undeclared).ok());
}

TEST_CASE("successors")
{
    auto g = g_ab();
    CHECK(forms_of(geffert_successors(g, f("S'"))) == std::vector<Form>{f("A S' a"), f("S' B"), f("")});
    auto ab = geffert_successors(g, f("A B a"));
    REQUIRE(ab.size() == 1);
    CHECK(ab[0].form == f("a"));
    CHECK(ab[0].step == GeffertStep{EraseAB{1}});
    CHECK(geffert_successors(g, f("A a B")).empty());
    CHECK(forms_of(geffert_successors(g_mirror(), f("C D A B"))) == std::vector<Form>{f("C D"), f("A B")});
}

TEST_CASE("apply_step and replay")
{
    auto g = g_ab();
    CHECK(apply_step(g, f("A S' a"), ApplyCf{1, 2}) == f("A S' B a"));
    CHECK_THROWS_AS(apply_step(g, f("A S' a"), ApplyCf{1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(apply_step(g, f("A S' a"), ApplyCf{9, 2}), std::invalid_argument);
    CHECK_THROWS_AS(apply_step(g, f("A a B"), EraseAB{1}), std::invalid_argument);
    CHECK_THROWS_AS(apply_step(g, f("A B"), EraseCD{1}), std::invalid_argument);

    GeffertTrace t{f("S'"), {ApplyCf{0, 1}, ApplyCf{1, 2}, ApplyCf{2, 2}, EraseAB{1}}};
    CHECK(replay(g, t) == f("a"));
    GeffertTrace broken{f("S'"), {ApplyCf{0, 1}, EraseAB{1}}};
    CHECK_THROWS_WITH_AS(replay(g, broken), doctest::Contains("step 2"), std::runtime_error);
}

TEST_CASE("bounded languages")
{
    EnumerationBounds b{4, std::nullopt, 100'000};
    b.max_word_length = 3;
    const std::vector<Form> upto3{f(""), f("a"), f("a a"), f("a a a")};
    CHECK(enumerate_geffert(g_append(), b).words == upto3);
    auto ab = enumerate_geffert(g_ab(), EnumerationBounds{10, std::nullopt, 100'000});
    CHECK(words_up_to(ab, 3) == upto3);
    auto erase = enumerate_geffert(parse_geffert("geffert\nterminals: a\nprod S' -> @\n"), EnumerationBounds{});
    CHECK(erase.words == std::vector<Form>{f("")});
}

TEST_CASE("find_geffert_trace")
{
    auto g = g_ab();
    auto t = find_geffert_trace(g, f("a"), EnumerationBounds{8, std::nullopt, 10'000});
    REQUIRE(t);
    CHECK(t->steps == std::vector<GeffertStep>{ApplyCf{0, 1}, ApplyCf{1, 2}, ApplyCf{2, 2}, EraseAB{1}});
    CHECK(replay(g, *t) == f("a"));

    auto empty = find_geffert_trace(g, f(""), EnumerationBounds{});
    REQUIRE(empty);
    CHECK(empty->steps == std::vector<GeffertStep>{ApplyCf{2, 1}});

    CHECK_FALSE(find_geffert_trace(g_append(), f("b"), EnumerationBounds{6, std::nullopt, 10'000}));
}

TEST_CASE("reachable forms keep the normal shape")
{
    CHECK(has_normal_shape(f("A C S' a B D b")));
    CHECK(has_normal_shape(f("A a C")));
    CHECK_FALSE(has_normal_shape(f("B A")));
    CHECK_FALSE(has_normal_shape(f("A S' C")));
    CHECK_FALSE(has_normal_shape(f("S' S'")));

    auto space = make_geffert_space(g_mirror(), EnumerationBounds{16, std::nullopt, 20'000});
    std::size_t bad = 0;
    space.run([&](GeffertSpace::NodeId, FormView form, const GeffertSpace::Node&) {
        bad += !has_normal_shape(form);
        return true;
    });
    CHECK(space.size() == 20'000);
    CHECK(bad == 0);
}

TEST_CASE("random derivations replay")
{
    std::mt19937 rng(11);
    auto g = g_mirror();
    for (int c = 0; c < 200; ++c) {
        GeffertTrace t{f("S'"), {}};
        Form form = t.start;
        for (int n = 0; n < 12; ++n) {
            auto next = geffert_successors(g, form);
            if (next.empty())
                break;
            auto& pick = next[std::uniform_int_distribution<std::size_t>(0, next.size() - 1)(rng)];
            t.steps.push_back(pick.step);
            form = pick.form;
        }
        CHECK(replay(g, t) == form);
        CHECK(has_normal_shape(form));
    }
}
