#include "doctest.h"
#include "support.hpp"

#include "scg/grammar.hpp"
#include "scg/showcase.hpp"

#include <string>

using namespace scg;
using scg::test::f;

namespace {

const char* example1_text = R"(scg
nonterminals: S A B C
terminals: a b c
start: S
prod (S) -> (A B C)
prod (A, B, C) -> (a A, b B, c C)
prod (A, B, C) -> (a, b, c)
)";

std::size_t error_line(const std::string& text)
{
    try {
        parse_grammar(text);
    } catch (const ParseError& e) {
        return e.line();
    }
    return 9999;
}

std::string error_text(const std::string& text)
{
    try {
        parse_grammar(text);
    } catch (const ParseError& e) {
        return e.what();
    }
    return {};
}

} // namespace

TEST_CASE("token syntax")
{
    CHECK(is_valid_token("S"));
    CHECK(is_valid_token("A''"));
    CHECK(is_valid_token("X_2"));
    CHECK_FALSE(is_valid_token("2X"));
    CHECK_FALSE(is_valid_token(""));
    CHECK_FALSE(is_valid_token("a-b"));
    CHECK_THROWS_AS(Symbol::terminal("@"), std::invalid_argument);
}

TEST_CASE("symbols compare by name and kind")
{
    CHECK(Symbol::terminal("a") == Symbol::terminal("a"));
    CHECK(Symbol::terminal("a") != Symbol::nonterminal("a"));
    CHECK(Symbol::nonterminal("A").name() == "A");
    CHECK(to_string(Form{}) == "@");
    CHECK(to_string(f("a B c")) == "a B c");
}

TEST_CASE("canonical word order is length first")
{
    CHECK(canonical_less(f("b"), f("a a")));
    CHECK(canonical_less(f("a b"), f("b a")));
    CHECK_FALSE(canonical_less(f("a"), f("a")));
}

TEST_CASE("parse example 1")
{
    auto g = parse_grammar(example1_text);
    CHECK(g.productions().size() == 3);
    CHECK(g.start() == Symbol::nonterminal("S"));
    CHECK(g == showcase::example1());
    auto m = compute_metrics(g);
    CHECK(m.nonterminal_count == 4);
    CHECK(m.terminal_count == 3);
    CHECK(m.production_count == 3);
    CHECK(m.non_cf_production_count == 2);
    CHECK(m.width == 3);
    CHECK_FALSE(m.is_erasing);
}

TEST_CASE("render reparses to the same grammar")
{
    auto g = parse_grammar(example1_text);
    CHECK(render_grammar(g) == example1_text);
    CHECK(parse_grammar(render_grammar(g)) == g);
}

TEST_CASE("erasing component")
{
    auto g = parse_grammar("scg\nnonterminals: S\nterminals:\nstart: S\nprod (S) -> (@)\n");
    REQUIRE(g.productions().size() == 1);
    CHECK(g.production(0).is_erasing());
    CHECK(g.is_erasing());
    CHECK(render_grammar(g).find("(S) -> (@)") != std::string::npos);
}

TEST_CASE("comments and blank lines are ignored")
{
    auto g = parse_grammar("# header\n\nscg\nnonterminals: S  # the start\nterminals: a\nstart: S\n\nprod (S) -> (a)\n");
    CHECK(g.productions().size() == 1);
}

TEST_CASE("parse errors carry line numbers")
{
    const std::string head = "scg\nnonterminals: S\nterminals: a\nstart: S\n";
    CHECK(error_line(head + "prod (S) -> (X)\n") == 5);
    CHECK(error_text(head + "prod (S) -> (X)\n").find("undeclared symbol 'X'") != std::string::npos);
    CHECK(error_line(head + "prod (S) -> a\n") == 5);
    CHECK(error_line(head + "prod (S, S) -> (a)\n") == 5);
    CHECK(error_text(head + "prod (, S) -> (a, a)\n").find("empty lhs component") != std::string::npos);
    CHECK(error_line(head + "prod (a) -> (a)\n") == 5);
    CHECK(error_line(head + "prod (S) -> (a @)\n") == 5);
    CHECK(error_line("scg\nnonterminals: S\nnonterminals: S\n") == 3);
    CHECK(error_line("grammar\n") == 1);
    CHECK(error_line("scg\nnonterminals: S\nterminals: a\nstart: a\n") == 4);
    CHECK(error_line("scg\nnonterminals: S S\nterminals: a\nstart: S\n") == 2);
    CHECK_THROWS_AS(parse_grammar(""), ParseError);
    CHECK_THROWS_AS(parse_grammar("scg\nterminals: a\nstart: S\n"), ParseError);
}

TEST_CASE("grammar constructor validates")
{
    const Symbol S = Symbol::nonterminal("S"), a = Symbol::terminal("a"), X = Symbol::nonterminal("X");
    CHECK_NOTHROW(Grammar({S}, {a}, S, {{{S}, {{a}}}}));
    CHECK_THROWS_AS(Grammar({S}, {a}, X, {}), std::invalid_argument);
    CHECK_THROWS_AS(Grammar({S}, {a}, S, {{{S}, {{X}}}}), std::invalid_argument);
    CHECK_THROWS_AS(Grammar({S}, {a}, S, {{{}, {}}}), std::invalid_argument);
    CHECK_THROWS_AS(Grammar({S}, {a}, S, {{{S, S}, {{a}}}}), std::invalid_argument);
    CHECK_THROWS_AS(Grammar({S}, {a}, S, {{{a}, {{a}}}}), std::invalid_argument);
}

TEST_CASE("duplicate productions are reported as warnings")
{
    auto g = parse_grammar("scg\nnonterminals: S\nterminals: a\nstart: S\nprod (S) -> (a)\nprod (S) -> (a)\n");
    auto w = validation_warnings(g);
    REQUIRE(w.size() == 1);
    CHECK(w[0].find("production 2") != std::string::npos);
    CHECK(validation_warnings(showcase::example1()).empty());
}

TEST_CASE("parse_form checks declarations")
{
    auto g = showcase::example1();
    CHECK(parse_form(g, "a B c") == f("a B c"));
    CHECK(parse_form(g, "@").empty());
    CHECK_THROWS_AS(parse_form(g, "a x"), std::invalid_argument);
}
