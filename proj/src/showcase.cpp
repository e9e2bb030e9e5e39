#include "scg/showcase.hpp"

#include <limits>
#include <optional>
#include <stdexcept>
#include <string>

namespace scg::showcase {
namespace {

// base^exp, or nullopt once it exceeds `cap`.
std::optional<std::uint64_t> bounded_pow(std::uint64_t base, std::uint64_t exp, std::uint64_t cap)
{
    std::uint64_t acc = 1;
    for (std::uint64_t i = 0; i < exp; ++i) {
        if (acc > cap / base)
            return std::nullopt;
        acc *= base;
    }
    if (acc > cap)
        return std::nullopt;
    return acc;
}

Form repeat(Symbol s, std::uint64_t n) { return Form(static_cast<std::size_t>(n), s); }

Form join(std::initializer_list<Form> parts)
{
    Form out;
    for (const auto& p : parts)
        out.insert(out.end(), p.begin(), p.end());
    return out;
}

} // namespace

Grammar example1()
{
    const Symbol S = Symbol::nonterminal("S"), A = Symbol::nonterminal("A"), B = Symbol::nonterminal("B"),
                 C = Symbol::nonterminal("C");
    const Symbol a = Symbol::terminal("a"), b = Symbol::terminal("b"), c = Symbol::terminal("c");
    return Grammar({S, A, B, C}, {a, b, c}, S,
                   {
                       {{S}, {{A, B, C}}},
                       {{A, B, C}, {{a, A}, {b, B}, {c, C}}},
                       {{A, B, C}, {{a}, {b}, {c}}},
                   });
}

void check_params(const ShowcaseParams& p)
{
    if (p.k < 2 || p.l < 2)
        throw std::invalid_argument("k and l must both be at least 2");
    if (p.k > 64 || !bounded_pow(p.l, p.k * p.k, max_materialized_length))
        throw std::invalid_argument("l^(k^2) exceeds the materialization cap of " +
                                    std::to_string(max_materialized_length));
}

Grammar lemma1(const ShowcaseParams& p)
{
    check_params(p);
    const std::uint64_t k = p.k, l = p.l;
    auto N = [](const char* name) { return Symbol::nonterminal(name); };
    const Symbol S = N("S"), A = N("A"), A1 = N("A'"), A2 = N("A''"), B = N("B"), C = N("C"), X = N("X"),
                 X2 = N("X2"), X3 = N("X3"), Y = N("Y"), Z = N("Z"), Z1 = N("Z'");
    const Symbol a = Symbol::terminal("a");

    const auto cap = max_materialized_length;
    std::vector<ScatteredProduction> ps{
        // direct words for n = 0, 1, 2
        {{S}, {repeat(a, l)}},
        {{S}, {repeat(a, *bounded_pow(l, k, cap))}},
        {{S}, {repeat(a, *bounded_pow(l, k * k, cap))}},
        {{S}, {join({{A2}, repeat(A, l - 1), {X2}, repeat(B, k * k - 3), {A1}, repeat(C, k * k - 1), {X, Y}})}},

        // first stage: grows the B block to k^n - 2 symbols
        {{A1, C, X, Y}, {repeat(B, k - 1), {A1}, {X}, join({repeat(C, k), {Y}})}},
        {{A1, X, Y}, {repeat(B, k - 1), {A1}, join({repeat(C, k - 1), {X, Y}})}},
        {{A1, X, Y}, {{Z}, {Z}, {Y}}},
        {{Z, C, Z, Y}, {{Z}, repeat(B, k - 1), {Z}, {Y}}},
        {{Z, Z, Y}, {{B}, repeat(B, k - 1), {X3}}},

        // second stage: each B multiplies the A block by l
        {{A2, A, X2, X3}, {repeat(a, l - 1), {A2}, join({{X2}, repeat(A, l)}), {X3}}},
        {{A2, X2, B, X3}, {repeat(a, l - 1), {A2}, join({repeat(A, l - 1), {X2}}), {X3}}},
        {{A2, X2, X3}, {{Z1}, {Z1}, {X3}}},
        {{Z1, A, Z1, X3}, {{Z1}, repeat(a, l - 1), {Z1}, {X3}}},
        {{Z1, Z1, X3}, {{a}, repeat(a, l - 1), repeat(a, l - 1)}},
    };
    return Grammar({S, A, A1, A2, B, C, X, X2, X3, Y, Z, Z1}, {a}, S, std::move(ps));
}

std::set<std::uint64_t> lemma1_expected_lengths(const ShowcaseParams& p, std::uint64_t max_len)
{
    if (p.k < 2 || p.l < 2)
        throw std::invalid_argument("k and l must both be at least 2");
    std::set<std::uint64_t> out;
    // exponent k^n grows until l^(k^n) passes max_len
    for (std::uint64_t exponent = 1;; exponent *= p.k) {
        auto value = bounded_pow(p.l, exponent, max_len);
        if (!value)
            break;
        out.insert(*value);
        if (exponent > std::numeric_limits<std::uint64_t>::max() / p.k)
            break;
    }
    return out;
}

} // namespace scg::showcase
