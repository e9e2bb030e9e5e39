#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace scg {

enum class SymbolKind : std::uint8_t { terminal = 0, nonterminal = 1 };

/// Interned grammar symbol. Two symbols compare equal iff name and kind match;
/// the 32-bit handle keeps sentential forms compact and cheap to hash.
class Symbol {
public:
    Symbol() = default;

    static Symbol terminal(std::string_view name) { return make(name, SymbolKind::terminal); }
    static Symbol nonterminal(std::string_view name) { return make(name, SymbolKind::nonterminal); }
    static Symbol make(std::string_view name, SymbolKind kind);

    const std::string& name() const;
    SymbolKind kind() const { return static_cast<SymbolKind>(bits_ & 1u); }
    bool is_terminal() const { return kind() == SymbolKind::terminal; }
    bool is_nonterminal() const { return kind() == SymbolKind::nonterminal; }
    std::uint32_t raw() const { return bits_; }

    friend bool operator==(Symbol, Symbol) = default;

private:
    explicit Symbol(std::uint32_t bits) : bits_(bits) {}
    std::uint32_t bits_ = 0;
};

/// Token syntax: alphabetic first character, then alphanumerics, '_' or '\''.
bool is_valid_token(std::string_view token);

/// Orders by name, then terminals before nonterminals.
bool symbol_less(Symbol a, Symbol b);

using Form = std::vector<Symbol>;
using FormView = std::span<const Symbol>;

struct FormHash {
    std::size_t operator()(FormView form) const noexcept;
    std::size_t operator()(const Form& form) const noexcept { return (*this)(FormView(form)); }
};

bool is_terminal_word(FormView form);

/// The terminals of `form`, in order, form a subsequence of `word`.
bool terminals_embed(FormView form, FormView word);

/// Canonical word order: length first, then token-wise lexicographic by name.
bool canonical_less(FormView a, FormView b);

/// Whitespace-separated tokens, `@` for the empty form.
std::string to_string(FormView form);

} // namespace scg

template <>
struct std::hash<scg::Symbol> {
    std::size_t operator()(scg::Symbol s) const noexcept { return std::hash<std::uint32_t>{}(s.raw()); }
};
