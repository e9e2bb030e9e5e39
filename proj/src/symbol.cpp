#include "scg/symbol.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <unordered_map>

namespace scg {
namespace {

// Process-wide name table. Names are never removed, so references handed out
// by Symbol::name() stay valid.
class Interner {
public:
    std::uint32_t intern(std::string_view name)
    {
        std::lock_guard lock(mutex_);
        if (auto it = ids_.find(std::string(name)); it != ids_.end())
            return it->second;
        auto id = static_cast<std::uint32_t>(names_.size());
        names_.emplace_back(name);
        ids_.emplace(names_.back(), id);
        return id;
    }

    const std::string& name(std::uint32_t id)
    {
        std::lock_guard lock(mutex_);
        return names_[id];
    }

private:
    std::mutex mutex_;
    std::deque<std::string> names_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

Interner& interner()
{
    static Interner instance;
    return instance;
}

} // namespace

bool is_valid_token(std::string_view token)
{
    if (token.empty() || !std::isalpha(static_cast<unsigned char>(token.front())))
        return false;
    return std::all_of(token.begin() + 1, token.end(), [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
    });
}

Symbol Symbol::make(std::string_view name, SymbolKind kind)
{
    if (!is_valid_token(name))
        throw std::invalid_argument("invalid symbol token '" + std::string(name) + "'");
    return Symbol((interner().intern(name) << 1) | static_cast<std::uint32_t>(kind));
}

const std::string& Symbol::name() const { return interner().name(bits_ >> 1); }

bool symbol_less(Symbol a, Symbol b)
{
    if (a.raw() >> 1 == b.raw() >> 1)
        return a.kind() < b.kind();
    return a.name() < b.name();
}

std::size_t FormHash::operator()(FormView form) const noexcept
{
    std::uint64_t h = 1469598103934665603ull;
    for (Symbol s : form) {
        h ^= s.raw();
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
}

bool is_terminal_word(FormView form)
{
    return std::all_of(form.begin(), form.end(), [](Symbol s) { return s.is_terminal(); });
}

bool terminals_embed(FormView form, FormView word)
{
    std::size_t at = 0;
    for (Symbol s : form) {
        if (!s.is_terminal())
            continue;
        while (at < word.size() && word[at] != s)
            ++at;
        if (at == word.size())
            return false;
        ++at;
    }
    return true;
}

bool canonical_less(FormView a, FormView b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), symbol_less);
}

std::string to_string(FormView form)
{
    if (form.empty())
        return "@";
    std::string out;
    for (Symbol s : form) {
        if (!out.empty())
            out += ' ';
        out += s.name();
    }
    return out;
}

} // namespace scg
