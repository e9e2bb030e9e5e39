#pragma once

#include "scg/grammar.hpp"

#include <sstream>
#include <string>

namespace scg::test {

// Single-letter lowercase tokens are terminals, everything else nonterminal.
inline Form f(const std::string& text)
{
    Form out;
    std::istringstream in(text);
    for (std::string tok; in >> tok;) {
        if (tok == "@")
            continue;
        const bool terminal = tok.size() == 1 && tok[0] >= 'a' && tok[0] <= 'z';
        out.push_back(terminal ? Symbol::terminal(tok) : Symbol::nonterminal(tok));
    }
    return out;
}

inline Form repeat(const std::string& tok, std::size_t n) { return Form(n, Symbol::terminal(tok)); }

} // namespace scg::test
