#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace scg::detail {

inline bool is_space(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; }

inline std::string_view trim(std::string_view s)
{
    while (!s.empty() && is_space(s.front()))
        s.remove_prefix(1);
    while (!s.empty() && is_space(s.back()))
        s.remove_suffix(1);
    return s;
}

inline std::vector<std::string> tokens(std::string_view s)
{
    std::vector<std::string> out;
    std::size_t i = 0;
    while (i < s.size()) {
        while (i < s.size() && is_space(s[i]))
            ++i;
        std::size_t j = i;
        while (j < s.size() && !is_space(s[j]))
            ++j;
        if (j > i)
            out.emplace_back(s.substr(i, j - i));
        i = j;
    }
    return out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep)
{
    std::vector<std::string_view> out;
    std::size_t from = 0;
    for (;;) {
        auto at = s.find(sep, from);
        out.push_back(s.substr(from, at == std::string_view::npos ? std::string_view::npos : at - from));
        if (at == std::string_view::npos)
            return out;
        from = at + 1;
    }
}

/// Non-blank lines with comments stripped and whitespace trimmed, tagged with
/// their 1-based line number.
inline std::vector<std::pair<std::size_t, std::string_view>> content_lines(std::string_view text)
{
    std::vector<std::pair<std::size_t, std::string_view>> out;
    std::size_t line_no = 0;
    for (auto line : split(text, '\n')) {
        ++line_no;
        if (auto hash = line.find('#'); hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (!line.empty())
            out.emplace_back(line_no, line);
    }
    return out;
}

/// "key: rest" -> {key, rest}; an empty key when there is no colon.
inline std::pair<std::string_view, std::string_view> split_key(std::string_view line)
{
    auto colon = line.find(':');
    if (colon == std::string_view::npos)
        return {{}, line};
    return {trim(line.substr(0, colon)), trim(line.substr(colon + 1))};
}

inline bool starts_with_keyword(std::string_view line, std::string_view keyword)
{
    if (!line.starts_with(keyword))
        return false;
    return line.size() == keyword.size() || is_space(line[keyword.size()]) || line[keyword.size()] == '(';
}

} // namespace scg::detail
