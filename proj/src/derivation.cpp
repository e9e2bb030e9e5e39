#include "scg/derivation.hpp"

#include "text_util.hpp"

#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

namespace scg {

ReplayError::ReplayError(std::size_t step, const std::string& reason)
    : std::runtime_error("step " + std::to_string(step) + ": " + reason), step_(step)
{
}

std::vector<DerivationStep> find_applications(FormView form, const ScatteredProduction& p)
{
    std::vector<DerivationStep> out;
    const std::size_t n = p.width();
    if (n == 0 || n > form.size())
        return out;
    std::vector<std::size_t> pos; // 0-based while searching
    pos.reserve(n);

    // Iterative backtracking over increasing index tuples.
    std::size_t next = 0;
    for (;;) {
        const std::size_t i = pos.size();
        if (i == n) {
            DerivationStep step;
            for (std::size_t q : pos)
                step.positions.push_back(q + 1);
            out.push_back(std::move(step));
            next = pos.back() + 1;
            pos.pop_back();
            continue;
        }
        std::size_t q = next;
        const std::size_t last = form.size() - (n - i); // leave room for the rest
        while (q <= last && form[q] != p.lhs[i])
            ++q;
        if (q <= last && q < form.size()) {
            pos.push_back(q);
            next = q + 1;
        } else {
            if (pos.empty())
                break;
            next = pos.back() + 1;
            pos.pop_back();
        }
    }
    return out;
}

Form apply_step(FormView form, const ScatteredProduction& p, const DerivationStep& step)
{
    const auto& pos = step.positions;
    if (pos.size() != p.width())
        throw InvalidStep("expected " + std::to_string(p.width()) + " positions, got " +
                          std::to_string(pos.size()));
    for (std::size_t i = 0; i < pos.size(); ++i) {
        if (pos[i] < 1 || pos[i] > form.size())
            throw InvalidStep("position " + std::to_string(pos[i]) + " out of range 1.." +
                              std::to_string(form.size()));
        if (i > 0 && pos[i] <= pos[i - 1])
            throw InvalidStep("positions are not strictly increasing");
        if (form[pos[i] - 1] != p.lhs[i])
            throw InvalidStep("position " + std::to_string(pos[i]) + " holds '" + form[pos[i] - 1].name() +
                              "', expected '" + p.lhs[i].name() + "'");
    }
    Form out;
    std::size_t from = 0;
    for (std::size_t i = 0; i < pos.size(); ++i) {
        out.insert(out.end(), form.begin() + from, form.begin() + (pos[i] - 1));
        out.insert(out.end(), p.rhs[i].begin(), p.rhs[i].end());
        from = pos[i];
    }
    out.insert(out.end(), form.begin() + from, form.end());
    return out;
}

namespace {

// Distinct results of applying one production, computed suffix-wise so that
// tuples producing the same string are merged early. entry(i, q) holds every
// distinct rewrite of form[q..] using lhs components i..n-1, each with its
// smallest position tuple; entries are in increasing tuple order.
class ProductionExpander {
public:
    struct Partial {
        Form text;
        std::vector<std::size_t> positions;
    };

    ProductionExpander(FormView form, const ScatteredProduction& p)
        : form_(form), p_(p), memo_((p.width() + 1) * (form.size() + 1))
    {
    }

    const std::vector<Partial>& entry(std::size_t i, std::size_t q)
    {
        auto& slot = memo_[i * (form_.size() + 1) + q];
        if (slot)
            return *slot;
        slot.emplace();
        const std::size_t n = p_.width();
        if (i == n) {
            slot->push_back(Partial{Form(form_.begin() + q, form_.end()), {}});
            return *slot;
        }
        std::unordered_map<Form, std::size_t, FormHash> seen;
        for (std::size_t r = q; r + (n - i) <= form_.size(); ++r) {
            if (form_[r] != p_.lhs[i])
                continue;
            for (const auto& rest : entry(i + 1, r + 1)) {
                Form text(form_.begin() + q, form_.begin() + r);
                text.insert(text.end(), p_.rhs[i].begin(), p_.rhs[i].end());
                text.insert(text.end(), rest.text.begin(), rest.text.end());
                if (seen.contains(text))
                    continue;
                seen.emplace(text, slot->size());
                std::vector<std::size_t> positions{r + 1};
                positions.insert(positions.end(), rest.positions.begin(), rest.positions.end());
                slot->push_back(Partial{std::move(text), std::move(positions)});
            }
        }
        return *slot;
    }

private:
    FormView form_;
    const ScatteredProduction& p_;
    std::vector<std::optional<std::vector<Partial>>> memo_;
};

// Distinct derivatives of one form, in canonical (production, positions)
// order. Position tuples are enumerated directly when there are few of them;
// productions with very many embeddings go through ProductionExpander, which
// merges equal results suffix-wise.
class DerivativeGenerator {
public:
    static constexpr std::size_t direct_limit = 4096;

    explicit DerivativeGenerator(const Grammar& g) : g_(g)
    {
        for (const auto& p : g.productions()) {
            std::uint64_t mask = 0;
            std::ptrdiff_t growth = -static_cast<std::ptrdiff_t>(p.width());
            for (std::size_t i = 0; i < p.width(); ++i) {
                mask |= bit(p.lhs[i]);
                growth += static_cast<std::ptrdiff_t>(p.rhs[i].size());
            }
            masks_.push_back(mask);
            growth_.push_back(growth);
        }
    }

    /// sink(production, positions, result), once per distinct result no
    /// longer than max_length. Returns the number of productions that apply
    /// but only yield longer results.
    template <class Sink>
    std::size_t run(FormView form, std::size_t max_length, Sink&& sink)
    {
        seen_.clear();
        std::uint64_t present = 0;
        for (Symbol s : form)
            present |= bit(s);
        std::size_t dropped = 0;
        const auto& ps = g_.productions();
        for (std::size_t k = 0; k < ps.size(); ++k) {
            if ((masks_[k] & ~present) != 0)
                continue;
            const auto& p = ps[k];
            if (growth_[k] > 0 && form.size() + static_cast<std::size_t>(growth_[k]) > max_length) {
                if (is_subsequence(p.lhs, form))
                    ++dropped;
                continue;
            }
            const std::size_t embeddings = count_embeddings(p.lhs, form);
            if (embeddings == 0)
                continue;
            if (embeddings <= direct_limit) {
                enumerate_direct(form, p, [&](std::span<const std::size_t> pos, FormView result) {
                    if (seen_.insert(result))
                        sink(k, pos, result);
                });
            } else {
                ProductionExpander expander(form, p);
                for (const auto& partial : expander.entry(0, 0))
                    if (seen_.insert(partial.text))
                        sink(k, std::span<const std::size_t>(partial.positions), FormView(partial.text));
            }
        }
        return dropped;
    }

private:
    static std::uint64_t bit(Symbol s) { return std::uint64_t{1} << (s.raw() % 64); }

    static bool is_subsequence(const std::vector<Symbol>& lhs, FormView form)
    {
        std::size_t i = 0;
        for (std::size_t q = 0; q < form.size() && i < lhs.size(); ++q)
            if (form[q] == lhs[i])
                ++i;
        return i == lhs.size();
    }

    // Number of increasing embeddings of `lhs` in `form`, saturated just past
    // direct_limit.
    static std::size_t count_embeddings(const std::vector<Symbol>& lhs, FormView form)
    {
        std::size_t ways[16] = {1};
        const std::size_t n = lhs.size();
        if (n >= 16)
            return is_subsequence(lhs, form) ? direct_limit + 1 : 0;
        for (std::size_t j = 1; j <= n; ++j)
            ways[j] = 0;
        for (Symbol s : form)
            for (std::size_t j = n; j-- > 0;)
                if (lhs[j] == s)
                    ways[j + 1] = std::min(ways[j + 1] + ways[j], direct_limit + 1);
        return ways[n];
    }

    template <class Emit>
    void enumerate_direct(FormView form, const ScatteredProduction& p, Emit&& emit)
    {
        const std::size_t n = p.width();
        pos_.clear();
        std::size_t next = 0;
        for (;;) {
            const std::size_t i = pos_.size();
            if (i == n) {
                build(form, p);
                emit(std::span<const std::size_t>(one_based_), FormView(result_));
                next = pos_.back() + 1;
                pos_.pop_back();
                continue;
            }
            std::size_t q = next;
            const std::size_t last = form.size() - (n - i);
            while (q <= last && form[q] != p.lhs[i])
                ++q;
            if (q <= last) {
                pos_.push_back(q);
                next = q + 1;
            } else {
                if (pos_.empty())
                    return;
                next = pos_.back() + 1;
                pos_.pop_back();
            }
        }
    }

    void build(FormView form, const ScatteredProduction& p)
    {
        result_.clear();
        one_based_.clear();
        std::size_t from = 0;
        for (std::size_t i = 0; i < pos_.size(); ++i) {
            result_.insert(result_.end(), form.begin() + from, form.begin() + pos_[i]);
            result_.insert(result_.end(), p.rhs[i].begin(), p.rhs[i].end());
            from = pos_[i] + 1;
            one_based_.push_back(pos_[i] + 1);
        }
        result_.insert(result_.end(), form.begin() + from, form.end());
    }

    // Flat set of the results produced so far for the current form.
    class SeenSet {
    public:
        void clear()
        {
            data_.clear();
            spans_.clear();
        }
        bool insert(FormView f)
        {
            const std::size_t h = FormHash{}(f);
            for (const auto& [hash, at, len] : spans_)
                if (hash == h && len == f.size() && std::equal(f.begin(), f.end(), data_.begin() + at))
                    return false;
            spans_.push_back({h, data_.size(), f.size()});
            data_.insert(data_.end(), f.begin(), f.end());
            return true;
        }

    private:
        struct Entry {
            std::size_t hash, at, len;
        };
        std::vector<Symbol> data_;
        std::vector<Entry> spans_;
    };

    const Grammar& g_;
    std::vector<std::uint64_t> masks_;
    std::vector<std::ptrdiff_t> growth_;
    SeenSet seen_;
    std::vector<std::size_t> pos_;
    std::vector<std::size_t> one_based_;
    Form result_;
};

} // namespace

std::vector<Derivative> successors(const Grammar& g, FormView form)
{
    std::vector<Derivative> out;
    DerivativeGenerator gen(g);
    gen.run(form, std::numeric_limits<std::size_t>::max(), [&](std::size_t k, std::span<const std::size_t> pos, FormView result) {
        out.push_back(Derivative{DerivationStep{k, {pos.begin(), pos.end()}}, Form(result.begin(), result.end())});
    });
    return out;
}

DerivationSpace make_derivation_space(const Grammar& g, EnumerationBounds bounds)
{
    auto owned = std::make_shared<const Grammar>(g);
    auto gen = std::make_shared<DerivativeGenerator>(*owned);
    return DerivationSpace(
        Form{g.start()}, [owned](FormView f) { return successors(*owned, f); },
        [owned, gen](FormView f, std::size_t max_length, const DerivationSpace::Sink& sink) {
            return gen->run(f, max_length, [&](std::size_t k, std::span<const std::size_t>, FormView result) {
                sink(static_cast<std::uint32_t>(k), result);
            });
        },
        bounds, !g.is_erasing());
}

BoundedLanguage enumerate(const Grammar& g, const EnumerationBounds& bounds)
{
    auto space = make_derivation_space(g, bounds);
    space.run();
    return space.language();
}

std::vector<Form> words_up_to(const BoundedLanguage& lang, std::size_t max_length)
{
    std::vector<Form> out;
    for (const auto& w : lang.words)
        if (w.size() <= max_length)
            out.push_back(w);
    return out;
}

MembershipVerdict decide_membership(const Grammar& g, FormView word, const EnumerationBounds& bounds)
{
    for (Symbol s : word) {
        if (!s.is_terminal())
            throw std::invalid_argument("'" + s.name() + "' is not a terminal");
        if (!g.declares(s))
            throw std::invalid_argument("undeclared terminal '" + s.name() + "'");
    }
    EnumerationBounds effective = bounds;
    effective.max_depth = bounds.depth_limit();
    const bool monotone = !g.is_erasing();
    if (monotone)
        effective.max_form_length = std::min(bounds.max_form_length, word.size());

    effective.max_word_length = word.size();
    auto space = make_derivation_space(g, effective);
    // Terminals are never rewritten, so they must appear in `word` in order.
    space.set_filter([word](FormView f) { return terminals_embed(f, word); });
    std::optional<DerivationSpace::NodeId> hit;
    space.run([&](DerivationSpace::NodeId id, FormView f, const DerivationSpace::Node&) {
        if (std::equal(f.begin(), f.end(), word.begin(), word.end())) {
            hit = id;
            return false;
        }
        return true;
    });
    if (hit)
        return Member{space.trace_to(*hit)};
    if (space.exhaustive() && effective.max_form_length >= word.size())
        return NotMemberExhaustive{};
    return Unknown{};
}

Form replay(const Grammar& g, const DerivationTrace& trace)
{
    Form form = trace.start;
    for (std::size_t k = 0; k < trace.steps.size(); ++k) {
        const auto& step = trace.steps[k];
        if (step.production >= g.productions().size())
            throw ReplayError(k + 1, "no production " + std::to_string(step.production + 1));
        try {
            form = apply_step(form, g.production(step.production), step);
        } catch (const InvalidStep& e) {
            throw ReplayError(k + 1, e.what());
        }
    }
    return form;
}

std::string render_trace(const DerivationTrace& trace)
{
    std::ostringstream out;
    out << "start: " << to_string(trace.start) << '\n';
    for (const auto& step : trace.steps) {
        out << "step " << step.production + 1 << " @";
        for (std::size_t p : step.positions)
            out << ' ' << p;
        out << '\n';
    }
    return out.str();
}

DerivationTrace parse_trace(const Grammar& g, std::string_view text)
{
    DerivationTrace trace;
    bool have_start = false;
    for (const auto& [line_no, line] : detail::content_lines(text)) {
        if (!have_start) {
            auto [key, rest] = detail::split_key(line);
            if (key != "start")
                throw ParseError(line_no, "expected 'start:' line");
            try {
                trace.start = parse_form(g, rest);
            } catch (const std::invalid_argument& e) {
                throw ParseError(line_no, e.what());
            }
            have_start = true;
            continue;
        }
        auto toks = detail::tokens(line);
        if (toks.size() < 3 || toks[0] != "step" || toks[2] != "@")
            throw ParseError(line_no, "expected 'step <production> @ <pos> ...'");
        auto number = [&](const std::string& tok) -> std::size_t {
            std::size_t used = 0;
            unsigned long long v = 0;
            try {
                v = std::stoull(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size() || tok.front() == '-')
                throw ParseError(line_no, "'" + tok + "' is not a nonnegative integer");
            return static_cast<std::size_t>(v);
        };
        std::size_t production = number(toks[1]);
        if (production == 0)
            throw ParseError(line_no, "production indices start at 1");
        DerivationStep step{production - 1, {}};
        for (std::size_t i = 3; i < toks.size(); ++i)
            step.positions.push_back(number(toks[i]));
        trace.steps.push_back(std::move(step));
    }
    if (!have_start)
        throw ParseError(0, "empty trace");
    return trace;
}

} // namespace scg
