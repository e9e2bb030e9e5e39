#pragma once

#include "scg/symbol.hpp"

#include <algorithm>
#include <cstdint>
#include <cstring>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

namespace scg {

struct EnumerationBounds {
    std::size_t max_form_length = 24;
    /// Derivation steps; unset means 4 * max_form_length.
    std::optional<std::size_t> max_depth;
    std::size_t max_forms = 1'000'000;
    /// Drop forms holding more terminals than this. Terminals are never
    /// rewritten, so no word up to this length is lost.
    std::optional<std::size_t> max_word_length;

    std::size_t depth_limit() const { return max_depth.value_or(4 * max_form_length); }
};

struct BoundedLanguage {
    std::vector<Form> words; ///< canonical order (length, then token-wise)
    bool exhaustive = false;
    std::size_t visited_forms = 0;
    std::size_t pruned_forms = 0; ///< (form, production) pairs with a derivative longer than max_form_length
    bool depth_limit_hit = false;
    bool budget_hit = false;

    friend bool operator==(const BoundedLanguage&, const BoundedLanguage&) = default;
};

/// Words of `lang` no longer than `max_length`, order preserved.
std::vector<Form> words_up_to(const BoundedLanguage& lang, std::size_t max_length);

template <class Step>
struct Successor {
    Step step;
    Form form;
};

template <class Step>
struct Trace {
    Form start;
    std::vector<Step> steps;

    friend bool operator==(const Trace&, const Trace&) = default;
};

namespace detail {

/// Append-only store of distinct forms, kept as 16-bit symbol codes in
/// fixed-size blocks (no reallocation of stored data), with an
/// open-addressing index for deduplication.
class FormStore {
public:
    using Id = std::uint32_t;
    static constexpr Id none = std::numeric_limits<Id>::max();

    std::size_t size() const { return starts_.size(); }

    std::optional<Id> find(FormView f) const
    {
        if (!encode_probe(f))
            return std::nullopt;
        return lookup(hash_codes());
    }

    /// Returns {id, inserted}. A new form is only added while size() is below
    /// `limit`; otherwise the result is {none, false}.
    std::pair<Id, bool> insert(FormView f, std::size_t limit = none - 1)
    {
        encode_probe(f, true);
        const std::size_t h = hash_codes();
        if (auto id = lookup(h))
            return {*id, false};
        if (starts_.size() >= limit)
            return {none, false};
        if (starts_.size() >= none - 1)
            throw std::length_error("form store is full");
        if ((starts_.size() + 1) * 2 > slots_.size())
            grow();
        const auto id = static_cast<Id>(starts_.size());
        starts_.push_back(append(probe_));
        place(id, h);
        return {id, true};
    }

    Form form(Id id) const
    {
        Form out;
        decode(id, out);
        return out;
    }

    void decode(Id id, Form& out) const
    {
        const std::uint16_t* p = codes(id);
        out.clear();
        out.reserve(p[0]);
        for (std::size_t i = 1; i <= p[0]; ++i)
            out.push_back(symbols_[p[i]]);
    }

private:
    static constexpr std::size_t block_size = std::size_t{1} << 20;
    static constexpr Id empty_slot = none;

    const std::uint16_t* codes(Id id) const
    {
        const std::uint64_t at = starts_[id];
        return blocks_[at >> 32].get() + (at & 0xffffffffu);
    }

    // Fills probe_ with [length, codes...]; false if a symbol is unknown.
    bool encode_probe(FormView f, bool add = false) const
    {
        if (f.size() > std::numeric_limits<std::uint16_t>::max())
            throw std::length_error("form too long for the form store");
        probe_.resize(f.size() + 1);
        probe_[0] = static_cast<std::uint16_t>(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
            const std::uint32_t raw = f[i].raw();
            if (raw >= codes_.size() || codes_[raw] == no_code) {
                if (!add)
                    return false;
                if (symbols_.size() >= no_code)
                    throw std::length_error("too many distinct symbols");
                if (raw >= codes_.size())
                    codes_.resize(raw + 1, no_code);
                codes_[raw] = static_cast<std::uint16_t>(symbols_.size());
                symbols_.push_back(f[i]);
            }
            probe_[i + 1] = codes_[raw];
        }
        return true;
    }

    std::size_t hash_codes() const { return hash_of(probe_.data()); }

    static std::size_t hash_of(const std::uint16_t* p)
    {
        std::uint64_t h = 0x9e3779b97f4a7c15ull;
        for (std::size_t i = 0; i <= p[0]; ++i) {
            h ^= p[i];
            h *= 0xff51afd7ed558ccdull;
        }
        return static_cast<std::size_t>(h ^ (h >> 32));
    }

    std::optional<Id> lookup(std::size_t h) const
    {
        if (slots_.empty())
            return std::nullopt;
        const std::size_t mask = slots_.size() - 1;
        const std::size_t bytes = probe_.size() * sizeof(std::uint16_t);
        for (std::size_t i = h & mask;; i = (i + 1) & mask) {
            const Id id = slots_[i];
            if (id == empty_slot)
                return std::nullopt;
            const std::uint16_t* p = codes(id);
            if (p[0] == probe_[0] && std::memcmp(p, probe_.data(), bytes) == 0)
                return id;
        }
    }

    std::uint64_t append(const std::vector<std::uint16_t>& entry)
    {
        if (blocks_.empty() || used_ + entry.size() > block_capacity_) {
            block_capacity_ = std::max(block_size, entry.size());
            blocks_.push_back(std::make_unique<std::uint16_t[]>(block_capacity_));
            used_ = 0;
        }
        std::copy(entry.begin(), entry.end(), blocks_.back().get() + used_);
        const std::uint64_t at = (static_cast<std::uint64_t>(blocks_.size() - 1) << 32) | used_;
        used_ += entry.size();
        return at;
    }

    void place(Id id, std::size_t h)
    {
        const std::size_t mask = slots_.size() - 1;
        std::size_t i = h & mask;
        while (slots_[i] != empty_slot)
            i = (i + 1) & mask;
        slots_[i] = id;
    }

    void grow()
    {
        slots_.assign(std::max<std::size_t>(1024, slots_.size() * 2), empty_slot);
        for (Id id = 0; id < starts_.size(); ++id)
            place(id, hash_of(codes(id)));
    }

    static constexpr std::uint16_t no_code = std::numeric_limits<std::uint16_t>::max();

    mutable std::vector<std::uint16_t> codes_; ///< indexed by Symbol::raw()
    mutable std::vector<Symbol> symbols_;
    mutable std::vector<std::uint16_t> probe_;
    std::vector<std::unique_ptr<std::uint16_t[]>> blocks_;
    std::size_t used_ = 0;
    std::size_t block_capacity_ = 0;
    std::deque<std::uint64_t> starts_;
    std::vector<Id> slots_;
};

} // namespace detail

/// Breadth-first exploration of the forms reachable from a start form under a
/// successor relation, with global deduplication. Node ids are assigned in
/// discovery order, so the id sequence is the BFS queue itself.
///
/// `emit(form, max_length, sink)` must report a form's derivatives of length
/// at most max_length in canonical step order, one per distinct result, and
/// return how many (form, label) pairs it dropped for exceeding max_length.
/// `expand` must return the same derivatives with their steps. Trace
/// reconstruction recomputes `expand` along the parent chain.
template <class Step>
class StateSpace {
public:
    using NodeId = detail::FormStore::Id;
    static constexpr NodeId no_parent = detail::FormStore::none;

    using Expand = std::function<std::vector<Successor<Step>>(FormView)>;
    using Sink = std::function<void(std::uint32_t label, FormView form)>;
    using Emit = std::function<std::size_t(FormView, std::size_t max_length, const Sink&)>;

    struct Node {
        NodeId parent;
        std::uint32_t depth;
        std::uint32_t label; ///< label of the discovering step; 0 for the start
    };

    /// `length_monotone`: no derivative is ever shorter than its parent, which
    /// lets pruning by length coexist with an exhaustive verdict.
    StateSpace(Form start, Expand expand, Emit emit, EnumerationBounds bounds, bool length_monotone)
        : start_(std::move(start)), expand_(std::move(expand)), emit_(std::move(emit)), bounds_(bounds),
          monotone_(length_monotone)
    {
        if (bounds_.max_forms == 0)
            throw std::invalid_argument("max_forms must be at least 1");
    }

    /// Runs the search. `visit(id, form, node)` is called once per distinct
    /// form in discovery order; returning false stops the search.
    template <class Visitor>
    void run(Visitor&& visit)
    {
        if (start_.size() > bounds_.max_form_length) {
            ++pruned_;
            return;
        }
        if (!admit(start_) || !insert(start_, no_parent, 0, 0, visit))
            return;
        const std::size_t depth_limit = bounds_.depth_limit();
        Form current;
        bool halted = false;
        for (std::size_t cursor = 0; cursor < nodes_.size() && !halted; ++cursor) {
            const Node node = nodes_[cursor];
            store_.decode(static_cast<NodeId>(cursor), current);
            if (is_terminal_word(current))
                continue;
            if (node.depth >= depth_limit) {
                depth_hit_ = true;
                continue;
            }
            pruned_ += emit_(current, bounds_.max_form_length, [&](std::uint32_t label, FormView next) {
                if (halted || !admit(next))
                    return;
                if (!insert(next, static_cast<NodeId>(cursor), node.depth + 1, label, visit))
                    halted = true;
            });
        }
    }

    void run()
    {
        run([](NodeId, FormView, const Node&) { return true; });
    }

    std::size_t size() const { return nodes_.size(); }
    Form form(NodeId id) const { return store_.form(id); }
    const Node& node(NodeId id) const { return nodes_[id]; }
    std::optional<NodeId> find(FormView f) const { return store_.find(f); }

    /// Steps leading from the start form to `id`.
    Trace<Step> trace_to(NodeId id) const
    {
        std::vector<NodeId> path;
        for (NodeId at = id; at != no_parent; at = nodes_[at].parent)
            path.push_back(at);
        std::reverse(path.begin(), path.end());
        Trace<Step> trace{start_, {}};
        Form from = start_;
        for (std::size_t k = 1; k < path.size(); ++k) {
            Form target = form(path[k]);
            for (auto& succ : expand_(from)) {
                if (succ.form == target) {
                    trace.steps.push_back(std::move(succ.step));
                    break;
                }
            }
            from = std::move(target);
        }
        return trace;
    }

    /// Forms rejected by `filter` are neither stored nor expanded. The filter
    /// must only reject forms that cannot lead to a word of interest.
    void set_filter(std::function<bool(FormView)> filter) { filter_ = std::move(filter); }

    std::size_t pruned() const { return pruned_; }
    bool depth_limit_hit() const { return depth_hit_; }
    bool budget_hit() const { return budget_hit_; }
    bool stopped_early() const { return stopped_; }

    /// Conservative: true only when every word of the language within the
    /// length bounds is among the visited forms.
    bool exhaustive() const
    {
        return !depth_hit_ && !budget_hit_ && !stopped_ && (pruned_ == 0 || monotone_);
    }

    /// Terminal words among the visited forms, canonically sorted.
    std::vector<Form> terminal_words() const
    {
        std::vector<Form> words;
        Form f;
        for (NodeId id = 0; id < nodes_.size(); ++id) {
            store_.decode(id, f);
            if (is_terminal_word(f))
                words.push_back(f);
        }
        std::sort(words.begin(), words.end(), [](const Form& a, const Form& b) { return canonical_less(a, b); });
        return words;
    }

    BoundedLanguage language() const
    {
        BoundedLanguage out;
        out.words = terminal_words();
        out.exhaustive = exhaustive();
        out.visited_forms = nodes_.size();
        out.pruned_forms = pruned_;
        out.depth_limit_hit = depth_hit_;
        out.budget_hit = budget_hit_;
        return out;
    }

private:
    bool admit(FormView f) const
    {
        if (bounds_.max_word_length) {
            std::size_t terminals = 0;
            for (Symbol s : f)
                terminals += s.is_terminal();
            if (terminals > *bounds_.max_word_length)
                return false;
        }
        return !filter_ || filter_(f);
    }

    template <class Visitor>
    bool insert(FormView f, NodeId parent, std::uint32_t depth, std::uint32_t label, Visitor& visit)
    {
        const auto [id, inserted] = store_.insert(f, bounds_.max_forms);
        if (!inserted) {
            if (id != no_parent)
                return true;
            budget_hit_ = true;
            return false;
        }
        nodes_.push_back(Node{parent, depth, label});
        if (!visit(id, f, nodes_.back())) {
            stopped_ = true;
            return false;
        }
        return true;
    }

    Form start_;
    Expand expand_;
    Emit emit_;
    std::function<bool(FormView)> filter_;
    EnumerationBounds bounds_;
    bool monotone_;

    detail::FormStore store_;
    std::deque<Node> nodes_;

    std::size_t pruned_ = 0;
    bool depth_hit_ = false;
    bool budget_hit_ = false;
    bool stopped_ = false;
};

/// Emit adapter for successor functions that already build full steps.
template <class Step>
typename StateSpace<Step>::Emit emit_from(typename StateSpace<Step>::Expand expand,
                                          std::function<std::uint32_t(const Step&)> label)
{
    return [expand = std::move(expand), label = std::move(label)](
               FormView f, std::size_t max_length, const typename StateSpace<Step>::Sink& sink) {
        std::vector<std::uint32_t> dropped;
        for (const auto& succ : expand(f)) {
            const std::uint32_t l = label(succ.step);
            if (succ.form.size() <= max_length)
                sink(l, succ.form);
            else if (std::find(dropped.begin(), dropped.end(), l) == dropped.end())
                dropped.push_back(l);
        }
        return dropped.size();
    };
}

} // namespace scg
