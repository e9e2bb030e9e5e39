#pragma once

#include "scg/derivation.hpp"
#include "scg/geffert.hpp"
#include "scg/grammar.hpp"

#include <optional>
#include <string>
#include <vector>

namespace scg::three_nt {

/// Nonterminals of every transformed grammar.
Symbol sym_s();
Symbol sym_a();
Symbol sym_b();

/// Homomorphism onto {A, B} plus terminals:
///   A -> ABB, B -> BBA, C -> BAB, D -> BAB, a -> AaBB.
/// Throws std::invalid_argument for any other nonterminal (e.g. S').
Form encode(FormView s);

enum class OriginKind {
    init,         ///< (S) -> (SBBASABBSA)
    cf_terminal,  ///< from S' -> u S' a
    cf_bilateral, ///< from S' -> u S' v
    erase_ab,     ///< simulates AB -> lambda
    erase_cd,     ///< simulates CD -> lambda
    unpack_keep,  ///< unpacks one encoded unit, keeps the SBBA marker
    unpack_drop,  ///< unpacks the last unit and drops the marker
    final_,       ///< (S,S,S,A) -> (lambda,lambda,lambda,lambda)
};

struct Origin {
    OriginKind kind;
    std::optional<std::size_t> source_rule; ///< 0-based, for the cf kinds

    friend bool operator==(const Origin&, const Origin&) = default;
};

std::string to_string(const Origin& origin);

struct TransformOutput {
    Grammar grammar;
    std::vector<Origin> provenance; ///< indexed like grammar.productions()

    /// Index of the unique production with the given fixed origin.
    std::size_t index_of(OriginKind kind) const;
    /// Index of the production built from source rule `rule`, if any.
    std::optional<std::size_t> index_for_rule(std::size_t rule) const;
};

/// Throws std::invalid_argument for an invalid source grammar or a terminal
/// named S.
TransformOutput transform(const geffert::GeffertGrammar& g);

/// `<production_index>: <origin>` per line, indices 1-based.
std::string render_provenance(const TransformOutput& out);

/// Maps a source derivation of a terminal word onto the transformed grammar.
/// Throws std::invalid_argument when `t` does not replay from S' to a
/// terminal word.
DerivationTrace simulate(const geffert::GeffertGrammar& g, const TransformOutput& out,
                         const geffert::GeffertTrace& t);
DerivationTrace simulate(const geffert::GeffertGrammar& g, const geffert::GeffertTrace& t);

/// i counts applications of the init production, j of the final one.
struct CountingState {
    std::size_t i = 0;
    std::size_t j = 0;
};

/// With 2k B's in `form`: |form|_A = k + i - j and |form|_S = 1 + 2i - 3j.
/// An odd B count fails.
bool check_counting(FormView form, CountingState cs);

} // namespace scg::three_nt
