#pragma once

// One-step subshifts of finite type over a pair alphabet A x B, their words,
// the projection onto the B coordinate and the fibres of that projection.

#include "assouad/bigint.hpp"

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <variant>
#include <vector>

namespace assouad {

struct PairSymbol {
    std::uint32_t u = 0;  ///< letter of A = {0..a_size-1}
    std::uint32_t v = 0;  ///< letter of B = {0..b_size-1}
    auto operator<=>(const PairSymbol&) const = default;
};

/// A word of the SFT as a sequence of pair-symbol indices.
using Word = std::vector<std::uint32_t>;
/// A word over one coordinate alphabet (A or B letters).
using Letters = std::vector<std::uint32_t>;

struct FullTransitions {};
using TransitionList = std::vector<std::pair<PairSymbol, PairSymbol>>;
using TransitionSpec = std::variant<FullTransitions, TransitionList>;

/// Essential (pruned) one-step SFT. Symbols are kept sorted by (u, v), so a
/// symbol's index order is the lexicographic order of its pair.
class PairSFT {
public:
    std::uint32_t a_size() const noexcept { return a_size_; }
    std::uint32_t b_size() const noexcept { return b_size_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    const std::vector<PairSymbol>& symbols() const noexcept { return symbols_; }
    const PairSymbol& symbol(std::uint32_t i) const { return symbols_.at(i); }
    bool is_full() const noexcept { return full_; }

    bool allowed(std::uint32_t from, std::uint32_t to) const;
    const std::vector<std::uint32_t>& successors(std::uint32_t i) const;
    std::optional<std::uint32_t> index_of(PairSymbol p) const;

    /// Explicit transition list (materialized on demand for FULL).
    TransitionList transitions() const;

    friend PairSFT make_sft(std::uint32_t, std::uint32_t, std::vector<PairSymbol>, const TransitionSpec&);

private:
    PairSFT() = default;

    std::uint32_t a_size_ = 0;
    std::uint32_t b_size_ = 0;
    std::vector<PairSymbol> symbols_;
    bool full_ = false;
    std::vector<std::vector<std::uint32_t>> succ_;  // empty when full_
    std::vector<std::uint32_t> all_;               // 0..n-1, successor list of every symbol when full_
};

/// Builds the essential presentation: symbols without an outgoing or incoming
/// allowed transition are removed until a fixed point is reached.
PairSFT make_sft(std::uint32_t a_size, std::uint32_t b_size, std::vector<PairSymbol> pair_symbols,
                 const TransitionSpec& transitions);

/// Full shift on every pair of A x B.
PairSFT full_product_sft(std::uint32_t a_size, std::uint32_t b_size);

struct EnumerationCaps {
    std::size_t max_length = 16;
    std::uint64_t max_words = 10'000'000;
};

struct WordSet {
    std::size_t length = 0;
    std::vector<Word> words;  ///< lexicographic in symbol indices
    BigInt count = 0;
};

/// Number of allowed words of length n (exact, transfer-vector products).
BigInt count_words(const PairSFT& sft, std::size_t n);

WordSet enumerate_words(const PairSFT& sft, std::size_t n, const EnumerationCaps& caps = {});

bool is_allowed_word(const PairSFT& sft, std::span<const std::uint32_t> word);

Letters project_b(const PairSFT& sft, std::span<const std::uint32_t> word);
Letters project_a(const PairSFT& sft, std::span<const std::uint32_t> word);

/// Pair word with the given coordinate projections, if it exists.
std::optional<Word> combine(const PairSFT& sft, std::span<const std::uint32_t> a_letters,
                            std::span<const std::uint32_t> b_letters);

/// |pi_N^{-1}(v)|: number of allowed pair words whose B projection is v.
BigInt fiber_count(const PairSFT& sft, std::span<const std::uint32_t> v);

/// Lexicographically smallest allowed pair word over v.
std::optional<Word> fiber_witness(const PairSFT& sft, std::span<const std::uint32_t> v);

struct SupFiber {
    BigInt count = 0;
    Letters witness;  ///< lexicographically smallest maximizer
};

SupFiber sup_fiber_count(const PairSFT& sft, std::size_t n, const EnumerationCaps& caps = {});

struct AutomatonCaps {
    std::size_t max_states = std::size_t{1} << 16;
};

/// Deterministic, minimized presentation of the projected language pi(Omega).
/// Every state is accepting; a missing transition rejects.
struct SoficAutomaton {
    static constexpr std::int32_t kNone = -1;

    std::uint32_t b_size = 0;
    /// Subset of pair symbols represented by each state (first subset found
    /// for its equivalence class during subset construction).
    std::vector<std::vector<std::uint32_t>> states;
    /// delta[state][label] -> state or kNone.
    std::vector<std::vector<std::int32_t>> delta;
    std::uint32_t initial = 0;

    std::size_t num_states() const noexcept { return states.size(); }
    bool accepts(std::span<const std::uint32_t> word) const;
    BigInt count_accepted(std::size_t n) const;
    std::vector<Letters> accepted_words(std::size_t n, const EnumerationCaps& caps = {}) const;
};

SoficAutomaton project_automaton(const PairSFT& sft, const AutomatonCaps& caps = {});

}  // namespace assouad
