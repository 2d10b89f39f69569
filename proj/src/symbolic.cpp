#include "assouad/symbolic.hpp"

#include "assouad/error.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>

namespace assouad {

namespace {

std::string pair_text(PairSymbol p) {
    return "(" + std::to_string(p.u) + "," + std::to_string(p.v) + ")";
}

void check_length(std::size_t n) {
    if (n == 0) {
        throw Error(ErrorKind::InvalidArgument, "word length must be at least 1");
    }
}

}  // namespace

bool PairSFT::allowed(std::uint32_t from, std::uint32_t to) const {
    if (from >= size() || to >= size()) {
        return false;
    }
    if (full_) {
        return true;
    }
    const auto& s = succ_[from];
    return std::binary_search(s.begin(), s.end(), to);
}

const std::vector<std::uint32_t>& PairSFT::successors(std::uint32_t i) const {
    if (i >= size()) {
        throw Error(ErrorKind::InvalidSymbol, "symbol index " + std::to_string(i) + " out of range");
    }
    return full_ ? all_ : succ_[i];
}

std::optional<std::uint32_t> PairSFT::index_of(PairSymbol p) const {
    auto it = std::lower_bound(symbols_.begin(), symbols_.end(), p);
    if (it == symbols_.end() || *it != p) {
        return std::nullopt;
    }
    return static_cast<std::uint32_t>(it - symbols_.begin());
}

TransitionList PairSFT::transitions() const {
    TransitionList out;
    for (std::uint32_t i = 0; i < size(); ++i) {
        for (auto j : successors(i)) {
            out.emplace_back(symbols_[i], symbols_[j]);
        }
    }
    return out;
}

PairSFT make_sft(std::uint32_t a_size, std::uint32_t b_size, std::vector<PairSymbol> pair_symbols,
                 const TransitionSpec& transitions) {
    if (a_size == 0 || b_size == 0) {
        throw Error(ErrorKind::InvalidSymbol, "alphabet sizes must be at least 1");
    }
    if (pair_symbols.empty()) {
        throw Error(ErrorKind::EmptySubshift, "no pair symbols given");
    }
    for (const auto& p : pair_symbols) {
        if (p.u >= a_size || p.v >= b_size) {
            throw Error(ErrorKind::InvalidSymbol, "pair " + pair_text(p) + " outside A x B");
        }
    }
    std::sort(pair_symbols.begin(), pair_symbols.end());
    if (auto dup = std::adjacent_find(pair_symbols.begin(), pair_symbols.end()); dup != pair_symbols.end()) {
        throw Error(ErrorKind::DuplicatePair, "pair " + pair_text(*dup) + " listed twice");
    }

    PairSFT sft;
    sft.a_size_ = a_size;
    sft.b_size_ = b_size;

    if (std::holds_alternative<FullTransitions>(transitions)) {
        // The complete relation has no inessential symbol.
        sft.symbols_ = std::move(pair_symbols);
        sft.full_ = true;
        sft.all_.resize(sft.symbols_.size());
        std::iota(sft.all_.begin(), sft.all_.end(), 0U);
        return sft;
    }

    const auto& list = std::get<TransitionList>(transitions);
    const std::size_t n = pair_symbols.size();
    auto locate = [&](PairSymbol p) -> std::uint32_t {
        auto it = std::lower_bound(pair_symbols.begin(), pair_symbols.end(), p);
        if (it == pair_symbols.end() || *it != p) {
            throw Error(ErrorKind::InvalidSymbol, "transition uses unknown pair " + pair_text(p));
        }
        return static_cast<std::uint32_t>(it - pair_symbols.begin());
    };
    std::vector<std::vector<std::uint32_t>> succ(n);
    for (const auto& [from, to] : list) {
        succ[locate(from)].push_back(locate(to));
    }

    std::vector<char> alive(n, 1);
    for (bool changed = true; changed;) {
        changed = false;
        std::vector<std::size_t> out_deg(n, 0), in_deg(n, 0);
        for (std::size_t i = 0; i < n; ++i) {
            if (!alive[i]) continue;
            for (auto j : succ[i]) {
                if (alive[j]) {
                    ++out_deg[i];
                    ++in_deg[j];
                }
            }
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (alive[i] && (out_deg[i] == 0 || in_deg[i] == 0)) {
                alive[i] = 0;
                changed = true;
            }
        }
    }

    std::vector<std::uint32_t> remap(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
        if (alive[i]) {
            remap[i] = static_cast<std::uint32_t>(sft.symbols_.size());
            sft.symbols_.push_back(pair_symbols[i]);
        }
    }
    if (sft.symbols_.empty()) {
        throw Error(ErrorKind::EmptySubshift, "no essential symbols remain after pruning");
    }
    sft.succ_.resize(sft.symbols_.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (!alive[i]) continue;
        auto& row = sft.succ_[remap[i]];
        for (auto j : succ[i]) {
            if (alive[j]) row.push_back(remap[j]);
        }
        std::sort(row.begin(), row.end());
        row.erase(std::unique(row.begin(), row.end()), row.end());
    }
    return sft;
}

PairSFT full_product_sft(std::uint32_t a_size, std::uint32_t b_size) {
    std::vector<PairSymbol> pairs;
    for (std::uint32_t u = 0; u < a_size; ++u) {
        for (std::uint32_t v = 0; v < b_size; ++v) {
            pairs.push_back({u, v});
        }
    }
    return make_sft(a_size, b_size, std::move(pairs), FullTransitions{});
}

BigInt count_words(const PairSFT& sft, std::size_t n) {
    check_length(n);
    if (sft.is_full()) {
        return pow_big(BigInt(sft.size()), n);
    }
    std::vector<BigInt> cur(sft.size(), BigInt(1));
    for (std::size_t step = 1; step < n; ++step) {
        std::vector<BigInt> next(sft.size(), BigInt(0));
        for (std::uint32_t i = 0; i < sft.size(); ++i) {
            if (cur[i] == 0) continue;
            for (auto j : sft.successors(i)) next[j] += cur[i];
        }
        cur = std::move(next);
    }
    BigInt total = 0;
    for (const auto& c : cur) total += c;
    return total;
}

WordSet enumerate_words(const PairSFT& sft, std::size_t n, const EnumerationCaps& caps) {
    check_length(n);
    if (n > caps.max_length) {
        throw Error(ErrorKind::EnumerationCapExceeded,
                    "length " + std::to_string(n) + " exceeds cap " + std::to_string(caps.max_length));
    }
    WordSet out;
    out.length = n;
    out.count = count_words(sft, n);
    if (out.count > caps.max_words) {
        throw Error(ErrorKind::EnumerationCapExceeded,
                    to_decimal(out.count) + " words exceed cap " + std::to_string(caps.max_words));
    }
    out.words.reserve(out.count.convert_to<std::size_t>());

    Word word(n);
    auto dfs = [&](auto&& self, std::size_t pos, std::uint32_t prev) -> void {
        if (pos == n) {
            out.words.push_back(word);
            return;
        }
        for (auto next : sft.successors(prev)) {
            word[pos] = next;
            self(self, pos + 1, next);
        }
    };
    for (std::uint32_t s = 0; s < sft.size(); ++s) {
        word[0] = s;
        dfs(dfs, 1, s);
    }
    return out;
}

bool is_allowed_word(const PairSFT& sft, std::span<const std::uint32_t> word) {
    if (word.empty()) return false;
    for (auto s : word) {
        if (s >= sft.size()) return false;
    }
    for (std::size_t i = 1; i < word.size(); ++i) {
        if (!sft.allowed(word[i - 1], word[i])) return false;
    }
    return true;
}

Letters project_b(const PairSFT& sft, std::span<const std::uint32_t> word) {
    Letters out;
    out.reserve(word.size());
    for (auto s : word) out.push_back(sft.symbol(s).v);
    return out;
}

Letters project_a(const PairSFT& sft, std::span<const std::uint32_t> word) {
    Letters out;
    out.reserve(word.size());
    for (auto s : word) out.push_back(sft.symbol(s).u);
    return out;
}

std::optional<Word> combine(const PairSFT& sft, std::span<const std::uint32_t> a_letters,
                            std::span<const std::uint32_t> b_letters) {
    if (a_letters.size() != b_letters.size() || a_letters.empty()) return std::nullopt;
    Word w;
    w.reserve(a_letters.size());
    for (std::size_t i = 0; i < a_letters.size(); ++i) {
        auto idx = sft.index_of({a_letters[i], b_letters[i]});
        if (!idx) return std::nullopt;
        w.push_back(*idx);
    }
    if (!is_allowed_word(sft, w)) return std::nullopt;
    return w;
}

namespace {

// One transfer step restricted to symbols carrying label v.
std::vector<BigInt> fiber_step(const PairSFT& sft, const std::vector<BigInt>& cur, std::uint32_t v) {
    std::vector<BigInt> next(sft.size(), BigInt(0));
    if (sft.is_full()) {
        BigInt total = 0;
        for (const auto& c : cur) total += c;
        if (total == 0) return next;
        for (std::uint32_t q = 0; q < sft.size(); ++q) {
            if (sft.symbol(q).v == v) next[q] = total;
        }
        return next;
    }
    for (std::uint32_t p = 0; p < sft.size(); ++p) {
        if (cur[p] == 0) continue;
        for (auto q : sft.successors(p)) {
            if (sft.symbol(q).v == v) next[q] += cur[p];
        }
    }
    return next;
}

std::vector<BigInt> fiber_start(const PairSFT& sft, std::uint32_t v) {
    std::vector<BigInt> cur(sft.size(), BigInt(0));
    for (std::uint32_t q = 0; q < sft.size(); ++q) {
        if (sft.symbol(q).v == v) cur[q] = 1;
    }
    return cur;
}

bool all_zero(const std::vector<BigInt>& v) {
    return std::all_of(v.begin(), v.end(), [](const BigInt& x) { return x == 0; });
}

}  // namespace

BigInt fiber_count(const PairSFT& sft, std::span<const std::uint32_t> v) {
    check_length(v.size());
    auto cur = fiber_start(sft, v[0]);
    for (std::size_t i = 1; i < v.size(); ++i) {
        cur = fiber_step(sft, cur, v[i]);
    }
    BigInt total = 0;
    for (const auto& c : cur) total += c;
    return total;
}

std::optional<Word> fiber_witness(const PairSFT& sft, std::span<const std::uint32_t> v) {
    check_length(v.size());
    const std::size_t n = v.size();
    // live[i][q]: symbol q can sit at position i and be extended to the end of v.
    std::vector<std::vector<char>> live(n, std::vector<char>(sft.size(), 0));
    for (std::uint32_t q = 0; q < sft.size(); ++q) {
        live[n - 1][q] = sft.symbol(q).v == v[n - 1];
    }
    for (std::size_t i = n - 1; i-- > 0;) {
        for (std::uint32_t q = 0; q < sft.size(); ++q) {
            if (sft.symbol(q).v != v[i]) continue;
            for (auto r : sft.successors(q)) {
                if (live[i + 1][r]) {
                    live[i][q] = 1;
                    break;
                }
            }
        }
    }
    Word w;
    w.reserve(n);
    for (std::uint32_t q = 0; q < sft.size(); ++q) {
        if (live[0][q]) {
            w.push_back(q);
            break;
        }
    }
    if (w.empty()) return std::nullopt;
    for (std::size_t i = 1; i < n; ++i) {
        for (auto r : sft.successors(w.back())) {
            if (live[i][r]) {
                w.push_back(r);
                break;
            }
        }
    }
    return w;
}

SupFiber sup_fiber_count(const PairSFT& sft, std::size_t n, const EnumerationCaps& caps) {
    check_length(n);
    SupFiber best;
    Letters prefix(n);
    std::uint64_t nodes = 0;

    auto dfs = [&](auto&& self, std::size_t depth, const std::vector<BigInt>& vec) -> void {
        if (++nodes > caps.max_words) {
            throw Error(ErrorKind::EnumerationCapExceeded,
                        "fibre search exceeded " + std::to_string(caps.max_words) + " nodes");
        }
        if (depth == n) {
            BigInt total = 0;
            for (const auto& c : vec) total += c;
            if (total > best.count) {
                best.count = total;
                best.witness = prefix;
            }
            return;
        }
        for (std::uint32_t v = 0; v < sft.b_size(); ++v) {
            auto next = fiber_step(sft, vec, v);
            if (all_zero(next)) continue;
            prefix[depth] = v;
            self(self, depth + 1, next);
        }
    };
    for (std::uint32_t v = 0; v < sft.b_size(); ++v) {
        auto start = fiber_start(sft, v);
        if (all_zero(start)) continue;
        prefix[0] = v;
        dfs(dfs, 1, start);
    }
    return best;
}

bool SoficAutomaton::accepts(std::span<const std::uint32_t> word) const {
    std::int32_t s = static_cast<std::int32_t>(initial);
    for (auto label : word) {
        if (label >= b_size) return false;
        s = delta[static_cast<std::size_t>(s)][label];
        if (s == kNone) return false;
    }
    return true;
}

BigInt SoficAutomaton::count_accepted(std::size_t n) const {
    std::vector<BigInt> cur(num_states(), BigInt(0));
    cur[initial] = 1;
    for (std::size_t step = 0; step < n; ++step) {
        std::vector<BigInt> next(num_states(), BigInt(0));
        for (std::size_t s = 0; s < num_states(); ++s) {
            if (cur[s] == 0) continue;
            for (auto t : delta[s]) {
                if (t != kNone) next[static_cast<std::size_t>(t)] += cur[s];
            }
        }
        cur = std::move(next);
    }
    BigInt total = 0;
    for (const auto& c : cur) total += c;
    return total;
}

std::vector<Letters> SoficAutomaton::accepted_words(std::size_t n, const EnumerationCaps& caps) const {
    if (n > caps.max_length || count_accepted(n) > caps.max_words) {
        throw Error(ErrorKind::EnumerationCapExceeded, "projected language too large to list");
    }
    std::vector<Letters> out;
    Letters word(n);
    auto dfs = [&](auto&& self, std::size_t pos, std::int32_t s) -> void {
        if (pos == n) {
            out.push_back(word);
            return;
        }
        for (std::uint32_t label = 0; label < b_size; ++label) {
            auto t = delta[static_cast<std::size_t>(s)][label];
            if (t == kNone) continue;
            word[pos] = label;
            self(self, pos + 1, t);
        }
    };
    dfs(dfs, 0, static_cast<std::int32_t>(initial));
    return out;
}

SoficAutomaton project_automaton(const PairSFT& sft, const AutomatonCaps& caps) {
    const std::uint32_t k = sft.b_size();
    using Subset = std::vector<std::uint32_t>;

    std::map<Subset, std::uint32_t> index;
    std::vector<Subset> subsets;
    std::vector<std::vector<std::int32_t>> raw;

    Subset all(sft.size());
    std::iota(all.begin(), all.end(), 0U);
    index.emplace(all, 0);
    subsets.push_back(all);

    for (std::size_t cur = 0; cur < subsets.size(); ++cur) {
        std::vector<std::vector<char>> mark(k, std::vector<char>(sft.size(), 0));
        for (auto p : subsets[cur]) {
            for (auto q : sft.successors(p)) mark[sft.symbol(q).v][q] = 1;
        }
        std::vector<std::int32_t> row(k, SoficAutomaton::kNone);
        for (std::uint32_t v = 0; v < k; ++v) {
            Subset target;
            for (std::uint32_t q = 0; q < sft.size(); ++q) {
                if (mark[v][q]) target.push_back(q);
            }
            if (target.empty()) continue;
            auto [it, inserted] = index.emplace(target, static_cast<std::uint32_t>(subsets.size()));
            if (inserted) {
                if (subsets.size() >= caps.max_states) {
                    throw Error(ErrorKind::StateBlowup,
                                "subset construction exceeded " + std::to_string(caps.max_states) + " states");
                }
                subsets.push_back(std::move(target));
            }
            row[v] = static_cast<std::int32_t>(it->second);
        }
        raw.push_back(std::move(row));
    }

    // Moore refinement; every state accepts, so the initial partition is a single block.
    const std::size_t m = subsets.size();
    std::vector<std::uint32_t> block(m, 0);
    std::size_t num_blocks = 1;
    for (;;) {
        std::map<std::vector<std::int64_t>, std::uint32_t> sig_index;
        std::vector<std::uint32_t> next_block(m);
        for (std::size_t s = 0; s < m; ++s) {
            std::vector<std::int64_t> sig;
            sig.reserve(k + 1);
            sig.push_back(block[s]);
            for (auto t : raw[s]) sig.push_back(t == SoficAutomaton::kNone ? -1 : block[static_cast<std::size_t>(t)]);
            auto [it, _] = sig_index.emplace(std::move(sig), static_cast<std::uint32_t>(sig_index.size()));
            next_block[s] = it->second;
        }
        const std::size_t count = sig_index.size();
        block = std::move(next_block);
        if (count == num_blocks) break;
        num_blocks = count;
    }

    // Renumber blocks in order of first discovery so the initial state is 0.
    std::vector<std::int64_t> order(num_blocks, -1);
    std::uint32_t next_id = 0;
    for (std::size_t s = 0; s < m; ++s) {
        if (order[block[s]] < 0) order[block[s]] = next_id++;
    }

    SoficAutomaton out;
    out.b_size = k;
    out.states.resize(num_blocks);
    out.delta.assign(num_blocks, std::vector<std::int32_t>(k, SoficAutomaton::kNone));
    std::vector<char> filled(num_blocks, 0);
    for (std::size_t s = 0; s < m; ++s) {
        const auto id = static_cast<std::size_t>(order[block[s]]);
        if (filled[id]) continue;
        filled[id] = 1;
        out.states[id] = subsets[s];
        for (std::uint32_t v = 0; v < k; ++v) {
            auto t = raw[s][v];
            if (t != SoficAutomaton::kNone) {
                out.delta[id][v] = static_cast<std::int32_t>(order[block[static_cast<std::size_t>(t)]]);
            }
        }
    }
    out.initial = 0;
    return out;
}

}  // namespace assouad
