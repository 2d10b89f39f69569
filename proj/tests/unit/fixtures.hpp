#pragma once

#include "assouad/carpet.hpp"
#include "assouad/error.hpp"
#include "assouad/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace fixtures {

using namespace assouad;

/// Kind of the Error thrown by fn, or nothing if fn returns normally.
template <class Fn>
std::optional<ErrorKind> error_kind(Fn&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    return std::nullopt;
}

inline PairSFT four_pair() { return make_sft(3, 2, {{0, 0}, {1, 0}, {2, 0}, {0, 1}}, FullTransitions{}); }

inline PairSFT golden_mean_pair() {
    const PairSymbol p{0, 0}, q{1, 1};
    return make_sft(3, 2, {p, q}, TransitionList{{p, p}, {p, q}, {q, p}});
}

/// Five symbols on 3 x 2, a sparse relation that keeps every symbol essential.
inline PairSFT five_symbol() {
    const PairSymbol s0{0, 0}, s1{1, 0}, s2{2, 1}, s3{0, 1}, s4{2, 0};
    return make_sft(3, 2, {s0, s1, s2, s3, s4},
                    TransitionList{{s0, s1}, {s1, s2}, {s2, s0}, {s0, s3}, {s3, s4}, {s4, s0}, {s1, s1}, {s2, s3}});
}

inline CarpetSystem carpet(PairSFT omega) { return make_carpet(3, 2, std::move(omega)); }

/// Random SFT over a_size x b_size; retries until pruning leaves something.
inline PairSFT random_sft(std::mt19937_64& rng, std::uint32_t a_size, std::uint32_t b_size, std::size_t max_symbols,
                          double density) {
    std::vector<PairSymbol> all;
    for (std::uint32_t u = 0; u < a_size; ++u) {
        for (std::uint32_t v = 0; v < b_size; ++v) all.push_back({u, v});
    }
    std::bernoulli_distribution edge(density);
    for (;;) {
        std::shuffle(all.begin(), all.end(), rng);
        std::uniform_int_distribution<std::size_t> pick(1, std::min(max_symbols, all.size()));
        std::vector<PairSymbol> chosen(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(pick(rng)));
        TransitionList edges;
        for (const auto& p : chosen) {
            for (const auto& q : chosen) {
                if (edge(rng)) edges.emplace_back(p, q);
            }
        }
        try {
            return make_sft(a_size, b_size, chosen, edges);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::EmptySubshift) throw;
        }
    }
}

/// True when every symbol reaches every other along allowed transitions.
inline bool irreducible(const PairSFT& sft) {
    const auto n = sft.size();
    for (std::uint32_t start = 0; start < n; ++start) {
        std::vector<bool> seen(n, false);
        std::vector<std::uint32_t> stack{start};
        seen[start] = true;
        while (!stack.empty()) {
            const auto v = stack.back();
            stack.pop_back();
            for (auto w : sft.successors(v)) {
                if (!seen[w]) {
                    seen[w] = true;
                    stack.push_back(w);
                }
            }
        }
        if (std::find(seen.begin(), seen.end(), false) != seen.end()) return false;
    }
    return true;
}

/// Every sequence of symbol indices of length n whose consecutive pairs are in
/// the explicit transition list. Independent of the transfer-vector code.
inline std::vector<Word> brute_words(const PairSFT& sft, std::size_t n) {
    std::set<std::pair<std::uint32_t, std::uint32_t>> edges;
    for (const auto& [p, q] : sft.transitions()) edges.insert({*sft.index_of(p), *sft.index_of(q)});
    const auto k = static_cast<std::uint32_t>(sft.size());
    std::vector<Word> out;
    Word w(n, 0);
    std::uint64_t total = 1;
    for (std::size_t i = 0; i < n; ++i) total *= k;
    for (std::uint64_t code = 0; code < total; ++code) {
        std::uint64_t c = code;
        for (std::size_t i = n; i-- > 0;) {
            w[i] = static_cast<std::uint32_t>(c % k);
            c /= k;
        }
        bool ok = true;
        for (std::size_t i = 0; ok && i + 1 < n; ++i) ok = edges.count({w[i], w[i + 1]}) > 0;
        if (ok) out.push_back(w);
    }
    return out;
}

inline std::set<Letters> brute_projection(const PairSFT& sft, std::size_t n) {
    std::set<Letters> out;
    for (const auto& w : brute_words(sft, n)) {
        Letters v;
        for (auto s : w) v.push_back(sft.symbol(s).v);
        out.insert(v);
    }
    return out;
}

inline std::uint64_t brute_fiber(const PairSFT& sft, const Letters& v) {
    std::uint64_t c = 0;
    for (const auto& w : brute_words(sft, v.size())) {
        bool match = true;
        for (std::size_t i = 0; match && i < v.size(); ++i) match = sft.symbol(w[i]).v == v[i];
        c += match ? 1 : 0;
    }
    return c;
}

}  // namespace fixtures
