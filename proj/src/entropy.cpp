#include "assouad/entropy.hpp"

#include "assouad/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>

namespace assouad {

namespace {

// Tarjan's algorithm, iterative. Returns component id per vertex.
std::vector<std::size_t> strong_components(const std::vector<std::vector<std::uint32_t>>& adj,
                                           std::size_t& num_components) {
    const std::size_t n = adj.size();
    constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> index(n, kUnset), low(n, 0), comp(n, kUnset);
    std::vector<char> on_stack(n, 0);
    std::vector<std::size_t> stack;
    std::size_t counter = 0;
    num_components = 0;

    struct Frame {
        std::size_t v;
        std::size_t edge;
    };
    for (std::size_t root = 0; root < n; ++root) {
        if (index[root] != kUnset) continue;
        std::vector<Frame> call{{root, 0}};
        index[root] = low[root] = counter++;
        stack.push_back(root);
        on_stack[root] = 1;
        while (!call.empty()) {
            auto& f = call.back();
            if (f.edge < adj[f.v].size()) {
                const std::size_t w = adj[f.v][f.edge++];
                if (index[w] == kUnset) {
                    index[w] = low[w] = counter++;
                    stack.push_back(w);
                    on_stack[w] = 1;
                    call.push_back({w, 0});
                } else if (on_stack[w]) {
                    low[f.v] = std::min(low[f.v], index[w]);
                }
                continue;
            }
            const std::size_t v = f.v;
            if (low[v] == index[v]) {
                std::size_t w = 0;
                do {
                    w = stack.back();
                    stack.pop_back();
                    on_stack[w] = 0;
                    comp[w] = num_components;
                } while (w != v);
                ++num_components;
            }
            call.pop_back();
            if (!call.empty()) {
                low[call.back().v] = std::min(low[call.back().v], low[v]);
            }
        }
    }
    return comp;
}

// Perron root of an irreducible block via power iteration on (B + I), which is
// primitive, with Collatz-Wielandt bounds as the stopping rule.
double irreducible_root(const std::vector<std::vector<std::uint32_t>>& local, const PowerIterationOptions& opts) {
    const std::size_t n = local.size();
    std::vector<long double> x(n, 1.0L), y(n);
    for (std::size_t it = 0; it < opts.max_iter; ++it) {
        std::copy(x.begin(), x.end(), y.begin());
        for (std::size_t i = 0; i < n; ++i) {
            for (auto j : local[i]) y[i] += x[j];
        }
        long double lo = std::numeric_limits<long double>::infinity();
        long double hi = 0.0L;
        long double norm = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            const long double ratio = y[i] / x[i];
            lo = std::min(lo, ratio);
            hi = std::max(hi, ratio);
            norm = std::max(norm, y[i]);
        }
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (hi - lo <= static_cast<long double>(opts.rel_tol) * hi) {
            return static_cast<double>((lo + hi) / 2.0L - 1.0L);
        }
    }
    throw Error(ErrorKind::NonConvergence,
                "power iteration did not converge in " + std::to_string(opts.max_iter) + " steps");
}

double safe_log(double x) { return x > 0.0 ? std::log(x) : 0.0; }

void check_n_list(const std::vector<std::size_t>& n_list) {
    if (n_list.empty()) throw Error(ErrorKind::EmptyInput, "empty N list");
    for (auto n : n_list) {
        if (n == 0) throw Error(ErrorKind::InvalidArgument, "N must be at least 1");
    }
}

EntropyEstimate from_counts(const std::vector<std::size_t>& n_list, const std::function<BigInt(std::size_t)>& count,
                            std::string method) {
    check_n_list(n_list);
    EntropyEstimate est;
    est.method = std::move(method);
    std::vector<std::pair<std::size_t, double>> raw;
    for (auto n : n_list) {
        const BigInt c = count(n);
        const double a = c > 0 ? static_cast<double>(log_big(c)) : 0.0;
        raw.emplace_back(n, a);
        est.per_n.emplace_back(n, a / static_cast<double>(n));
    }
    est.fekete_upper = fekete_extrapolate(raw).upper;
    return est;
}

}  // namespace

FeketeResult fekete_extrapolate(const std::vector<std::pair<std::size_t, double>>& values) {
    if (values.empty()) throw Error(ErrorKind::EmptyInput, "no values to extrapolate");
    auto sorted = values;
    std::sort(sorted.begin(), sorted.end());
    FeketeResult r;
    r.upper = std::numeric_limits<double>::infinity();
    double prev = std::numeric_limits<double>::infinity();
    for (const auto& [n, a] : sorted) {
        if (n == 0) throw Error(ErrorKind::InvalidArgument, "N must be at least 1");
        if (a < 0.0) throw Error(ErrorKind::InvalidArgument, "a_N must be nonnegative");
        const double q = a / static_cast<double>(n);
        r.upper = std::min(r.upper, q);
        if (q > prev + 1e-12 * std::max(1.0, std::abs(prev))) r.monotone = false;
        prev = q;
    }
    r.last = sorted.back().second / static_cast<double>(sorted.back().first);
    return r;
}

double perron_root(const std::vector<std::vector<std::uint32_t>>& adjacency, const PowerIterationOptions& opts) {
    std::size_t num = 0;
    const auto comp = strong_components(adjacency, num);
    std::vector<std::vector<std::size_t>> members(num);
    for (std::size_t v = 0; v < adjacency.size(); ++v) members[comp[v]].push_back(v);

    double best = 0.0;
    std::vector<std::size_t> local_id(adjacency.size(), 0);
    for (std::size_t c = 0; c < num; ++c) {
        const auto& vs = members[c];
        for (std::size_t i = 0; i < vs.size(); ++i) local_id[vs[i]] = i;
        std::vector<std::vector<std::uint32_t>> local(vs.size());
        bool has_edge = false;
        for (std::size_t i = 0; i < vs.size(); ++i) {
            for (auto w : adjacency[vs[i]]) {
                if (comp[w] == c) {
                    local[i].push_back(static_cast<std::uint32_t>(local_id[w]));
                    has_edge = true;
                }
            }
        }
        if (!has_edge) continue;
        best = std::max(best, irreducible_root(local, opts));
    }
    return best;
}

std::vector<std::size_t> default_n_list() { return {1, 2, 3, 4, 5, 6, 7, 8}; }

EntropyEstimate topological_entropy(const PairSFT& sft, const std::vector<std::size_t>& n_list,
                                    const PowerIterationOptions& opts) {
    auto est = from_counts(n_list, [&](std::size_t n) { return count_words(sft, n); }, "spectral");
    if (sft.is_full()) {
        est.spectral_exact = std::log(static_cast<double>(sft.size()));
        return est;
    }
    std::vector<std::vector<std::uint32_t>> adj(sft.size());
    for (std::uint32_t i = 0; i < sft.size(); ++i) adj[i] = sft.successors(i);
    est.spectral_exact = safe_log(perron_root(adj, opts));
    return est;
}

EntropyEstimate sofic_entropy(const SoficAutomaton& automaton, const std::vector<std::size_t>& n_list,
                              const PowerIterationOptions& opts) {
    auto est = from_counts(n_list, [&](std::size_t n) { return automaton.count_accepted(n); }, "spectral");
    std::vector<std::vector<std::uint32_t>> adj(automaton.num_states());
    for (std::size_t s = 0; s < automaton.num_states(); ++s) {
        for (auto t : automaton.delta[s]) {
            if (t != SoficAutomaton::kNone) adj[s].push_back(static_cast<std::uint32_t>(t));
        }
    }
    est.spectral_exact = safe_log(perron_root(adj, opts));
    return est;
}

EntropyEstimate conditional_entropy(const PairSFT& sft, const std::vector<std::size_t>& n_list,
                                    const EnumerationCaps& caps) {
    auto est = from_counts(n_list, [&](std::size_t n) { return sup_fiber_count(sft, n, caps).count; },
                           "fekete");
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& [n, q] : est.per_n) {
        lo = std::min(lo, q);
        hi = std::max(hi, q);
    }
    if (hi - lo <= 1e-12) {
        est.spectral_exact = est.per_n.back().second;
        est.method = "exact-by-stabilization";
    }
    return est;
}

}  // namespace assouad
