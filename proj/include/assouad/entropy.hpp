#pragma once

#include "assouad/symbolic.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace assouad {

/// Finite-N entropy data in nats.
struct EntropyEstimate {
    std::vector<std::pair<std::size_t, double>> per_n;  ///< (N, log count / N)
    double fekete_upper = 0.0;                          ///< min of per_n
    std::optional<double> spectral_exact;
    std::string method;
};

struct FeketeResult {
    double upper = 0.0;
    double last = 0.0;
    bool monotone = true;
};

/// values are (N, a_N) pairs; a_N is the raw (unnormalized) log count.
FeketeResult fekete_extrapolate(const std::vector<std::pair<std::size_t, double>>& values);

struct PowerIterationOptions {
    double rel_tol = 1e-12;
    std::size_t max_iter = 100'000;
};

/// Spectral radius of the nonnegative integer matrix given as adjacency
/// lists (repeated entries count as multiplicities). Computed per strongly
/// connected component and maximized; 0 for nilpotent structures.
double perron_root(const std::vector<std::vector<std::uint32_t>>& adjacency,
                   const PowerIterationOptions& opts = {});

std::vector<std::size_t> default_n_list();

EntropyEstimate topological_entropy(const PairSFT& sft, const std::vector<std::size_t>& n_list = default_n_list(),
                                    const PowerIterationOptions& opts = {});

EntropyEstimate sofic_entropy(const SoficAutomaton& automaton,
                              const std::vector<std::size_t>& n_list = default_n_list(),
                              const PowerIterationOptions& opts = {});

/// sup-fibre entropy. spectral_exact is set only when per_n is constant to 1e-12.
EntropyEstimate conditional_entropy(const PairSFT& sft, const std::vector<std::size_t>& n_list = default_n_list(),
                                    const EnumerationCaps& caps = {});

}  // namespace assouad
