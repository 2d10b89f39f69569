#pragma once

// Scale-sweep estimators built on exact cover counts, and the verification
// checks that compare them with the closed forms.

#include "assouad/carpet.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace assouad {

struct ScalePair {
    double r = 1.0;
    double rho = 0.5;
};

struct ScaleGrid {
    std::vector<ScalePair> pairs;
    std::vector<std::size_t> n_list = default_n_list();
};

/// r = a^-j for j = 1..J and rho = r a^-k for k = 1..k_max, with J large
/// enough that every ratio k is realized by some Case 2 pair.
ScaleGrid default_madim_grid(std::uint32_t a, std::uint32_t b, int k_max = 20);

/// r = a^-1 and rho = a^-k, k = 2..k_max.
ScaleGrid uniform_scale_grid(std::uint32_t a, int k_max = 20);

/// r = a^-(q/8) for q = 16..160.
std::vector<double> default_spectrum_r_list(std::uint32_t a);

struct ScalePoint {
    std::optional<double> theta;
    double r = 0.0;
    double rho = 0.0;
    std::size_t n_max = 0;
    double log_ratio = 0.0;
    double s_upper = 0.0;  ///< min over N of (1/N) log sup cover count
    double s_last = 0.0;   ///< value at the largest N
    bool used = true;      ///< part of the regression (upper envelope)
};

struct DimensionReport {
    double slope = 0.0;
    double intercept = 0.0;
    double residual = 0.0;  ///< max absolute deviation from the fitted line
    double slope_last = 0.0;
    std::size_t points_used = 0;
    std::optional<double> closed_form;
    std::optional<double> abs_error;
    std::vector<ScalePoint> points;
};

/// Ordinary least squares on (log(r/rho), S). slope_last is left at slope.
DimensionReport fit_dimension(const std::vector<std::pair<double, double>>& points);

struct EstimateOptions {
    unsigned jobs = 1;
    EnumerationCaps caps = {};
};

std::vector<BlockCounts> block_table(const CarpetSystem& sys, const std::vector<std::size_t>& n_list,
                                     const EstimateOptions& opts = {});

/// Evaluates every pair, keeps the largest S per log-ratio and fits.
DimensionReport estimate_from_counts(const std::vector<BlockCounts>& table, std::uint32_t a, std::uint32_t b,
                                     const std::vector<ScalePair>& pairs, std::optional<double> theta = std::nullopt);

DimensionReport estimate_madim(const CarpetSystem& sys, const ScaleGrid& grid, const EstimateOptions& opts = {});
DimensionReport estimate_mmdim(const CarpetSystem& sys, const ScaleGrid& grid, const EstimateOptions& opts = {});

struct SpectrumEntry {
    double theta = 0.0;
    DimensionReport report;
    Interval closed_form;
};

struct SpectrumCurve {
    std::vector<SpectrumEntry> entries;
    double transition_theta = 0.0;
};

SpectrumCurve estimate_spectrum(const CarpetSystem& sys, const std::vector<double>& thetas,
                                const std::vector<double>& r_list, const std::vector<std::size_t>& n_list,
                                const EstimateOptions& opts = {});

struct Verdict {
    std::string check;
    std::string instance;
    double lhs = 0.0;
    double rhs = 0.0;
    double slack = 0.0;
    bool pass = true;
};

/// Comparisons run with slack plus a 1e-9 floating tolerance.
std::vector<Verdict> check_bounds(double mmdim, const std::vector<std::pair<double, double>>& spectrum, double madim,
                                  double slack, const std::string& instance);

std::vector<Verdict> subadditivity_check(const CarpetSystem& sys,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& n_pairs,
                                         const std::vector<ScalePair>& scales, const std::string& instance,
                                         const EnumerationCaps& caps = {});

/// table[x][M]; checks max_x min_M <= min_M max_x.
Verdict order_exchange_check(const std::vector<std::vector<double>>& table, const std::string& instance);

/// v(x, M) = (1/M) log cover count of Q_{M,r}(x) at rho, for deterministic centers x.
std::vector<std::vector<double>> carpet_order_table(const CarpetSystem& sys, ScalePair scales,
                                                    std::size_t num_centers, std::size_t m_max);

/// Slopes under the grid and under (c r, c rho); tolerance 1e-9 if c is a power of a, else 0.05.
Verdict bilipschitz_check(const CarpetSystem& sys, const ScaleGrid& grid, double c, const std::string& instance,
                          const EstimateOptions& opts = {});

/// Admissible centers for Q_{N,r}: every tuple of allowed blocks when there
/// are at most `limit`, otherwise one block per distinct B-word on positions
/// l1(r)+1..l2(r) with a fixed block elsewhere.
std::vector<Center> oracle_centers(const CarpetSystem& sys, std::size_t n, const ScaleIndices& r, std::uint64_t limit,
                                   const EnumerationCaps& caps = {});

/// Formula against brute force for N <= n_max, every scale-cell pair with
/// l2 <= l_max and every center from oracle_centers. One verdict per
/// (N, r-cell, rho-cell); lhs is the number of mismatching centers.
std::vector<Verdict> oracle_sweep(const CarpetSystem& sys, std::size_t n_max, int l_max, const OracleOptions& opts,
                                  std::uint64_t center_limit, const std::string& instance, unsigned jobs = 1);

struct WanderingRow {
    std::size_t depth = 0;  ///< M
    double bound = 0.0;
};

/// Upper bound on (1/M) sup_x log N_{d_M}(B(x, r), rho) for the union of the
/// shifted boxes A_1..A_{m_max} in [0,1]^Z, window |i| <= W.
std::vector<WanderingRow> wandering_demo(std::size_t m_max, const std::vector<std::size_t>& depths, std::size_t window,
                                         double r, double rho);

}  // namespace assouad
