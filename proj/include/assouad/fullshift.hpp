#pragma once

// Full shifts over finite subsets of [0,1]: one-dimensional covering and
// packing counts, their product brackets and the normalized S-infinity curve.

#include "assouad/bigint.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace assouad {

struct RealAlphabet {
    std::vector<double> points;  ///< strictly increasing, inside [0,1]
    std::string label;
    double lambda = 0.0;     ///< F_lambda family only
    std::size_t n_max = 0;   ///< F_lambda family only
    double window_floor = 0.0;  ///< smallest rho at which counts are trusted
};

/// Explicit point list; sorted on input, duplicates rejected. The faithful
/// window ends at the minimal gap.
RealAlphabet make_alphabet(std::vector<double> points, std::string label = "explicit");

/// {0} U {n^-lambda : 1 <= n <= n_max}; counts match the infinite set for
/// rho >= (n_max+1)^-lambda.
RealAlphabet f_lambda_alphabet(double lambda, std::size_t n_max);

/// Minimal number of closed intervals of length rho covering the ball B(x, r).
std::uint64_t interval_cover_count(const RealAlphabet& alphabet, double x, double r, double rho);

/// Largest subset of B(x, r) with pairwise gaps strictly greater than rho.
std::uint64_t interval_pack_count(const RealAlphabet& alphabet, double x, double r, double rho);

struct ProductBounds {
    BigInt lower;  ///< pack^N
    BigInt upper;  ///< cover^N
};

ProductBounds product_cover_bounds(const RealAlphabet& alphabet, double x, double r, double rho, std::size_t n);

struct SinftyPoint {
    double r = 0.0;
    double rho = 0.0;
    double log_ratio = 0.0;
    double upper = 0.0;  ///< (1/N) log cover^N, maximized over centers
    double lower = 0.0;  ///< (1/N) log pack^N, maximized over centers
    bool in_window = true;
};

/// Log-uniform r list from just below 1 down to window_floor^theta, step 0.02 in log r.
std::vector<double> default_sinfty_r_list(const RealAlphabet& alphabet, double theta);

/// rho = r^(1/theta). Points with rho below the alphabet's window are kept
/// but marked in_window = false.
std::vector<SinftyPoint> sinfty_curve(const RealAlphabet& alphabet, double theta, const std::vector<double>& r_list,
                                      std::size_t n = 1);

/// min{1 / ((1+lambda)(1-theta)), 1}
double f_lambda_spectrum(double lambda, double theta);

}  // namespace assouad
