#pragma once

// Bedford-McMullen carpet systems in symbolic coding: approximate squares,
// their exact cover counts and the closed-form dimension values.

#include "assouad/entropy.hpp"
#include "assouad/symbolic.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace assouad {

struct CarpetSystem {
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    PairSFT omega;
    SoficAutomaton projection;  ///< presentation of pi(omega)
};

/// Validates a > b >= 2 and that omega lives on {0..a-1} x {0..b-1}.
CarpetSystem make_carpet(std::uint32_t a, std::uint32_t b, PairSFT omega, const AutomatonCaps& caps = {});

struct ScaleIndices {
    int l1 = 0;
    int l2 = 0;
    double r = 1.0;
};

/// a^-l1 <= r < a^-l1+1 and b^-l2 <= r < b^-l2+1, exact powers snapping to a^-l1 = r.
ScaleIndices scale_indices(double r, std::uint32_t a, std::uint32_t b);

/// A maximal interval of scales sharing one (l1, l2) pair; rep is its geometric midpoint.
struct ScaleCell {
    ScaleIndices idx;
    double lo = 0.0;
    double hi = 1.0;
    double rep = 1.0;
};

/// Every cell of (0, 1] with l2 <= l2_max, coarsest first; r = 1 is its own cell.
std::vector<ScaleCell> scale_cells(std::uint32_t a, std::uint32_t b, int l2_max);

enum class CoverCase { Case1, Case2 };
std::string to_string(CoverCase c);

struct CoverCount {
    BigInt count = 0;
    double log_count = 0.0;
    CoverCase case_tag = CoverCase::Case2;
};

/// A center is a list of blocks, block m being an allowed pair word of length N.
using Center = std::vector<Word>;

/// Case 2 iff l1(rho) <= l2(r); otherwise Case 1.
CoverCase classify(const ScaleIndices& r, const ScaleIndices& rho);

/// Product formula for the number of rho-prefix classes inside Q_{N,r}(center).
/// The center must provide at least l2(r) blocks; later blocks are ignored.
CoverCount cover_count_formula(const CarpetSystem& sys, std::size_t n, const Center& center, double r, double rho);
CoverCount cover_count_formula(const CarpetSystem& sys, std::size_t n, const Center& center,
                               const ScaleIndices& r, const ScaleIndices& rho);

struct OracleOptions {
    /// Up to this many raw candidate tuples are enumerated and deduplicated;
    /// beyond it, distinct keys are counted per position and multiplied.
    std::uint64_t exhaustive_limit = 10'000'000;
    EnumerationCaps caps = {};
};

/// Brute force: enumerates the allowed blocks of every position of Q_{N,r}(center)
/// and counts distinct (x-prefix up to l1(rho), y-prefix up to l2(rho)) classes.
CoverCount cover_count_oracle(const CarpetSystem& sys, std::size_t n, const Center& center, double r, double rho,
                              const OracleOptions& opts = {});
CoverCount cover_count_oracle(const CarpetSystem& sys, std::size_t n, const Center& center,
                              const ScaleIndices& r, const ScaleIndices& rho, const OracleOptions& opts = {});

/// Per-N block statistics reused by every scale pair.
struct BlockCounts {
    std::size_t n = 0;
    BigInt omega_n = 0;        ///< |Omega|_N|
    BigInt omega_prime_n = 0;  ///< |Omega'|_N|
    SupFiber sup_fiber;
    Word fiber_block;  ///< smallest pair word over the sup-fibre witness
};

BlockCounts block_counts(const CarpetSystem& sys, std::size_t n, const EnumerationCaps& caps = {});

struct SupCover {
    CoverCount cover;
    Center center;  ///< maximizing center with l2(rho) blocks
};

SupCover sup_cover_count(const CarpetSystem& sys, std::size_t n, double r, double rho,
                         const EnumerationCaps& caps = {});
SupCover sup_cover_count(const BlockCounts& counts, const ScaleIndices& r, const ScaleIndices& rho);

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    bool exact() const noexcept { return hi - lo <= 1e-9; }
    double mid() const noexcept { return 0.5 * (lo + hi); }
    static Interval point(double x) { return {x, x}; }
};

enum class ClosedFormMode { Exact, Interval };

struct ClosedForm {
    double h_omega = 0.0;
    double h_omega_prime = 0.0;
    Interval h_conditional;
    std::string conditional_method;  ///< exact-by-stabilization | exact-by-sandwich | interval
    Interval madim;
    double mmdim = 0.0;
    std::optional<bool> uniform_fibres;  ///< empty when the conditional entropy is not pinned down
};

/// Exact mode throws ConditionalNotConverged when the conditional entropy is
/// not determined; interval mode returns the bracketing interval instead.
ClosedForm closed_form_dims(const CarpetSystem& sys, ClosedFormMode mode = ClosedFormMode::Exact,
                            const std::vector<std::size_t>& n_list = default_n_list(),
                            const EnumerationCaps& caps = {});

struct SpectrumValue {
    Interval value;      ///< min-form
    Interval corollary;  ///< piecewise form in terms of madim and mmdim
};

/// Spectrum at theta in (0,1); monotone in the conditional entropy, so an
/// interval input maps endpoint to endpoint.
SpectrumValue spectrum_closed_form(const ClosedForm& dims, std::uint32_t a, std::uint32_t b, double theta);

/// Theta at which the spectrum reaches madim: log b / log a.
double phase_transition(std::uint32_t a, std::uint32_t b);

}  // namespace assouad
