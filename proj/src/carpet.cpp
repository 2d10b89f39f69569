#include "assouad/carpet.hpp"

#include "assouad/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>

namespace assouad {

CarpetSystem make_carpet(std::uint32_t a, std::uint32_t b, PairSFT omega, const AutomatonCaps& caps) {
    if (!(a > b && b >= 2)) {
        throw Error(ErrorKind::InvalidSystem, "a > b >= 2 required (got a=" + std::to_string(a) +
                                                  ", b=" + std::to_string(b) + ")");
    }
    if (omega.a_size() != a || omega.b_size() != b) {
        throw Error(ErrorKind::InvalidSystem, "subshift alphabet sizes must equal a and b");
    }
    CarpetSystem sys{a, b, std::move(omega), {}};
    sys.projection = project_automaton(sys.omega, caps);
    return sys;
}

ScaleIndices scale_indices(double r, std::uint32_t a, std::uint32_t b) {
    if (!(r > 0.0) || r > 1.0 || !std::isfinite(r)) {
        throw Error(ErrorKind::InvalidScale, "scale must lie in (0, 1]");
    }
    auto index = [r](std::uint32_t base) {
        const double t = -std::log(r) / std::log(static_cast<double>(base));
        return std::max(0, static_cast<int>(std::ceil(t - 1e-9)));
    };
    return {index(a), index(b), r};
}

std::vector<ScaleCell> scale_cells(std::uint32_t a, std::uint32_t b, int l2_max) {
    std::vector<double> cuts{1.0};
    const double floor = std::pow(static_cast<double>(b), -l2_max);
    for (std::uint32_t base : {a, b}) {
        for (int i = 1;; ++i) {
            const double p = std::pow(static_cast<double>(base), -i);
            if (p < floor * (1.0 - 1e-12)) break;
            cuts.push_back(p);
        }
    }
    std::sort(cuts.begin(), cuts.end(), std::greater<>());
    std::vector<double> distinct;
    for (double c : cuts) {
        if (distinct.empty() || distinct.back() - c > 1e-12 * c) distinct.push_back(c);
    }
    std::vector<ScaleCell> out;
    out.push_back({scale_indices(1.0, a, b), 1.0, 1.0, 1.0});
    for (std::size_t i = 0; i + 1 < distinct.size(); ++i) {
        ScaleCell cell;
        cell.hi = distinct[i];
        cell.lo = distinct[i + 1];
        cell.rep = std::sqrt(cell.lo * cell.hi);
        cell.idx = scale_indices(cell.rep, a, b);
        out.push_back(cell);
    }
    return out;
}

std::string to_string(CoverCase c) { return c == CoverCase::Case1 ? "Case1" : "Case2"; }

CoverCase classify(const ScaleIndices& r, const ScaleIndices& rho) {
    return rho.l1 <= r.l2 ? CoverCase::Case2 : CoverCase::Case1;
}

namespace {

void check_order(const ScaleIndices& r, const ScaleIndices& rho) {
    if (rho.l1 < r.l1 || rho.l2 < r.l2 || rho.r >= r.r) {
        throw Error(ErrorKind::ScaleOrder, "need 0 < rho < r");
    }
}

std::pair<ScaleIndices, ScaleIndices> indices_for(const CarpetSystem& sys, double r, double rho) {
    if (!(rho > 0.0) || !(rho < r)) {
        throw Error(ErrorKind::ScaleOrder, "need 0 < rho < r");
    }
    return {scale_indices(r, sys.a, sys.b), scale_indices(rho, sys.a, sys.b)};
}

void check_center(const CarpetSystem& sys, std::size_t n, const Center& center, int needed) {
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "N must be at least 1");
    if (center.size() < static_cast<std::size_t>(needed)) {
        throw Error(ErrorKind::InvalidCenter, "center has " + std::to_string(center.size()) +
                                                  " blocks, needs at least " + std::to_string(needed));
    }
    for (std::size_t m = 0; m < center.size(); ++m) {
        if (center[m].size() != n || !is_allowed_word(sys.omega, center[m])) {
            throw Error(ErrorKind::CenterBlockNotAllowed,
                        "center block " + std::to_string(m + 1) + " is not an allowed word of length " +
                            std::to_string(n));
        }
    }
}

CoverCount finish(BigInt count, CoverCase tag) {
    CoverCount c;
    c.log_count = static_cast<double>(log_big(count));
    c.count = std::move(count);
    c.case_tag = tag;
    return c;
}

}  // namespace

CoverCount cover_count_formula(const CarpetSystem& sys, std::size_t n, const Center& center, double r, double rho) {
    auto [ri, pi] = indices_for(sys, r, rho);
    return cover_count_formula(sys, n, center, ri, pi);
}

CoverCount cover_count_formula(const CarpetSystem& sys, std::size_t n, const Center& center,
                               const ScaleIndices& r, const ScaleIndices& rho) {
    check_order(r, rho);
    check_center(sys, n, center, r.l2);
    const CoverCase tag = classify(r, rho);
    const int fiber_end = tag == CoverCase::Case2 ? rho.l1 : r.l2;

    BigInt count = 1;
    for (int m = r.l1 + 1; m <= fiber_end; ++m) {
        count *= fiber_count(sys.omega, project_b(sys.omega, center[static_cast<std::size_t>(m - 1)]));
    }
    const BigInt omega_prime_n = sys.projection.count_accepted(n);
    if (tag == CoverCase::Case2) {
        count *= pow_big(omega_prime_n, static_cast<std::uint64_t>(rho.l2 - r.l2));
    } else {
        count *= pow_big(count_words(sys.omega, n), static_cast<std::uint64_t>(rho.l1 - r.l2));
        count *= pow_big(omega_prime_n, static_cast<std::uint64_t>(rho.l2 - rho.l1));
    }
    return finish(std::move(count), tag);
}

CoverCount cover_count_oracle(const CarpetSystem& sys, std::size_t n, const Center& center, double r, double rho,
                              const OracleOptions& opts) {
    auto [ri, pi] = indices_for(sys, r, rho);
    return cover_count_oracle(sys, n, center, ri, pi, opts);
}

CoverCount cover_count_oracle(const CarpetSystem& sys, std::size_t n, const Center& center,
                              const ScaleIndices& r, const ScaleIndices& rho, const OracleOptions& opts) {
    check_order(r, rho);
    check_center(sys, n, center, r.l2);
    const auto all = enumerate_words(sys.omega, n, opts.caps);

    using Key = std::vector<std::uint32_t>;
    const int positions = std::max(rho.l1, rho.l2);
    std::vector<std::vector<Key>> keys(static_cast<std::size_t>(positions));
    BigInt raw_product = 1;
    for (int m = 1; m <= positions; ++m) {
        const bool fix_x = m <= r.l1;
        const bool fix_y = m <= r.l2;
        Letters cx, cy;
        if (fix_x || fix_y) {
            cx = project_a(sys.omega, center[static_cast<std::size_t>(m - 1)]);
            cy = project_b(sys.omega, center[static_cast<std::size_t>(m - 1)]);
        }
        auto& out = keys[static_cast<std::size_t>(m - 1)];
        for (const auto& w : all.words) {
            const Letters x = project_a(sys.omega, w);
            const Letters y = project_b(sys.omega, w);
            if ((fix_x && x != cx) || (fix_y && y != cy)) continue;
            Key key;
            if (m <= rho.l1) key.insert(key.end(), x.begin(), x.end());
            if (m <= rho.l2) key.insert(key.end(), y.begin(), y.end());
            out.push_back(std::move(key));
        }
        raw_product *= out.size();
    }

    BigInt count = 1;
    if (raw_product <= opts.exhaustive_limit) {
        // Label each position's keys, then project every candidate tuple to
        // its mixed-radix class code and count distinct codes.
        std::vector<std::vector<std::uint64_t>> ids(keys.size());
        std::vector<std::uint64_t> radix(keys.size(), 1);
        for (std::size_t m = 0; m < keys.size(); ++m) {
            std::map<Key, std::uint64_t> label;
            for (const auto& k : keys[m]) {
                auto it = label.emplace(k, label.size()).first;
                ids[m].push_back(it->second);
            }
            radix[m] = std::max<std::uint64_t>(1, label.size());
        }
        std::vector<std::uint64_t> codes;
        codes.reserve(raw_product.convert_to<std::size_t>());
        std::vector<std::size_t> digit(keys.size(), 0);
        const bool empty = std::any_of(keys.begin(), keys.end(), [](const auto& k) { return k.empty(); });
        while (!empty) {
            std::uint64_t code = 0;
            for (std::size_t m = 0; m < keys.size(); ++m) code = code * radix[m] + ids[m][digit[m]];
            codes.push_back(code);
            std::size_t m = 0;
            while (m < keys.size() && ++digit[m] == keys[m].size()) digit[m++] = 0;
            if (m == keys.size()) break;
        }
        std::sort(codes.begin(), codes.end());
        count = static_cast<std::uint64_t>(std::unique(codes.begin(), codes.end()) - codes.begin());
    } else {
        for (auto& k : keys) {
            std::sort(k.begin(), k.end());
            count *= static_cast<std::uint64_t>(std::unique(k.begin(), k.end()) - k.begin());
        }
    }
    return finish(std::move(count), classify(r, rho));
}

BlockCounts block_counts(const CarpetSystem& sys, std::size_t n, const EnumerationCaps& caps) {
    BlockCounts bc;
    bc.n = n;
    bc.omega_n = count_words(sys.omega, n);
    bc.omega_prime_n = sys.projection.count_accepted(n);
    bc.sup_fiber = sup_fiber_count(sys.omega, n, caps);
    bc.fiber_block = *fiber_witness(sys.omega, bc.sup_fiber.witness);
    return bc;
}

SupCover sup_cover_count(const CarpetSystem& sys, std::size_t n, double r, double rho, const EnumerationCaps& caps) {
    auto [ri, pi] = indices_for(sys, r, rho);
    if (n == 0) throw Error(ErrorKind::InvalidArgument, "N must be at least 1");
    return sup_cover_count(block_counts(sys, n, caps), ri, pi);
}

SupCover sup_cover_count(const BlockCounts& counts, const ScaleIndices& r, const ScaleIndices& rho) {
    check_order(r, rho);
    const CoverCase tag = classify(r, rho);
    BigInt count;
    if (tag == CoverCase::Case2) {
        count = pow_big(counts.sup_fiber.count, static_cast<std::uint64_t>(rho.l1 - r.l1)) *
                pow_big(counts.omega_prime_n, static_cast<std::uint64_t>(rho.l2 - r.l2));
    } else {
        count = pow_big(counts.sup_fiber.count, static_cast<std::uint64_t>(r.l2 - r.l1)) *
                pow_big(counts.omega_n, static_cast<std::uint64_t>(rho.l1 - r.l2)) *
                pow_big(counts.omega_prime_n, static_cast<std::uint64_t>(rho.l2 - rho.l1));
    }
    SupCover out;
    out.cover = finish(std::move(count), tag);
    out.center.assign(static_cast<std::size_t>(rho.l2), counts.fiber_block);
    return out;
}

ClosedForm closed_form_dims(const CarpetSystem& sys, ClosedFormMode mode, const std::vector<std::size_t>& n_list,
                            const EnumerationCaps& caps) {
    ClosedForm cf;
    cf.h_omega = *topological_entropy(sys.omega, n_list).spectral_exact;
    cf.h_omega_prime = *sofic_entropy(sys.projection, n_list).spectral_exact;

    const auto cond = conditional_entropy(sys.omega, n_list, caps);
    if (cond.spectral_exact) {
        cf.h_conditional = Interval::point(*cond.spectral_exact);
        cf.conditional_method = cond.method;
    } else {
        // h(Omega) <= h(Omega') + h(Omega|Omega') and fibres sit inside Omega|_N.
        const double lo = std::max(0.0, cf.h_omega - cf.h_omega_prime);
        const double hi = std::max(lo, std::min(cond.fekete_upper, cf.h_omega));
        cf.h_conditional = {lo, hi};
        cf.conditional_method = cf.h_conditional.exact() ? "exact-by-sandwich" : "interval";
        if (cf.h_conditional.exact()) {
            cf.h_conditional = Interval::point(hi);
        } else if (mode == ClosedFormMode::Exact) {
            throw Error(ErrorKind::ConditionalNotConverged,
                        "conditional entropy only bracketed in [" + std::to_string(lo) + ", " +
                            std::to_string(hi) + "]");
        }
    }

    const double la = std::log(static_cast<double>(sys.a));
    const double lb = std::log(static_cast<double>(sys.b));
    cf.madim = {cf.h_conditional.lo / la + cf.h_omega_prime / lb, cf.h_conditional.hi / la + cf.h_omega_prime / lb};
    cf.mmdim = cf.h_omega / la + (1.0 / lb - 1.0 / la) * cf.h_omega_prime;
    if (cf.h_conditional.exact()) {
        cf.uniform_fibres = std::abs(cf.h_omega - cf.h_omega_prime - cf.h_conditional.lo) < 1e-9;
    }
    return cf;
}

double phase_transition(std::uint32_t a, std::uint32_t b) {
    return std::log(static_cast<double>(b)) / std::log(static_cast<double>(a));
}

SpectrumValue spectrum_closed_form(const ClosedForm& dims, std::uint32_t a, std::uint32_t b, double theta) {
    if (!(theta > 0.0 && theta < 1.0)) {
        throw Error(ErrorKind::ThetaOutOfRange, "theta must lie in (0, 1)");
    }
    const double la = std::log(static_cast<double>(a));
    const double lb = std::log(static_cast<double>(b));
    const double h = dims.h_omega;
    const double mm = dims.mmdim;

    auto min_form = [&](double cond, double madim) {
        const double branch = (mm - theta * ((1.0 / la - 1.0 / lb) * cond + h / lb)) / (1.0 - theta);
        return std::min(madim, branch);
    };
    auto piecewise = [&](double madim) {
        if (theta > lb / la) return madim;
        return (mm - theta * (madim - (madim - mm) * la / lb)) / (1.0 - theta);
    };
    SpectrumValue out;
    out.value = {min_form(dims.h_conditional.lo, dims.madim.lo), min_form(dims.h_conditional.hi, dims.madim.hi)};
    out.corollary = {piecewise(dims.madim.lo), piecewise(dims.madim.hi)};
    return out;
}

}  // namespace assouad
