#include "assouad/estimate.hpp"

#include "assouad/error.hpp"
#include "assouad/format.hpp"
#include "assouad/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

namespace assouad {

namespace {

constexpr double kTol = 1e-9;

double apow(std::uint32_t a, double e) { return std::pow(static_cast<double>(a), e); }

}  // namespace

ScaleGrid default_madim_grid(std::uint32_t a, std::uint32_t b, int k_max) {
    if (k_max < 1) throw Error(ErrorKind::InvalidArgument, "k_max must be at least 1");
    const double la = std::log(static_cast<double>(a));
    const double lb = std::log(static_cast<double>(b));
    int j_max = 2 * static_cast<int>(std::ceil(k_max * lb / (la - lb))) + 2;
    // Keep rho = a^-(j+k) representable.
    j_max = std::min(j_max, std::max(1, static_cast<int>(700.0 / la) - k_max));
    ScaleGrid grid;
    for (int j = 1; j <= j_max; ++j) {
        for (int k = 1; k <= k_max; ++k) {
            grid.pairs.push_back({apow(a, -j), apow(a, -(j + k))});
        }
    }
    return grid;
}

ScaleGrid uniform_scale_grid(std::uint32_t a, int k_max) {
    ScaleGrid grid;
    for (int k = 2; k <= k_max; ++k) grid.pairs.push_back({apow(a, -1), apow(a, -k)});
    return grid;
}

std::vector<double> default_spectrum_r_list(std::uint32_t a) {
    std::vector<double> out;
    for (int q = 16; q <= 160; ++q) out.push_back(apow(a, -q / 8.0));
    return out;
}

DimensionReport fit_dimension(const std::vector<std::pair<double, double>>& points) {
    std::set<double> xs;
    for (const auto& p : points) xs.insert(p.first);
    if (xs.size() < 2) throw Error(ErrorKind::DegenerateGrid, "need at least two distinct log-ratios");

    const auto n = static_cast<double>(points.size());
    double mx = 0.0, my = 0.0;
    for (const auto& [x, y] : points) {
        mx += x;
        my += y;
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0;
    for (const auto& [x, y] : points) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    DimensionReport rep;
    rep.slope = sxy / sxx;
    rep.intercept = my - rep.slope * mx;
    for (const auto& [x, y] : points) {
        rep.residual = std::max(rep.residual, std::abs(y - (rep.slope * x + rep.intercept)));
    }
    rep.slope_last = rep.slope;
    rep.points_used = points.size();
    return rep;
}

std::vector<BlockCounts> block_table(const CarpetSystem& sys, const std::vector<std::size_t>& n_list,
                                     const EstimateOptions& opts) {
    if (n_list.empty()) throw Error(ErrorKind::EmptyInput, "empty N list");
    return parallel_map(n_list.size(), opts.jobs,
                        [&](std::size_t i) { return block_counts(sys, n_list[i], opts.caps); });
}

DimensionReport estimate_from_counts(const std::vector<BlockCounts>& table, std::uint32_t a, std::uint32_t b,
                                     const std::vector<ScalePair>& pairs, std::optional<double> theta) {
    if (table.empty()) throw Error(ErrorKind::EmptyInput, "empty N list");
    std::vector<ScalePoint> points;
    points.reserve(pairs.size());
    std::size_t n_max = 0;
    for (const auto& bc : table) n_max = std::max(n_max, bc.n);

    for (const auto& [r, rho] : pairs) {
        if (!(rho > 0.0 && rho < r)) throw Error(ErrorKind::ScaleOrder, "need 0 < rho < r");
        const auto ri = scale_indices(r, a, b);
        const auto pi = scale_indices(rho, a, b);
        ScalePoint pt;
        pt.theta = theta;
        pt.r = r;
        pt.rho = rho;
        pt.n_max = n_max;
        pt.log_ratio = std::log(r / rho);
        pt.s_upper = std::numeric_limits<double>::infinity();
        for (const auto& bc : table) {
            const double s = sup_cover_count(bc, ri, pi).cover.log_count / static_cast<double>(bc.n);
            pt.s_upper = std::min(pt.s_upper, s);
            if (bc.n == n_max) pt.s_last = s;
        }
        pt.used = false;
        points.push_back(pt);
    }

    // Upper envelope: the largest S for each distinct log-ratio.
    std::map<long long, std::size_t> best_upper, best_last;
    for (std::size_t i = 0; i < points.size(); ++i) {
        const long long key = std::llround(points[i].log_ratio * 1e6);
        auto [it, fresh] = best_upper.emplace(key, i);
        if (!fresh && points[i].s_upper > points[it->second].s_upper) it->second = i;
        auto [jt, fresh_last] = best_last.emplace(key, i);
        if (!fresh_last && points[i].s_last > points[jt->second].s_last) jt->second = i;
    }
    std::vector<std::pair<double, double>> upper, last;
    for (const auto& [key, i] : best_upper) {
        points[i].used = true;
        upper.emplace_back(points[i].log_ratio, points[i].s_upper);
    }
    for (const auto& [key, i] : best_last) last.emplace_back(points[i].log_ratio, points[i].s_last);

    auto rep = fit_dimension(upper);
    rep.slope_last = fit_dimension(last).slope;
    rep.points = std::move(points);
    return rep;
}

namespace {

void attach(DimensionReport& rep, const Interval& closed) {
    if (!closed.exact()) return;
    rep.closed_form = closed.mid();
    rep.abs_error = std::abs(rep.slope - closed.mid());
}

}  // namespace

DimensionReport estimate_madim(const CarpetSystem& sys, const ScaleGrid& grid, const EstimateOptions& opts) {
    auto rep = estimate_from_counts(block_table(sys, grid.n_list, opts), sys.a, sys.b, grid.pairs);
    attach(rep, closed_form_dims(sys, ClosedFormMode::Interval, grid.n_list, opts.caps).madim);
    return rep;
}

DimensionReport estimate_mmdim(const CarpetSystem& sys, const ScaleGrid& grid, const EstimateOptions& opts) {
    auto rep = estimate_from_counts(block_table(sys, grid.n_list, opts), sys.a, sys.b, grid.pairs);
    attach(rep, Interval::point(closed_form_dims(sys, ClosedFormMode::Interval, grid.n_list, opts.caps).mmdim));
    return rep;
}

SpectrumCurve estimate_spectrum(const CarpetSystem& sys, const std::vector<double>& thetas,
                                const std::vector<double>& r_list, const std::vector<std::size_t>& n_list,
                                const EstimateOptions& opts) {
    for (std::size_t i = 0; i < thetas.size(); ++i) {
        if (!(thetas[i] > 0.0 && thetas[i] < 1.0)) throw Error(ErrorKind::ThetaOutOfRange, "theta must lie in (0, 1)");
        if (i > 0 && !(thetas[i] > thetas[i - 1])) {
            throw Error(ErrorKind::InvalidArgument, "theta values must be strictly increasing");
        }
    }
    const auto table = block_table(sys, n_list, opts);
    const auto dims = closed_form_dims(sys, ClosedFormMode::Interval, n_list, opts.caps);

    SpectrumCurve curve;
    curve.transition_theta = phase_transition(sys.a, sys.b);
    curve.entries = parallel_map(thetas.size(), opts.jobs, [&](std::size_t i) {
        const double theta = thetas[i];
        std::vector<ScalePair> pairs;
        for (double r : r_list) pairs.push_back({r, std::pow(r, 1.0 / theta)});
        SpectrumEntry e;
        e.theta = theta;
        e.report = estimate_from_counts(table, sys.a, sys.b, pairs, theta);
        e.closed_form = spectrum_closed_form(dims, sys.a, sys.b, theta).value;
        attach(e.report, e.closed_form);
        return e;
    });
    return curve;
}

std::vector<Verdict> check_bounds(double mmdim, const std::vector<std::pair<double, double>>& spectrum, double madim,
                                  double slack, const std::string& instance) {
    std::vector<Verdict> out;
    auto tag = [&](double theta) { return instance + "@theta=" + format_number(theta); };
    for (const auto& [theta, value] : spectrum) {
        out.push_back({"spectrum_lower", tag(theta), mmdim, value, slack, mmdim <= value + slack + kTol});
        const double cap = std::min(mmdim / (1.0 - theta), madim);
        out.push_back({"spectrum_upper", tag(theta), value, cap, slack, value <= cap + slack + kTol});
    }
    auto sorted = spectrum;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 1; i < sorted.size(); ++i) {
        const double lo = sorted[i - 1].second;
        const double hi = sorted[i].second;
        out.push_back({"spectrum_trend", tag(sorted[i].first), lo, hi, slack, lo <= hi + slack + kTol});
    }
    return out;
}

std::vector<Verdict> subadditivity_check(const CarpetSystem& sys,
                                         const std::vector<std::pair<std::size_t, std::size_t>>& n_pairs,
                                         const std::vector<ScalePair>& scales, const std::string& instance,
                                         const EnumerationCaps& caps) {
    std::map<std::size_t, BlockCounts> cache;
    auto counts = [&](std::size_t n) -> const BlockCounts& {
        auto it = cache.find(n);
        if (it == cache.end()) it = cache.emplace(n, block_counts(sys, n, caps)).first;
        return it->second;
    };
    std::vector<Verdict> out;
    for (const auto& [r, rho] : scales) {
        if (!(rho > 0.0 && rho < r)) throw Error(ErrorKind::ScaleOrder, "need 0 < rho < r");
        const auto ri = scale_indices(r, sys.a, sys.b);
        const auto pi = scale_indices(rho, sys.a, sys.b);
        for (const auto& [n1, n2] : n_pairs) {
            const BigInt joint = sup_cover_count(counts(n1 + n2), ri, pi).cover.count;
            const BigInt split =
                sup_cover_count(counts(n1), ri, pi).cover.count * sup_cover_count(counts(n2), ri, pi).cover.count;
            out.push_back({"subadditivity",
                           instance + "@N=" + std::to_string(n1) + "+" + std::to_string(n2) +
                               ";l=" + std::to_string(ri.l1) + ":" + std::to_string(ri.l2) + "/" +
                               std::to_string(pi.l1) + ":" + std::to_string(pi.l2),
                           static_cast<double>(log_big(joint)), static_cast<double>(log_big(split)), 0.0,
                           joint <= split});
        }
    }
    return out;
}

Verdict order_exchange_check(const std::vector<std::vector<double>>& table, const std::string& instance) {
    if (table.empty() || table.front().empty()) throw Error(ErrorKind::EmptyTable, "order exchange table is empty");
    const std::size_t cols = table.front().size();
    for (const auto& row : table) {
        if (row.size() != cols) throw Error(ErrorKind::InvalidArgument, "order exchange table is ragged");
    }
    double max_min = -std::numeric_limits<double>::infinity();
    for (const auto& row : table) max_min = std::max(max_min, *std::min_element(row.begin(), row.end()));
    double min_max = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < cols; ++c) {
        double col_max = -std::numeric_limits<double>::infinity();
        for (const auto& row : table) col_max = std::max(col_max, row[c]);
        min_max = std::min(min_max, col_max);
    }
    return {"order_exchange", instance, max_min, min_max, 0.0, max_min <= min_max};
}

std::vector<std::vector<double>> carpet_order_table(const CarpetSystem& sys, ScalePair scales,
                                                    std::size_t num_centers, std::size_t m_max) {
    if (num_centers == 0 || m_max == 0) throw Error(ErrorKind::EmptyTable, "order exchange table is empty");
    const auto ri = scale_indices(scales.r, sys.a, sys.b);
    const auto pi = scale_indices(scales.rho, sys.a, sys.b);
    const auto positions = static_cast<std::size_t>(std::max(ri.l2, 1));
    const auto& omega = sys.omega;

    std::vector<std::vector<double>> table(num_centers, std::vector<double>(m_max));
    for (std::size_t c = 0; c < num_centers; ++c) {
        // Center c: one deterministic walk of length m_max per digit position.
        std::vector<Word> walks(positions);
        for (std::size_t m = 0; m < positions; ++m) {
            auto& w = walks[m];
            w.push_back(static_cast<std::uint32_t>((c + m) % omega.size()));
            for (std::size_t t = 1; t < m_max; ++t) {
                const auto& succ = omega.successors(w.back());
                w.push_back(succ[(7 * c + m + t) % succ.size()]);
            }
        }
        for (std::size_t depth = 1; depth <= m_max; ++depth) {
            Center center;
            for (const auto& w : walks) center.emplace_back(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(depth));
            table[c][depth - 1] =
                cover_count_formula(sys, depth, center, ri, pi).log_count / static_cast<double>(depth);
        }
    }
    return table;
}

Verdict bilipschitz_check(const CarpetSystem& sys, const ScaleGrid& grid, double c, const std::string& instance,
                          const EstimateOptions& opts) {
    if (!(c > 0.0 && c <= 1.0)) throw Error(ErrorKind::InvalidScale, "rescaling factor must lie in (0, 1]");
    const auto table = block_table(sys, grid.n_list, opts);
    std::vector<ScalePair> scaled;
    for (const auto& [r, rho] : grid.pairs) scaled.push_back({c * r, c * rho});
    const double base = estimate_from_counts(table, sys.a, sys.b, grid.pairs).slope;
    const double moved = estimate_from_counts(table, sys.a, sys.b, scaled).slope;
    const double e = -std::log(c) / std::log(static_cast<double>(sys.a));
    const double tol = std::abs(e - std::round(e)) < 1e-9 ? 1e-9 : 0.05;
    return {"bilipschitz", instance + "@c=" + format_number(c), base, moved, tol, std::abs(base - moved) <= tol};
}

std::vector<Center> oracle_centers(const CarpetSystem& sys, std::size_t n, const ScaleIndices& r, std::uint64_t limit,
                                   const EnumerationCaps& caps) {
    const auto words = enumerate_words(sys.omega, n, caps).words;
    const auto positions = static_cast<std::size_t>(r.l2);
    std::vector<Center> out;

    auto product = [&](const std::vector<const std::vector<Word>*>& choices) {
        std::vector<std::size_t> digit(choices.size(), 0);
        for (;;) {
            Center c;
            for (std::size_t m = 0; m < choices.size(); ++m) c.push_back((*choices[m])[digit[m]]);
            out.push_back(std::move(c));
            if (out.size() >= limit) return;
            std::size_t m = 0;
            while (m < choices.size() && ++digit[m] == choices[m]->size()) digit[m++] = 0;
            if (m == choices.size()) return;
        }
    };

    const BigInt full = pow_big(BigInt(words.size()), positions);
    if (full <= limit) {
        product(std::vector<const std::vector<Word>*>(positions, &words));
        return out;
    }
    std::vector<Word> by_label;
    std::set<Letters> seen;
    for (const auto& w : words) {
        if (seen.insert(project_b(sys.omega, w)).second) by_label.push_back(w);
    }
    const std::vector<Word> fixed{words.front()};
    std::vector<const std::vector<Word>*> choices;
    for (std::size_t m = 1; m <= positions; ++m) {
        choices.push_back(m <= static_cast<std::size_t>(r.l1) ? &fixed : &by_label);
    }
    product(choices);
    return out;
}

std::vector<Verdict> oracle_sweep(const CarpetSystem& sys, std::size_t n_max, int l_max, const OracleOptions& opts,
                                  std::uint64_t center_limit, const std::string& instance, unsigned jobs) {
    struct Task {
        std::size_t n;
        ScaleCell r;
        ScaleIndices rho;
    };
    const auto cells = scale_cells(sys.a, sys.b, l_max);
    std::vector<Task> tasks;
    for (std::size_t n = 1; n <= n_max; ++n) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            for (std::size_t k = i; k < cells.size(); ++k) {
                ScaleIndices rho = cells[k].idx;
                if (k == i) {
                    if (cells[i].lo == cells[i].hi) continue;  // r = 1 has no finer scale in its cell
                    rho.r = std::sqrt(cells[i].lo * cells[i].rep);
                }
                tasks.push_back({n, cells[i], rho});
            }
        }
    }
    return parallel_map(tasks.size(), jobs, [&](std::size_t t) {
        const auto& task = tasks[t];
        const auto centers = oracle_centers(sys, task.n, task.r.idx, center_limit, opts.caps);
        std::size_t mismatches = 0;
        for (const auto& c : centers) {
            const auto f = cover_count_formula(sys, task.n, c, task.r.idx, task.rho);
            const auto o = cover_count_oracle(sys, task.n, c, task.r.idx, task.rho, opts);
            if (f.count != o.count || f.case_tag != o.case_tag) ++mismatches;
        }
        const auto& ri = task.r.idx;
        Verdict v;
        v.check = "oracle_equivalence";
        v.instance = instance + "@N=" + std::to_string(task.n) + ";r=" + std::to_string(ri.l1) + ":" +
                     std::to_string(ri.l2) + ";rho=" + std::to_string(task.rho.l1) + ":" +
                     std::to_string(task.rho.l2) + ";centers=" + std::to_string(centers.size());
        v.lhs = static_cast<double>(mismatches);
        v.rhs = 0.0;
        v.pass = mismatches == 0;
        return v;
    });
}

std::vector<WanderingRow> wandering_demo(std::size_t m_max, const std::vector<std::size_t>& depths, std::size_t window,
                                         double r, double rho) {
    if (m_max > 64 || window > 64) throw Error(ErrorKind::CapExceeded, "m_max and W are capped at 64");
    if (!(rho > 0.0 && rho < r)) throw Error(ErrorKind::ScaleOrder, "need 0 < rho < r");
    const double tail = std::ldexp(1.0, 1 - static_cast<int>(window));
    if (!(rho > tail)) throw Error(ErrorKind::InvalidScale, "rho must exceed the window truncation 2^(1-W)");
    // Coordinates outside the window move d_M by at most 2^(1-W); inside,
    // cells of side delta keep d_M below the remaining budget (sum of 2^-|i| is 3).
    const double delta = (rho - tail) / 3.0;

    std::vector<WanderingRow> out;
    for (std::size_t depth : depths) {
        if (depth == 0 || depth > 1'000'000) throw Error(ErrorKind::CapExceeded, "M must lie in [1, 1e6]");
        if (m_max == 0) {
            out.push_back({depth, 0.0});
            continue;
        }
        const long long lo_j = -static_cast<long long>(window);
        const long long hi_j = static_cast<long long>(depth) - 1 + static_cast<long long>(window);
        auto cells = [&](long long j, std::size_t m) {
            const long long dist = j < 0 ? -j : (j >= static_cast<long long>(depth) ? j - (static_cast<long long>(depth) - 1) : 0);
            const double len = std::min(1.0 / static_cast<double>(m), 2.0 * r * std::ldexp(1.0, static_cast<int>(dist)));
            return std::log(std::max(1.0, std::ceil(len / delta)));
        };
        // Per-class log cell counts, combined with log-sum-exp; the extra 1 is
        // the cell holding every class whose support misses the window.
        std::vector<double> logs{0.0};
        for (std::size_t m = 1; m <= m_max; ++m) {
            const auto mm = static_cast<long long>(m);
            for (long long n = lo_j - mm + 1; n <= hi_j; ++n) {
                double acc = 0.0;
                for (long long j = std::max(n, lo_j); j <= std::min(n + mm - 1, hi_j); ++j) acc += cells(j, m);
                logs.push_back(acc);
            }
        }
        const double top = *std::max_element(logs.begin(), logs.end());
        double sum = 0.0;
        for (double v : logs) sum += std::exp(v - top);
        out.push_back({depth, (top + std::log(sum)) / static_cast<double>(depth)});
    }
    return out;
}

}  // namespace assouad
