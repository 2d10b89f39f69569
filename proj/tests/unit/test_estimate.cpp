#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"

#include "assouad/estimate.hpp"

#include <cmath>
#include <limits>

using namespace assouad;
using namespace fixtures;

namespace {

const double kMmdimFour = 1.0 + std::log(2.0) / std::log(3.0);

// Normal equations in long double, for comparison with the library fit.
std::pair<long double, long double> ols(const std::vector<std::pair<double, double>>& pts) {
    long double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [x, y] : pts) {
        n += 1;
        sx += x;
        sy += y;
        sxx += static_cast<long double>(x) * x;
        sxy += static_cast<long double>(x) * y;
    }
    const long double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return {slope, (sy - slope * sx) / n};
}

ScaleGrid small_grid(std::uint32_t a, std::uint32_t b, int k_max, std::size_t n_max) {
    auto g = default_madim_grid(a, b, k_max);
    g.n_list.clear();
    for (std::size_t n = 1; n <= n_max; ++n) g.n_list.push_back(n);
    return g;
}

}  // namespace

TEST_CASE("fit_dimension") {
    std::vector<std::pair<double, double>> line;
    for (int i = 0; i < 6; ++i) line.emplace_back(i * 0.7, 2.0 * i * 0.7 + 0.3);
    const auto rep = fit_dimension(line);
    CHECK(rep.slope == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(rep.intercept == doctest::Approx(0.3).epsilon(1e-12));
    CHECK(rep.residual < 1e-12);
    CHECK(rep.points_used == 6);

    CHECK(error_kind([] { fit_dimension({{1.0, 2.0}, {1.0, 3.0}, {1.0, 4.0}}); }) == ErrorKind::DegenerateGrid);
    CHECK(error_kind([] { fit_dimension({}); }) == ErrorKind::DegenerateGrid);
}

TEST_CASE("property: least squares against the normal equations") {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    for (int trial = 0; trial < 300; ++trial) {
        std::vector<std::pair<double, double>> pts;
        const double s = u(rng), c = u(rng);
        const auto n = 2 + rng() % 30;
        for (std::size_t i = 0; i < n; ++i) {
            const double x = u(rng);
            pts.emplace_back(x, s * x + c + 0.1 * u(rng));
        }
        const auto rep = fit_dimension(pts);
        const auto [slope, icpt] = ols(pts);
        CHECK(rep.slope == doctest::Approx(static_cast<double>(slope)).epsilon(1e-9));
        CHECK(rep.intercept == doctest::Approx(static_cast<double>(icpt)).epsilon(1e-9));
        CHECK(rep.residual >= 0.0);
        CHECK(std::isfinite(rep.slope));
        double worst = 0.0;
        for (const auto& [x, y] : pts) worst = std::max(worst, std::abs(y - (rep.slope * x + rep.intercept)));
        CHECK(rep.residual == doctest::Approx(worst));
    }
}

TEST_CASE("grids") {
    const auto g = default_madim_grid(3, 2, 20);
    REQUIRE(!g.pairs.empty());
    CHECK(g.n_list == default_n_list());
    std::set<int> case2_ratios;
    for (const auto& [r, rho] : g.pairs) {
        CHECK(0.0 < rho);
        CHECK(rho < r);
        CHECK(r <= 1.0);
        const auto ri = scale_indices(r, 3, 2);
        const auto pi = scale_indices(rho, 3, 2);
        if (classify(ri, pi) == CoverCase::Case2) case2_ratios.insert(pi.l1 - ri.l1);
    }
    for (int k = 1; k <= 20; ++k) CHECK(case2_ratios.count(k) == 1);

    const auto big = default_madim_grid(3, 2, 200);
    for (const auto& [r, rho] : big.pairs) CHECK(rho > 0.0);

    const auto u = uniform_scale_grid(3, 20);
    CHECK(u.pairs.size() == 19);
    CHECK(u.pairs.front().r == doctest::Approx(1.0 / 3.0));
    CHECK(u.pairs.back().rho == doctest::Approx(std::pow(3.0, -20)));

    const auto rl = default_spectrum_r_list(3);
    CHECK(rl.size() == 145);
    CHECK(rl.front() == doctest::Approx(1.0 / 9.0));

    CHECK(error_kind([] { default_madim_grid(3, 2, 0); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("madim and mmdim estimates") {
    const auto full = carpet(full_product_sft(3, 2));
    const auto four = carpet(four_pair());
    const auto grid = default_madim_grid(3, 2, 20);

    const auto rf = estimate_madim(full, grid);
    CHECK(std::abs(rf.slope - 2.0) <= 0.05);
    REQUIRE(rf.closed_form.has_value());
    CHECK(*rf.abs_error == doctest::Approx(std::abs(rf.slope - 2.0)));

    const auto r4 = estimate_madim(four, grid);
    CHECK(std::abs(r4.slope - 2.0) <= 0.05);

    const auto m4 = estimate_mmdim(four, uniform_scale_grid(3, 20));
    CHECK(std::abs(m4.slope - kMmdimFour) <= 0.05);
    CHECK(r4.slope > m4.slope);

    const auto single = carpet(make_sft(3, 2, {{0, 0}}, FullTransitions{}));
    CHECK(std::abs(estimate_madim(single, small_grid(3, 2, 6, 3)).slope) < 1e-12);
}

TEST_CASE("full products reconstruct exact integer logs") {
    const auto sys = carpet(full_product_sft(3, 2));
    const auto grid = small_grid(3, 2, 8, 4);
    const auto table = block_table(sys, grid.n_list);
    const auto rep = estimate_from_counts(table, 3, 2, grid.pairs);
    for (const auto& p : rep.points) {
        const auto ri = scale_indices(p.r, 3, 2);
        const auto pi = scale_indices(p.rho, 3, 2);
        // Per unit N: dl1 factors of a and dl2 factors of b, whatever the case.
        const double exact = (pi.l1 - ri.l1) * std::log(3.0) + (pi.l2 - ri.l2) * std::log(2.0);
        CHECK(p.s_upper == doctest::Approx(exact).epsilon(1e-12));
        CHECK(p.s_last == doctest::Approx(exact).epsilon(1e-12));
    }
}

TEST_CASE("property: fitted slopes stay inside the closed-form band") {
    // Irreducible systems with positive entropy; transient parts with polynomial
    // growth converge like log N / N and are covered by the next case.
    std::mt19937_64 rng(23);
    int tested = 0;
    while (tested < 12) {
        const auto omega = random_sft(rng, 3, 2, 6, 0.6);
        if (!irreducible(omega) || count_words(omega, 12) <= 12 * 12) continue;
        ++tested;
        const auto sys = carpet(omega);
        const auto grid = default_madim_grid(3, 2, 20);
        const auto cf = closed_form_dims(sys, ClosedFormMode::Interval, grid.n_list);
        const auto rep = estimate_madim(sys, grid);
        CAPTURE(tested);
        CHECK(rep.slope >= -1e-9);
        CHECK(rep.slope <= 2.0 + 1e-9);
        CHECK(rep.slope >= cf.mmdim - 0.1);
        CHECK(rep.slope <= cf.madim.hi + 0.1);
    }
}

TEST_CASE("zero-entropy transients bias the slope upward and shrink with N") {
    // Words look like 1^i 2^j 0^k: counts grow quadratically, entropy is 0.
    const PairSymbol p{0, 1}, q{1, 0}, s{2, 0};
    const auto omega = make_sft(3, 2, {p, q, s}, TransitionList{{p, p}, {q, q}, {q, s}, {s, p}, {s, s}});
    const auto sys = carpet(omega);
    const auto cf = closed_form_dims(sys, ClosedFormMode::Interval);
    CHECK(cf.madim.hi == 0.0);
    double prev = std::numeric_limits<double>::infinity();
    for (std::size_t n_max : {2, 4, 8, 16}) {
        const auto rep = estimate_madim(sys, small_grid(3, 2, 12, n_max));
        CHECK(rep.slope > cf.madim.hi);
        CHECK(rep.slope < prev);
        prev = rep.slope;
    }
}

TEST_CASE("spectrum estimates") {
    const auto four = carpet(four_pair());
    const auto curve = estimate_spectrum(four, {0.3, 0.5, 0.8}, default_spectrum_r_list(3), default_n_list());
    CHECK(curve.transition_theta == doctest::Approx(std::log(2.0) / std::log(3.0)));
    REQUIRE(curve.entries.size() == 3);
    CHECK(std::abs(curve.entries[1].report.slope - 1.84682) <= 0.05);
    CHECK(std::abs(curve.entries[2].report.slope - 2.0) <= 0.05);
    for (const auto& e : curve.entries) {
        REQUIRE(e.report.abs_error.has_value());
        CHECK(*e.report.abs_error <= 0.05);
        for (const auto& p : e.report.points) CHECK(p.theta == e.theta);
    }

    const auto full = carpet(full_product_sft(3, 2));
    for (const auto& e : estimate_spectrum(full, {0.2, 0.6}, default_spectrum_r_list(3), {1, 2}).entries) {
        CHECK(std::abs(e.report.slope - 2.0) <= 0.05);
    }

    const auto rl = default_spectrum_r_list(3);
    CHECK(error_kind([&] { estimate_spectrum(four, {0.0}, rl, {1}); }) == ErrorKind::ThetaOutOfRange);
    CHECK(error_kind([&] { estimate_spectrum(four, {0.5, 0.4}, rl, {1}); }) == ErrorKind::InvalidArgument);
    CHECK(error_kind([&] { estimate_spectrum(four, {0.5}, rl, {}); }) == ErrorKind::EmptyInput);
}

TEST_CASE("check_bounds") {
    const auto cf = closed_form_dims(carpet(four_pair()));
    std::vector<std::pair<double, double>> spec;
    for (int i = 1; i <= 99; ++i) {
        const double t = i / 100.0;
        spec.emplace_back(t, spectrum_closed_form(cf, 3, 2, t).value.lo);
    }
    for (const auto& v : check_bounds(cf.mmdim, spec, cf.madim.lo, 0.0, "four")) CHECK(v.pass);

    auto bad = spec;
    bad[40].second = 3.0;
    std::size_t failed = 0;
    for (const auto& v : check_bounds(cf.mmdim, bad, cf.madim.lo, 0.0, "four")) failed += v.pass ? 0 : 1;
    CHECK(failed >= 1);

    const auto low = check_bounds(2.0, {{0.5, 1.5}}, 2.0, 0.1, "x");
    CHECK_FALSE(low.front().pass);
    CHECK(low.front().check == "spectrum_lower");
}

TEST_CASE("subadditivity") {
    const auto scales = std::vector<ScalePair>{{1.0 / 3.0, 1.0 / 9.0}, {0.5, 1.0 / 81.0}, {0.2, 0.01}};
    for (const auto& v : subadditivity_check(carpet(full_product_sft(3, 2)), {{1, 1}, {2, 3}}, scales, "full")) {
        CHECK(v.pass);
        CHECK(v.lhs == doctest::Approx(v.rhs).epsilon(1e-12));
    }
    for (const auto& v : subadditivity_check(carpet(four_pair()), {{2, 3}}, scales, "four")) CHECK(v.pass);
    for (const auto& v : subadditivity_check(carpet(golden_mean_pair()), {{1, 1}}, scales, "gm")) CHECK(v.pass);
    CHECK(error_kind([] { subadditivity_check(carpet(four_pair()), {{1, 1}}, {{0.1, 0.2}}, "x"); }) ==
          ErrorKind::ScaleOrder);
}

TEST_CASE("order exchange") {
    CHECK(order_exchange_check({{1.0, 1.0}, {1.0, 1.0}}, "c").pass);
    CHECK(order_exchange_check({{1.0, 1.0}, {1.0, 1.0}}, "c").lhs == 1.0);

    std::vector<std::vector<double>> sep(4, std::vector<double>(5));
    for (int x = 0; x < 4; ++x) {
        for (int m = 0; m < 5; ++m) sep[x][m] = x * 0.5 + std::sin(m);
    }
    const auto v = order_exchange_check(sep, "sep");
    CHECK(v.pass);
    CHECK(v.lhs == doctest::Approx(v.rhs));

    const auto gap = order_exchange_check({{0.0, 1.0}, {1.0, 0.0}}, "gap");
    CHECK(gap.pass);
    CHECK(gap.lhs == 0.0);
    CHECK(gap.rhs == 1.0);

    CHECK(error_kind([] { order_exchange_check({}, "e"); }) == ErrorKind::EmptyTable);
    CHECK(error_kind([] { order_exchange_check({{}}, "e"); }) == ErrorKind::EmptyTable);
    CHECK(error_kind([] { order_exchange_check({{1.0}, {1.0, 2.0}}, "e"); }) == ErrorKind::InvalidArgument);

    for (const auto& omega : {four_pair(), golden_mean_pair(), five_symbol(), full_product_sft(3, 2)}) {
        const auto table = carpet_order_table(carpet(omega), {1.0 / 3.0, 1.0 / 27.0}, 4, 6);
        CHECK(table.size() == 4);
        CHECK(order_exchange_check(table, "carpet").pass);
    }
}

TEST_CASE("property: max-min never exceeds min-max") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 500; ++trial) {
        std::vector<std::vector<double>> t(1 + rng() % 6, std::vector<double>(1 + rng() % 6));
        for (auto& row : t) {
            for (double& x : row) x = u(rng);
        }
        CHECK(order_exchange_check(t, "rand").pass);
    }
}

TEST_CASE("bi-Lipschitz rescaling") {
    const auto four = carpet(four_pair());
    const auto grid = small_grid(3, 2, 12, 4);
    const auto same = bilipschitz_check(four, grid, 1.0, "four");
    CHECK(same.pass);
    CHECK(same.lhs == same.rhs);
    const auto third = bilipschitz_check(four, grid, 1.0 / 3.0, "four");
    CHECK(third.pass);
    CHECK(third.slack == 1e-9);
    CHECK(std::abs(third.lhs - third.rhs) <= 1e-9);
    const auto odd = bilipschitz_check(four, grid, 0.7, "four");
    CHECK(odd.slack == 0.05);
    CHECK(odd.pass);
    CHECK(error_kind([&] { bilipschitz_check(four, grid, 0.0, "x"); }) == ErrorKind::InvalidScale);
    CHECK(error_kind([&] { bilipschitz_check(four, grid, 2.0, "x"); }) == ErrorKind::InvalidScale);
}

TEST_CASE("oracle sweep") {
    const auto gm = carpet(golden_mean_pair());
    const auto verdicts = oracle_sweep(gm, 2, 3, {}, 4096, "gm");
    CHECK(!verdicts.empty());
    for (const auto& v : verdicts) {
        CHECK(v.pass);
        CHECK(v.lhs == 0.0);
    }
    const auto again = oracle_sweep(gm, 2, 3, {}, 4096, "gm", 3);
    REQUIRE(again.size() == verdicts.size());
    for (std::size_t i = 0; i < again.size(); ++i) CHECK(again[i].instance == verdicts[i].instance);

    const auto four = carpet(four_pair());
    const auto r = scale_indices(1.0 / 27.0, 3, 2);
    CHECK(oracle_centers(four, 1, r, 1u << 20).size() == 4u * 4 * 4 * 4 * 4);
    const auto capped = oracle_centers(four, 2, r, 100);
    CHECK(!capped.empty());
    CHECK(capped.size() <= 100);
    for (const auto& c : capped) CHECK(c.size() == static_cast<std::size_t>(r.l2));
}

TEST_CASE("block table is identical across worker counts") {
    const auto sys = carpet(five_symbol());
    const auto one = block_table(sys, default_n_list(), {1, {}});
    const auto many = block_table(sys, default_n_list(), {4, {}});
    REQUIRE(one.size() == many.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].n == many[i].n);
        CHECK(one[i].omega_n == many[i].omega_n);
        CHECK(one[i].sup_fiber.witness == many[i].sup_fiber.witness);
    }
    CHECK(error_kind([&] { block_table(sys, {}); }) == ErrorKind::EmptyInput);
}

TEST_CASE("wandering demo") {
    for (const auto& row : wandering_demo(0, {1, 8, 64}, 16, 0.5, 1.0 / 32.0)) CHECK(row.bound == 0.0);

    const std::vector<std::size_t> depths{16, 32, 64, 128};
    const auto rows = wandering_demo(8, depths, 16, 0.5, 1.0 / 32.0);
    REQUIRE(rows.size() == depths.size());
    for (std::size_t i = 1; i < rows.size(); ++i) {
        CHECK(rows[i].bound < rows[i - 1].bound);
        const double m = static_cast<double>(rows[i - 1].depth);
        CHECK(rows[i].bound <= rows[i - 1].bound / 2.0 + std::log(2.0 * m * 8.0 * 16.0) / (2.0 * m));
    }
    CHECK(rows[2].bound <= (8.0 * std::log(32.0) + std::log(64.0 * 8.0 * 33.0)) / 64.0);
    for (const auto& row : rows) CHECK(row.bound > 0.0);

    CHECK(error_kind([] { wandering_demo(65, {1}, 16, 0.5, 0.1); }) == ErrorKind::CapExceeded);
    CHECK(error_kind([] { wandering_demo(8, {1}, 65, 0.5, 0.1); }) == ErrorKind::CapExceeded);
    CHECK(error_kind([] { wandering_demo(8, {0}, 16, 0.5, 0.1); }) == ErrorKind::CapExceeded);
    CHECK(error_kind([] { wandering_demo(8, {2'000'000}, 16, 0.5, 0.1); }) == ErrorKind::CapExceeded);
    CHECK(error_kind([] { wandering_demo(8, {1}, 16, 0.1, 0.5); }) == ErrorKind::ScaleOrder);
    CHECK(error_kind([] { wandering_demo(8, {1}, 2, 0.5, 0.1); }) == ErrorKind::InvalidScale);
}
