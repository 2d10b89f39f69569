// Acceptance runner: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include "../unit/fixtures.hpp"

#include "assouad/estimate.hpp"
#include "assouad/fullshift.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

using namespace assouad;
using namespace fixtures;

namespace {

int failures = 0;

void report(const std::string& id, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << id << ": " << detail << std::endl;
    failures += ok ? 0 : 1;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.10g", x);
    return buf;
}

struct Named {
    std::string name;
    CarpetSystem sys;
};

std::vector<Named> fixture_carpets() {
    return {{"full", carpet(full_product_sft(3, 2))},
            {"sub_product", carpet(make_sft(3, 2, {{0, 0}, {0, 1}, {2, 0}, {2, 1}}, FullTransitions{}))},
            {"four_pair", carpet(four_pair())},
            {"golden_mean_pair", carpet(golden_mean_pair())}};
}

std::vector<double> theta_grid_99() {
    std::vector<double> out;
    for (int i = 1; i <= 99; ++i) out.push_back(i / 100.0);
    return out;
}

void ac1() {
    const auto t0 = std::chrono::steady_clock::now();
    std::size_t verdicts = 0, mismatched = 0;
    OracleOptions opts;
    opts.exhaustive_limit = 100'000;
    for (const auto& f : fixture_carpets()) {
        for (const auto& v : oracle_sweep(f.sys, 3, 4, opts, 4096, f.name)) {
            ++verdicts;
            mismatched += v.pass ? 0 : 1;
        }
    }
    const double t = seconds_since(t0);
    report("AC1 oracle equivalence", mismatched == 0 && t < 60.0,
           std::to_string(verdicts) + " cells, " + std::to_string(mismatched) + " with mismatches, " + fmt(t) + " s");
}

void ac2() {
    const auto sys = carpet(full_product_sft(3, 2));
    const auto cf = closed_form_dims(sys);
    double worst = 0.0;
    for (double th : theta_grid_99()) worst = std::max(worst, std::abs(spectrum_closed_form(cf, 3, 2, th).value.mid() - 2.0));
    const bool ok = std::abs(cf.madim.mid() - 2.0) <= 1e-9 && std::abs(cf.mmdim - 2.0) <= 1e-9 &&
                    cf.uniform_fibres == true && worst <= 1e-9;
    report("AC2 full pair closed forms", ok,
           "madim " + fmt(cf.madim.mid()) + ", mmdim " + fmt(cf.mmdim) + ", uniform " +
               (cf.uniform_fibres.value_or(false) ? "true" : "false") + ", max |spectrum - 2| " + fmt(worst));
}

void ac3() {
    const auto sys = carpet(four_pair());
    const auto cf = closed_form_dims(sys);
    const double mm = 1.0 + std::log(2.0) / std::log(3.0);
    const double mid = spectrum_closed_form(cf, 3, 2, 0.5).value.mid();
    const double tt = phase_transition(3, 2);
    const auto at = spectrum_closed_form(cf, 3, 2, tt);
    double above = 0.0;
    for (double th : theta_grid_99()) {
        if (th > tt) above = std::max(above, std::abs(spectrum_closed_form(cf, 3, 2, th).value.mid() - cf.madim.mid()));
    }
    const double branch_gap = std::max(std::abs(at.corollary.mid() - cf.madim.mid()), std::abs(at.value.mid() - at.corollary.mid()));
    const bool ok = std::abs(cf.madim.mid() - 2.0) <= 1e-9 && std::abs(cf.mmdim - mm) <= 1e-9 &&
                    cf.uniform_fibres == false && std::abs(mid - 1.84682) <= 1e-5 && branch_gap <= 1e-9 &&
                    above <= 1e-9;
    report("AC3 four pair closed forms", ok,
           "madim " + fmt(cf.madim.mid()) + ", mmdim " + fmt(cf.mmdim) + ", spectrum(0.5) " + fmt(mid) +
               ", branch gap " + fmt(branch_gap) + ", max deviation above transition " + fmt(above));
}

struct Estimates {
    DimensionReport madim;
    DimensionReport mmdim;
    SpectrumCurve curve;
    ClosedForm closed;
};

std::vector<Named> estimate_fixtures() {
    return {{"full", carpet(full_product_sft(3, 2))}, {"four_pair", carpet(four_pair())}};
}

std::vector<Estimates> estimates;

void ac4() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> thetas{0.3, 0.5, 0.6309297536, 0.8};
    bool ok = true;
    std::string detail;
    for (const auto& f : estimate_fixtures()) {
        Estimates e;
        e.closed = closed_form_dims(f.sys);
        e.madim = estimate_madim(f.sys, default_madim_grid(3, 2, 20));
        e.mmdim = estimate_mmdim(f.sys, uniform_scale_grid(3, 20));
        e.curve = estimate_spectrum(f.sys, thetas, default_spectrum_r_list(3), default_n_list());
        double worst = std::abs(e.madim.slope - e.closed.madim.mid());
        detail += f.name + " madim " + fmt(e.madim.slope);
        for (const auto& entry : e.curve.entries) {
            const double err = std::abs(entry.report.slope - entry.closed_form.mid());
            worst = std::max(worst, err);
            detail += ", s(" + fmt(entry.theta) + ") " + fmt(entry.report.slope);
        }
        detail += "; ";
        ok = ok && worst <= 0.05;
        estimates.push_back(std::move(e));
    }
    const double t = seconds_since(t0);
    report("AC4 estimator convergence", ok && t < 300.0, detail + fmt(t) + " s");
}

void ac5() {
    std::size_t checked = 0, failed = 0;
    auto tally = [&](const std::vector<Verdict>& vs) {
        for (const auto& v : vs) {
            ++checked;
            failed += v.pass ? 0 : 1;
        }
    };
    for (const auto& f : fixture_carpets()) {
        const auto cf = closed_form_dims(f.sys, ClosedFormMode::Interval);
        std::vector<std::pair<double, double>> lo, hi;
        for (double th : theta_grid_99()) {
            const auto s = spectrum_closed_form(cf, 3, 2, th).value;
            lo.emplace_back(th, s.lo);
            hi.emplace_back(th, s.hi);
        }
        tally(check_bounds(cf.mmdim, lo, cf.madim.lo, 0.0, f.name + ":closed_lo"));
        tally(check_bounds(cf.mmdim, hi, cf.madim.hi, 0.0, f.name + ":closed_hi"));
    }
    for (const auto& e : estimates) {
        std::vector<std::pair<double, double>> spec;
        for (const auto& entry : e.curve.entries) spec.emplace_back(entry.theta, entry.report.slope);
        tally(check_bounds(e.mmdim.slope, spec, e.madim.slope, 0.1, "estimate"));
    }
    report("AC5 inequality suite", checked > 0 && failed == 0,
           std::to_string(checked) + " comparisons, " + std::to_string(failed) + " failures");
}

void ac6() {
    std::size_t checked = 0, failed = 0;
    std::vector<std::pair<std::size_t, std::size_t>> n_pairs;
    for (std::size_t n1 = 1; n1 <= 6; ++n1) {
        for (std::size_t n2 = n1; n1 + n2 <= 6; ++n2) n_pairs.emplace_back(n1, n2);
    }
    const auto cells = scale_cells(3, 2, 4);
    std::vector<ScalePair> scales;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t k = i + 1; k < cells.size(); ++k) scales.push_back({cells[i].rep, cells[k].rep});
    }
    auto fx = fixture_carpets();
    fx.push_back({"five_symbol", carpet(five_symbol())});
    for (const auto& f : fx) {
        for (const auto& v : subadditivity_check(f.sys, n_pairs, scales, f.name)) {
            ++checked;
            failed += v.pass ? 0 : 1;
        }
        for (ScalePair sp : {ScalePair{1.0 / 3.0, 1.0 / 9.0}, ScalePair{0.5, 1.0 / 27.0}, ScalePair{0.3, 0.01}}) {
            const auto v = order_exchange_check(carpet_order_table(f.sys, sp, 4, 6), f.name);
            ++checked;
            failed += v.pass ? 0 : 1;
        }
    }
    report("AC6 subadditivity and max-min ordering", checked > 0 && failed == 0,
           std::to_string(checked) + " checks, " + std::to_string(failed) + " failures");
}

void ac7() {
    bool ok = true;
    std::string detail;
    for (const auto& f : estimate_fixtures()) {
        const auto grid = default_madim_grid(3, 2, 20);
        const auto third = bilipschitz_check(f.sys, grid, 1.0 / 3.0, f.name);
        const auto odd = bilipschitz_check(f.sys, grid, 0.7, f.name);
        ok = ok && third.pass && odd.pass && std::abs(third.lhs - third.rhs) <= 1e-9 &&
             std::abs(odd.lhs - odd.rhs) <= 0.05;
        detail += f.name + " |d|(1/3) " + fmt(std::abs(third.lhs - third.rhs)) + ", |d|(0.7) " +
                  fmt(std::abs(odd.lhs - odd.rhs)) + "; ";
    }
    report("AC7 bi-Lipschitz slope invariance", ok, detail);
}

void ac8() {
    const auto f = f_lambda_alphabet(1.0, 64);
    bool ok = true;
    std::string detail;
    for (double th : {0.25, 0.5, 0.75}) {
        std::vector<std::pair<double, double>> xy;
        for (const auto& p : sinfty_curve(f, th, default_sinfty_r_list(f, th))) {
            if (p.in_window) xy.emplace_back(p.log_ratio, p.upper);
        }
        const double slope = fit_dimension(xy).slope;
        const double ref = std::min(1.0 / (2.0 * (1.0 - th)), 1.0);
        ok = ok && std::abs(slope - ref) <= 0.15;
        detail += "slope(" + fmt(th) + ") " + fmt(slope) + " vs " + fmt(ref) + "; ";
    }
    std::mt19937_64 rng(20261016);
    std::uniform_int_distribution<int> size(1, 12);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::size_t bad = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        std::vector<double> pts(static_cast<std::size_t>(size(rng)));
        for (auto& p : pts) p = unit(rng);
        const auto alph = make_alphabet(pts);
        const double r = 0.05 + 0.9 * unit(rng);
        const double rho = r * (0.01 + 0.98 * unit(rng));
        const double x = pts[static_cast<std::size_t>(trial) % pts.size()];
        if (interval_cover_count(alph, x, r, rho) > interval_pack_count(alph, x, r, rho / 4.0)) ++bad;
    }
    ok = ok && bad == 0;
    report("AC8 full-shift spectrum window", ok, detail + "cover > pack(rho/4) in " + std::to_string(bad) + " of 1000");
}

void ac9() {
    const auto rows = wandering_demo(8, {16, 32, 64, 128}, 16, 0.5, 1.0 / 32.0);
    bool decreasing = rows.size() == 4;
    std::string detail;
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0) decreasing = decreasing && rows[i].bound < rows[i - 1].bound;
        detail += "M=" + std::to_string(rows[i].depth) + " " + fmt(rows[i].bound) + "; ";
    }
    const double envelope = std::log(128.0 * 8.0 * 33.0) / 128.0;
    const bool halved = rows.size() == 4 && rows[3].bound <= rows[1].bound / 2.0 + envelope;
    report("AC9 non-wandering consistency", decreasing && halved, detail + "envelope " + fmt(envelope));
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void ac10() {
    const std::string config = std::string(ASSOUAD_SOURCE_DIR) + "/configs/four_pair.json";
    int codes[2];
    std::string csv[2];
    const char* jobs[2] = {"1", "8"};
    for (int i = 0; i < 2; ++i) {
        const std::string dir = "acceptance_out/jobs" + std::string(jobs[i]);
        const std::string cmd = std::string("\"") + ASSOUAD_CLI_PATH + "\" verify --config \"" + config + "\" --out " +
                                dir + " --jobs " + jobs[i] + " > /dev/null 2>&1";
        codes[i] = std::system(cmd.c_str());
        csv[i] = slurp(dir + "/verify.csv");
    }
    const bool ok = codes[0] == 0 && codes[1] == 0 && !csv[0].empty() && csv[0] == csv[1];
    report("AC10 determinism across jobs", ok,
           "exit codes " + std::to_string(codes[0]) + "/" + std::to_string(codes[1]) + ", " +
               std::to_string(csv[0].size()) + " bytes, " + (csv[0] == csv[1] ? "identical" : "different"));
}

}  // namespace

int main() {
    try {
        ac1();
        ac2();
        ac3();
        ac4();
        ac5();
        ac6();
        ac7();
        ac8();
        ac9();
        ac10();
    } catch (const std::exception& e) {
        std::cout << "[FAIL] aborted: " << e.what() << std::endl;
        return 2;
    }
    std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
    return failures == 0 ? 0 : 1;
}
