#include "assouad/commands.hpp"

#include "assouad/estimate.hpp"
#include "assouad/format.hpp"
#include "assouad/parallel.hpp"
#include "assouad/subshift_json.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

namespace assouad {

namespace {

using nlohmann::json;

constexpr double kExactTol = 1e-9;

std::string opt(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

struct DimRow {
    std::optional<double> theta, r, rho;
    std::optional<std::size_t> n;
    std::optional<double> log_ratio, s_upper, s_last, slope, closed_form, abs_err;
};

const char* kDimHeader = "theta,r,rho,N,log_ratio,S_upper,S_last,slope,closed_form,abs_err\n";
const char* kVerdictHeader = "check,instance,lhs,rhs,slack,pass\n";

std::string csv_line(const DimRow& row) {
    std::ostringstream out;
    out << opt(row.theta) << ',' << opt(row.r) << ',' << opt(row.rho) << ','
        << (row.n ? std::to_string(*row.n) : std::string()) << ',' << opt(row.log_ratio) << ','
        << opt(row.s_upper) << ',' << opt(row.s_last) << ',' << opt(row.slope) << ',' << opt(row.closed_form)
        << ',' << opt(row.abs_err) << '\n';
    return out.str();
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + '"';
}

std::string csv_line(const Verdict& v) {
    std::ostringstream out;
    out << csv_field(v.check) << ',' << csv_field(v.instance) << ',' << format_number(v.lhs) << ',' << format_number(v.rhs) << ','
        << format_number(v.slack) << ',' << (v.pass ? "true" : "false") << '\n';
    return out.str();
}

std::filesystem::path out_path(const RunConfig& cfg, const std::string& file) {
    std::filesystem::create_directories(cfg.output_dir);
    return std::filesystem::path(cfg.output_dir) / file;
}

void write_text(const RunConfig& cfg, const std::string& file, const std::string& text) {
    std::ofstream out(out_path(cfg, file), std::ios::binary);
    if (!out) throw Error(ErrorKind::ConfigSchema, "output.dir: cannot write " + file);
    out << text;
}

void write_json(const RunConfig& cfg, const std::string& file, const json& doc) {
    write_text(cfg, file, doc.dump(2) + "\n");
}

json num(double x) { return json(round12(x)); }

json interval_json(const Interval& iv) {
    if (iv.exact()) return num(iv.mid());
    return json{{"lo", num(iv.lo)}, {"hi", num(iv.hi)}};
}

std::vector<std::size_t> n_list_of(const RunConfig& cfg) {
    std::vector<std::size_t> out;
    for (std::size_t n = 1; n <= cfg.grid.n_max; ++n) out.push_back(n);
    return out;
}

EstimateOptions estimate_options(const RunConfig& cfg) { return {cfg.jobs, cfg.caps.enumeration}; }

ClosedFormMode closed_mode(const RunConfig& cfg) {
    return cfg.mode == RunMode::Exact ? ClosedFormMode::Exact : ClosedFormMode::Interval;
}

ScaleGrid madim_grid(const RunConfig& cfg) {
    const auto& sys = *cfg.carpet;
    auto grid = default_madim_grid(sys.a, sys.b, cfg.grid.k_max);
    grid.n_list = n_list_of(cfg);
    return grid;
}

ScaleGrid mmdim_grid(const RunConfig& cfg) {
    auto grid = uniform_scale_grid(cfg.carpet->a, std::max(cfg.grid.k_max, 3));
    grid.n_list = n_list_of(cfg);
    return grid;
}

int verdict_exit(const std::vector<Verdict>& verdicts, std::ostream& log, const std::string& what) {
    std::size_t failed = 0;
    for (const auto& v : verdicts) failed += v.pass ? 0 : 1;
    log << what << ": " << verdicts.size() << " checks, " << failed << " failed\n";
    return failed == 0 ? kExitOk : kExitVerdictFailed;
}

// ---- fullshift helpers ----

struct FullshiftFit {
    double theta = 0.0;
    std::vector<SinftyPoint> points;
    std::optional<DimensionReport> report;
    std::optional<double> reference;
};

FullshiftFit fullshift_fit(const RealAlphabet& alphabet, double theta) {
    FullshiftFit fit;
    fit.theta = theta;
    fit.points = sinfty_curve(alphabet, theta, default_sinfty_r_list(alphabet, theta));
    std::vector<std::pair<double, double>> xy;
    for (const auto& p : fit.points) {
        if (p.in_window) xy.emplace_back(p.log_ratio, p.upper);
    }
    std::size_t distinct = 0;
    for (std::size_t i = 0; i < xy.size(); ++i) distinct += (i == 0 || xy[i].first != xy[i - 1].first) ? 1 : 0;
    if (distinct >= 2) fit.report = fit_dimension(xy);
    if (alphabet.n_max > 0) fit.reference = f_lambda_spectrum(alphabet.lambda, theta);
    return fit;
}

json alphabet_json(const RealAlphabet& a) {
    json j{{"type", "fullshift"}, {"label", a.label}, {"points", a.points.size()},
           {"window_floor", num(a.window_floor)}};
    if (a.n_max > 0) {
        j["lambda"] = num(a.lambda);
        j["n_max"] = a.n_max;
    }
    return j;
}

// ---- commands ----

int cmd_dims(const RunConfig& cfg, std::ostream& log) {
    json doc;
    doc["name"] = cfg.name;
    doc["mode"] = to_string(cfg.mode);
    if (cfg.alphabet) {
        const auto& a = *cfg.alphabet;
        doc["system"] = alphabet_json(a);
        json spec = json::array();
        if (a.n_max > 0) {
            for (double t : cfg.grid.thetas) spec.push_back({{"theta", num(t)}, {"value", num(f_lambda_spectrum(a.lambda, t))}});
        }
        doc["reference_spectrum"] = spec;
        write_json(cfg, "dims.json", doc);
        log << "dims: full shift over " << a.points.size() << " points\n";
        return kExitOk;
    }
    const auto& sys = *cfg.carpet;
    const auto dims = closed_form_dims(sys, closed_mode(cfg), n_list_of(cfg), cfg.caps.enumeration);
    doc["system"] = {{"type", "carpet"}, {"a", sys.a}, {"b", sys.b}, {"subshift", sft_to_json(sys.omega)},
                     {"projection_states", sys.projection.num_states()}};
    doc["entropies"] = {{"h_omega", num(dims.h_omega)},
                        {"h_omega_prime", num(dims.h_omega_prime)},
                        {"h_conditional", interval_json(dims.h_conditional)},
                        {"conditional_method", dims.conditional_method}};
    doc["madim"] = interval_json(dims.madim);
    doc["mmdim"] = num(dims.mmdim);
    doc["uniform_fibres"] = dims.uniform_fibres ? json(*dims.uniform_fibres) : json(nullptr);
    doc["transition_theta"] = num(phase_transition(sys.a, sys.b));

    json spec = json::array();
    for (double t : cfg.grid.thetas) {
        const auto v = spectrum_closed_form(dims, sys.a, sys.b, t);
        spec.push_back({{"theta", num(t)}, {"value", interval_json(v.value)}});
    }
    doc["spectrum"] = spec;

    std::map<std::string, std::size_t> cases;
    for (const auto& p : madim_grid(cfg).pairs) {
        cases[to_string(classify(scale_indices(p.r, sys.a, sys.b), scale_indices(p.rho, sys.a, sys.b)))]++;
    }
    doc["cases"] = cases;
    write_json(cfg, "dims.json", doc);
    log << "dims: madim " << format_number(dims.madim.mid()) << ", mmdim " << format_number(dims.mmdim) << "\n";
    return kExitOk;
}

int cmd_spectrum(const RunConfig& cfg, std::ostream& log) {
    std::string csv = kDimHeader;
    json doc;
    doc["name"] = cfg.name;
    json entries = json::array();
    const bool estimate = cfg.mode == RunMode::Estimate;

    if (cfg.alphabet) {
        const auto fits = parallel_map(cfg.grid.thetas.size(), cfg.jobs,
                                       [&](std::size_t i) { return fullshift_fit(*cfg.alphabet, cfg.grid.thetas[i]); });
        for (const auto& f : fits) {
            DimRow row;
            row.theta = f.theta;
            row.n = 1;
            if (f.report) row.slope = f.report->slope;
            row.closed_form = f.reference;
            if (f.report && f.reference) row.abs_err = std::abs(f.report->slope - *f.reference);
            csv += csv_line(row);
            json e{{"theta", num(f.theta)}};
            e["estimate"] = f.report ? num(f.report->slope) : json(nullptr);
            e["reference"] = f.reference ? num(*f.reference) : json(nullptr);
            entries.push_back(e);
        }
        doc["entries"] = entries;
        write_text(cfg, "spectrum.csv", csv);
        write_json(cfg, "spectrum.json", doc);
        log << "spectrum: " << fits.size() << " theta values\n";
        return kExitOk;
    }

    const auto& sys = *cfg.carpet;
    const auto dims = closed_form_dims(sys, closed_mode(cfg), n_list_of(cfg), cfg.caps.enumeration);
    std::optional<SpectrumCurve> curve;
    if (estimate) {
        curve = estimate_spectrum(sys, cfg.grid.thetas, default_spectrum_r_list(sys.a), n_list_of(cfg),
                                  estimate_options(cfg));
    }
    for (std::size_t i = 0; i < cfg.grid.thetas.size(); ++i) {
        const double t = cfg.grid.thetas[i];
        const auto v = spectrum_closed_form(dims, sys.a, sys.b, t);
        DimRow row;
        row.theta = t;
        row.n = cfg.grid.n_max;
        if (v.value.exact()) row.closed_form = v.value.mid();
        json e{{"theta", num(t)}, {"closed_form", interval_json(v.value)}, {"corollary", interval_json(v.corollary)}};
        if (curve) {
            const auto& rep = curve->entries[i].report;
            row.slope = rep.slope;
            row.abs_err = rep.abs_error;
            e["estimate"] = num(rep.slope);
            e["estimate_last"] = num(rep.slope_last);
        }
        csv += csv_line(row);
        entries.push_back(e);
    }
    doc["transition_theta"] = num(phase_transition(sys.a, sys.b));
    doc["madim"] = interval_json(dims.madim);
    doc["mmdim"] = num(dims.mmdim);
    doc["entries"] = entries;
    write_text(cfg, "spectrum.csv", csv);
    write_json(cfg, "spectrum.json", doc);
    log << "spectrum: " << cfg.grid.thetas.size() << " theta values\n";
    return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& log) {
    std::string csv = kDimHeader;
    if (cfg.alphabet) {
        const auto fits = parallel_map(cfg.grid.thetas.size(), cfg.jobs,
                                       [&](std::size_t i) { return fullshift_fit(*cfg.alphabet, cfg.grid.thetas[i]); });
        for (const auto& f : fits) {
            for (const auto& p : f.points) {
                if (!p.in_window) continue;
                DimRow row{f.theta, p.r, p.rho, 1, p.log_ratio, p.upper, p.upper, {}, f.reference, {}};
                if (f.report) row.slope = f.report->slope;
                if (f.report && f.reference) row.abs_err = std::abs(f.report->slope - *f.reference);
                csv += csv_line(row);
            }
        }
        write_text(cfg, "sweep.csv", csv);
        log << "sweep: " << fits.size() << " theta values\n";
        return kExitOk;
    }
    const auto& sys = *cfg.carpet;
    const auto madim = estimate_madim(sys, madim_grid(cfg), estimate_options(cfg));
    for (const auto& p : madim.points) {
        if (!p.used) continue;
        csv += csv_line({std::nullopt, p.r, p.rho, p.n_max, p.log_ratio, p.s_upper, p.s_last, madim.slope,
                         madim.closed_form, madim.abs_error});
    }
    const auto curve =
        estimate_spectrum(sys, cfg.grid.thetas, default_spectrum_r_list(sys.a), n_list_of(cfg), estimate_options(cfg));
    for (const auto& e : curve.entries) {
        for (const auto& p : e.report.points) {
            csv += csv_line({e.theta, p.r, p.rho, p.n_max, p.log_ratio, p.s_upper, p.s_last, e.report.slope,
                             e.report.closed_form, e.report.abs_error});
        }
    }
    write_text(cfg, "sweep.csv", csv);
    log << "sweep: madim slope " << format_number(madim.slope) << ", " << curve.entries.size() << " theta values\n";
    return kExitOk;
}

std::vector<Verdict> verify_fullshift(const RunConfig& cfg) {
    const auto& a = *cfg.alphabet;
    std::vector<Verdict> out;
    std::vector<double> centers;
    const std::size_t stride = std::max<std::size_t>(1, a.points.size() / 16);
    for (std::size_t i = 0; i < a.points.size(); i += stride) centers.push_back(a.points[i]);

    for (double x : centers) {
        for (double r : {0.5, 0.25, 0.125}) {
            for (double f : {0.5, 0.25, 0.125}) {
                const double rho = r * f;
                const std::string inst = cfg.name + "@x=" + format_number(x) + ";r=" + format_number(r) +
                                         ";rho=" + format_number(rho);
                const auto cover = interval_cover_count(a, x, r, rho);
                const auto pack = interval_pack_count(a, x, r, rho);
                const auto pack4 = interval_pack_count(a, x, r, rho / 4.0);
                out.push_back({"pack_le_cover", inst, static_cast<double>(pack), static_cast<double>(cover), 0.0,
                               pack <= cover});
                out.push_back({"cover_le_pack_quarter", inst, static_cast<double>(cover), static_cast<double>(pack4),
                               0.0, cover <= pack4});
                const auto pb = product_cover_bounds(a, x, r, rho, 3);
                out.push_back({"product_bracket", inst + ";N=3", pb.lower.convert_to<double>(),
                               pb.upper.convert_to<double>(), 0.0, pb.lower <= pb.upper});
            }
        }
    }
    for (double t : cfg.grid.thetas) {
        const auto rl = default_sinfty_r_list(a, t);
        const auto c1 = sinfty_curve(a, t, rl, 1);
        for (std::size_t n : {std::size_t{2}, std::size_t{4}}) {
            const auto cn = sinfty_curve(a, t, rl, n);
            double gap = 0.0;
            for (std::size_t i = 0; i < c1.size(); ++i) {
                gap = std::max({gap, std::abs(c1[i].upper - cn[i].upper), std::abs(c1[i].lower - cn[i].lower)});
            }
            out.push_back({"sinfty_n_independent", cfg.name + "@theta=" + format_number(t) + ";N=" + std::to_string(n),
                           gap, 0.0, kExactTol, gap <= kExactTol});
        }
    }
    return out;
}

std::vector<Verdict> verify_carpet(const RunConfig& cfg) {
    const auto& sys = *cfg.carpet;
    const auto n_list = n_list_of(cfg);
    const auto& caps = cfg.caps.enumeration;
    const std::string& name = cfg.name;
    std::vector<Verdict> out;
    auto append = [&out](std::vector<Verdict> more) { out.insert(out.end(), more.begin(), more.end()); };

    // Entropy relations.
    const auto top = topological_entropy(sys.omega, n_list);
    const auto sof = sofic_entropy(sys.projection, n_list);
    const auto dims = closed_form_dims(sys, ClosedFormMode::Interval, n_list, caps);
    out.push_back({"factor_entropy", name, dims.h_omega_prime, dims.h_omega, 0.0,
                   dims.h_omega_prime <= dims.h_omega + kExactTol});
    out.push_back({"conditional_le_total", name, dims.h_conditional.hi, dims.h_omega, 0.0,
                   dims.h_conditional.hi <= dims.h_omega + kExactTol});
    out.push_back({"fekete_upper", name + ":omega", *top.spectral_exact, top.fekete_upper, 0.0,
                   *top.spectral_exact <= top.fekete_upper + kExactTol});
    out.push_back({"fekete_upper", name + ":omega_prime", *sof.spectral_exact, sof.fekete_upper, 0.0,
                   *sof.spectral_exact <= sof.fekete_upper + kExactTol});
    for (std::size_t n = 1; n <= std::min<std::size_t>(cfg.grid.n_max, 6); ++n) {
        BigInt total = 0;
        for (const auto& v : sys.projection.accepted_words(n, caps)) total += fiber_count(sys.omega, v);
        const BigInt words = count_words(sys.omega, n);
        out.push_back({"fiber_partition", name + "@N=" + std::to_string(n), total.convert_to<double>(),
                       words.convert_to<double>(), 0.0, total == words});
    }

    // Closed forms, slack 0.
    std::vector<std::pair<double, double>> spec_lo, spec_hi;
    for (double t : cfg.grid.thetas) {
        const auto v = spectrum_closed_form(dims, sys.a, sys.b, t);
        spec_lo.emplace_back(t, v.value.lo);
        spec_hi.emplace_back(t, v.value.hi);
        for (auto [val, cor] : {std::pair{v.value.lo, v.corollary.lo}, std::pair{v.value.hi, v.corollary.hi}}) {
            out.push_back({"corollary_agreement", name + "@theta=" + format_number(t), val, cor, 0.0,
                           std::abs(val - cor) <= kExactTol});
        }
    }
    if (dims.madim.exact()) {
        append(check_bounds(dims.mmdim, spec_lo, dims.madim.lo, 0.0, name + ":closed"));
    } else {
        append(check_bounds(dims.mmdim, spec_lo, dims.madim.lo, 0.0, name + ":closed_lo"));
        append(check_bounds(dims.mmdim, spec_hi, dims.madim.hi, 0.0, name + ":closed_hi"));
    }
    const double star = phase_transition(sys.a, sys.b);
    const auto at_star = spectrum_closed_form(dims, sys.a, sys.b, star);
    out.push_back({"branch_continuity", name + "@theta=" + format_number(star), at_star.corollary.hi,
                   dims.madim.hi, 0.0, std::abs(at_star.corollary.hi - dims.madim.hi) <= kExactTol});

    // Estimates, configured slack.
    const auto opts = estimate_options(cfg);
    const auto madim_est = estimate_madim(sys, madim_grid(cfg), opts);
    const auto mmdim_est = estimate_mmdim(sys, mmdim_grid(cfg), opts);
    const auto curve = estimate_spectrum(sys, cfg.grid.thetas, default_spectrum_r_list(sys.a), n_list, opts);
    std::vector<std::pair<double, double>> spec_est;
    for (const auto& e : curve.entries) spec_est.emplace_back(e.theta, e.report.slope);
    append(check_bounds(mmdim_est.slope, spec_est, madim_est.slope, cfg.slack, name + ":estimate"));
    auto near = [&](const char* check, const std::string& inst, const DimensionReport& rep) {
        if (!rep.closed_form) return;
        out.push_back({check, inst, rep.slope, *rep.closed_form, cfg.slack, *rep.abs_error <= cfg.slack + kExactTol});
    };
    near("madim_estimate", name, madim_est);
    near("mmdim_estimate", name, mmdim_est);
    for (const auto& e : curve.entries) near("spectrum_estimate", name + "@theta=" + format_number(e.theta), e.report);

    // Subadditivity over scale-cell pairs.
    std::vector<std::pair<std::size_t, std::size_t>> n_pairs;
    const std::size_t cap_n = std::min<std::size_t>(cfg.grid.n_max, 6);
    for (std::size_t n1 = 1; n1 <= cap_n; ++n1) {
        for (std::size_t n2 = n1; n1 + n2 <= cap_n; ++n2) n_pairs.emplace_back(n1, n2);
    }
    std::vector<ScalePair> scales;
    const auto cells = scale_cells(sys.a, sys.b, 4);
    for (std::size_t i = 0; i < cells.size(); ++i) {
        for (std::size_t k = i + 1; k < cells.size(); ++k) scales.push_back({cells[i].rep, cells[k].rep});
    }
    append(subadditivity_check(sys, n_pairs, scales, name, caps));

    // Max-min ordering.
    const double a = sys.a;
    for (ScalePair sp : {ScalePair{1.0 / a, 1.0 / (a * a)}, ScalePair{0.5, 1.0 / (a * a * a)}, ScalePair{0.3, 0.01}}) {
        out.push_back(order_exchange_check(carpet_order_table(sys, sp, 4, cap_n),
                                           name + "@r=" + format_number(sp.r) + ";rho=" + format_number(sp.rho)));
    }

    // Bi-Lipschitz rescaling.
    out.push_back(bilipschitz_check(sys, madim_grid(cfg), 1.0 / a, name, opts));
    out.push_back(bilipschitz_check(sys, madim_grid(cfg), 0.7, name, opts));
    return out;
}

int cmd_verify(const RunConfig& cfg, std::ostream& log) {
    const auto verdicts = cfg.alphabet ? verify_fullshift(cfg) : verify_carpet(cfg);
    std::string csv = kVerdictHeader;
    for (const auto& v : verdicts) csv += csv_line(v);
    write_text(cfg, "verify.csv", csv);
    return verdict_exit(verdicts, log, "verify");
}

int cmd_oracle(const RunConfig& cfg, std::ostream& log) {
    if (!cfg.carpet) throw Error(ErrorKind::ConfigSchema, "system.type: oracle needs a carpet system");
    OracleOptions opts;
    opts.exhaustive_limit = cfg.caps.exhaustive_limit;
    opts.caps = cfg.caps.enumeration;
    const auto verdicts = oracle_sweep(*cfg.carpet, cfg.grid.oracle_n_max, cfg.grid.oracle_l_max, opts,
                                       cfg.caps.center_limit, cfg.name, cfg.jobs);
    std::string csv = kVerdictHeader;
    for (const auto& v : verdicts) csv += csv_line(v);
    write_text(cfg, "oracle.csv", csv);
    return verdict_exit(verdicts, log, "oracle");
}

}  // namespace

int exit_code_for(const Error& e) { return e.is_cap() ? kExitCap : kExitConfig; }

int run(const std::string& command, const RunConfig& cfg, std::ostream& log, std::ostream& err) {
    try {
        if (!cfg.carpet && !cfg.alphabet) throw Error(ErrorKind::ConfigSchema, "system: missing");
        if (command == "dims") return cmd_dims(cfg, log);
        if (command == "spectrum") return cmd_spectrum(cfg, log);
        if (command == "sweep") return cmd_sweep(cfg, log);
        if (command == "verify") return cmd_verify(cfg, log);
        if (command == "oracle") return cmd_oracle(cfg, log);
        err << "unknown command '" << command << "'\n";
        return kExitConfig;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::filesystem::filesystem_error& e) {
        err << "error: " << e.what() << "\n";
        return kExitConfig;
    }
}

}  // namespace assouad
