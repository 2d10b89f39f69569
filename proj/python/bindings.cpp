#include "assouad/carpet.hpp"
#include "assouad/entropy.hpp"
#include "assouad/error.hpp"
#include "assouad/estimate.hpp"
#include "assouad/fullshift.hpp"
#include "assouad/symbolic.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <utility>
#include <vector>

namespace py = pybind11;
using namespace assouad;

namespace {

py::object to_py(const BigInt& x) { return py::module_::import("builtins").attr("int")(x.str()); }

std::vector<PairSymbol> to_pairs(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& raw) {
    std::vector<PairSymbol> out;
    out.reserve(raw.size());
    for (auto [u, v] : raw) out.push_back({u, v});
    return out;
}

TransitionSpec to_transitions(const py::object& spec) {
    if (spec.is_none()) return FullTransitions{};
    if (py::isinstance<py::str>(spec)) {
        if (spec.cast<std::string>() != "full") throw py::value_error("transitions must be \"full\" or a list");
        return FullTransitions{};
    }
    using Raw = std::pair<std::pair<std::uint32_t, std::uint32_t>, std::pair<std::uint32_t, std::uint32_t>>;
    TransitionList list;
    for (const auto& [from, to] : spec.cast<std::vector<Raw>>()) {
        list.emplace_back(PairSymbol{from.first, from.second}, PairSymbol{to.first, to.second});
    }
    return list;
}

py::dict interval_dict(const Interval& iv) {
    py::dict d;
    d["lo"] = iv.lo;
    d["hi"] = iv.hi;
    d["exact"] = iv.exact();
    return d;
}

py::dict cover_dict(const CoverCount& c) {
    py::dict d;
    d["count"] = to_py(c.count);
    d["log_count"] = c.log_count;
    d["case"] = to_string(c.case_tag);
    return d;
}

Center to_center(const std::vector<std::vector<std::uint32_t>>& blocks) { return Center(blocks.begin(), blocks.end()); }

py::dict report_dict(const DimensionReport& r) {
    py::dict d;
    d["slope"] = r.slope;
    d["intercept"] = r.intercept;
    d["residual"] = r.residual;
    d["slope_last"] = r.slope_last;
    d["points_used"] = r.points_used;
    d["closed_form"] = r.closed_form ? py::cast(*r.closed_form) : py::none();
    d["abs_error"] = r.abs_error ? py::cast(*r.abs_error) : py::none();
    return d;
}

}  // namespace

PYBIND11_MODULE(_assouad, m) {
    m.doc() = "Mean Assouad dimension and spectrum of symbolic systems";

    static py::exception<Error> error(m, "Error");
    py::register_exception_translator([](std::exception_ptr p) {
        try {
            if (p) std::rethrow_exception(p);
        } catch (const Error& e) {
            py::set_error(error, e.what());
        }
    });

    py::class_<PairSFT>(m, "PairSFT")
        .def_property_readonly("a_size", &PairSFT::a_size)
        .def_property_readonly("b_size", &PairSFT::b_size)
        .def_property_readonly("is_full", &PairSFT::is_full)
        .def_property_readonly("symbols",
                               [](const PairSFT& s) {
                                   std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
                                   for (const auto& p : s.symbols()) out.emplace_back(p.u, p.v);
                                   return out;
                               })
        .def("__len__", &PairSFT::size)
        .def("enumerate_words",
             [](const PairSFT& s, std::size_t n) { return enumerate_words(s, n).words; }, py::arg("n"))
        .def("project_b", [](const PairSFT& s, const Word& w) { return project_b(s, w); }, py::arg("word"));

    m.def(
        "make_sft",
        [](std::uint32_t a_size, std::uint32_t b_size, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& pairs,
           const py::object& transitions) { return make_sft(a_size, b_size, to_pairs(pairs), to_transitions(transitions)); },
        py::arg("a_size"), py::arg("b_size"), py::arg("pairs"), py::arg("transitions") = py::none(),
        "Essential one-step SFT on the given pair symbols; transitions is \"full\" or a list of pair-to-pair edges.");

    m.def("count_words", [](const PairSFT& s, std::size_t n) { return to_py(count_words(s, n)); }, py::arg("sft"),
          py::arg("n"));
    m.def("fiber_count", [](const PairSFT& s, const Letters& v) { return to_py(fiber_count(s, v)); }, py::arg("sft"),
          py::arg("v"));
    m.def(
        "sup_fiber_count",
        [](const PairSFT& s, std::size_t n) {
            auto sf = sup_fiber_count(s, n);
            return py::make_tuple(to_py(sf.count), sf.witness);
        },
        py::arg("sft"), py::arg("n"));

    m.def(
        "topological_entropy", [](const PairSFT& s) { return *topological_entropy(s).spectral_exact; },
        py::arg("sft"));

    py::class_<CarpetSystem>(m, "CarpetSystem")
        .def_readonly("a", &CarpetSystem::a)
        .def_readonly("b", &CarpetSystem::b)
        .def_readonly("omega", &CarpetSystem::omega);

    m.def(
        "carpet", [](std::uint32_t a, std::uint32_t b, const PairSFT& omega) { return make_carpet(a, b, omega); },
        py::arg("a"), py::arg("b"), py::arg("omega"));

    m.def(
        "scale_indices",
        [](double r, std::uint32_t a, std::uint32_t b) {
            auto s = scale_indices(r, a, b);
            return py::make_tuple(s.l1, s.l2);
        },
        py::arg("r"), py::arg("a"), py::arg("b"));

    m.def(
        "cover_count_formula",
        [](const CarpetSystem& sys, std::size_t n, const std::vector<std::vector<std::uint32_t>>& center, double r,
           double rho) { return cover_dict(cover_count_formula(sys, n, to_center(center), r, rho)); },
        py::arg("system"), py::arg("n"), py::arg("center"), py::arg("r"), py::arg("rho"));
    m.def(
        "cover_count_oracle",
        [](const CarpetSystem& sys, std::size_t n, const std::vector<std::vector<std::uint32_t>>& center, double r,
           double rho) { return cover_dict(cover_count_oracle(sys, n, to_center(center), r, rho)); },
        py::arg("system"), py::arg("n"), py::arg("center"), py::arg("r"), py::arg("rho"));

    m.def(
        "closed_form_dims",
        [](const CarpetSystem& sys, const std::string& mode) {
            ClosedFormMode cm = ClosedFormMode::Exact;
            if (mode == "interval") {
                cm = ClosedFormMode::Interval;
            } else if (mode != "exact") {
                throw py::value_error("mode must be \"exact\" or \"interval\"");
            }
            const auto cf = closed_form_dims(sys, cm);
            py::dict d;
            d["h_omega"] = cf.h_omega;
            d["h_omega_prime"] = cf.h_omega_prime;
            d["h_conditional"] = interval_dict(cf.h_conditional);
            d["conditional_method"] = cf.conditional_method;
            d["madim"] = interval_dict(cf.madim);
            d["mmdim"] = cf.mmdim;
            d["uniform_fibres"] = cf.uniform_fibres ? py::cast(*cf.uniform_fibres) : py::none();
            return d;
        },
        py::arg("system"), py::arg("mode") = "exact");

    m.def(
        "spectrum_closed_form",
        [](const CarpetSystem& sys, double theta) {
            const auto cf = closed_form_dims(sys, ClosedFormMode::Interval);
            return spectrum_closed_form(cf, sys.a, sys.b, theta).value.mid();
        },
        py::arg("system"), py::arg("theta"));

    m.def(
        "estimate_madim",
        [](const CarpetSystem& sys, int k_max, unsigned jobs) {
            DimensionReport rep;
            {
                py::gil_scoped_release release;
                rep = estimate_madim(sys, default_madim_grid(sys.a, sys.b, k_max), {jobs, {}});
            }
            return report_dict(rep);
        },
        py::arg("system"), py::arg("k_max") = 20, py::arg("jobs") = 1);

    m.def(
        "estimate_spectrum",
        [](const CarpetSystem& sys, const std::vector<double>& thetas, unsigned jobs) {
            SpectrumCurve curve;
            {
                py::gil_scoped_release release;
                curve = estimate_spectrum(sys, thetas, default_spectrum_r_list(sys.a), default_n_list(), {jobs, {}});
            }
            py::list out;
            for (const auto& e : curve.entries) {
                py::dict d = report_dict(e.report);
                d["theta"] = e.theta;
                d["closed_form"] = e.closed_form.mid();
                out.append(d);
            }
            return out;
        },
        py::arg("system"), py::arg("thetas"), py::arg("jobs") = 1);

    py::class_<RealAlphabet>(m, "RealAlphabet")
        .def_readonly("points", &RealAlphabet::points)
        .def_readonly("window_floor", &RealAlphabet::window_floor);

    m.def("alphabet", [](std::vector<double> pts) { return make_alphabet(std::move(pts)); }, py::arg("points"));
    m.def("f_lambda_alphabet", &f_lambda_alphabet, py::arg("lam"), py::arg("n_max"));
    m.def("interval_cover_count", &interval_cover_count, py::arg("alphabet"), py::arg("x"), py::arg("r"),
          py::arg("rho"));
    m.def("interval_pack_count", &interval_pack_count, py::arg("alphabet"), py::arg("x"), py::arg("r"),
          py::arg("rho"));
    m.def(
        "sinfty_curve",
        [](const RealAlphabet& alph, double theta, std::size_t n) {
            py::list out;
            for (const auto& p : sinfty_curve(alph, theta, default_sinfty_r_list(alph, theta), n)) {
                out.append(py::make_tuple(p.log_ratio, p.upper, p.lower, p.in_window));
            }
            return out;
        },
        py::arg("alphabet"), py::arg("theta"), py::arg("n") = 1);
    m.def("f_lambda_spectrum", &f_lambda_spectrum, py::arg("lam"), py::arg("theta"));

    m.def(
        "wandering_demo",
        [](std::size_t m_max, const std::vector<std::size_t>& depths, std::size_t window, double r, double rho) {
            std::vector<std::pair<std::size_t, double>> out;
            for (const auto& row : wandering_demo(m_max, depths, window, r, rho)) out.emplace_back(row.depth, row.bound);
            return out;
        },
        py::arg("m_max"), py::arg("depths"), py::arg("window"), py::arg("r"), py::arg("rho"));
}
