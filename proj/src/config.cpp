#include "assouad/config.hpp"

#include "assouad/error.hpp"
#include "assouad/format.hpp"
#include "assouad/subshift_json.hpp"

#include <cmath>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace assouad {

namespace {

using nlohmann::json;

[[noreturn]] void schema(const std::string& field, const std::string& msg) {
    throw Error(ErrorKind::ConfigSchema, field + ": " + msg);
}

void only_fields(const json& obj, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!obj.is_object()) schema(where, "must be an object");
    for (const auto& [key, _] : obj.items()) {
        bool ok = false;
        for (const char* a : allowed) ok = ok || key == a;
        if (!ok) schema(where.empty() ? key : where + "." + key, "unknown field");
    }
}

std::string join(const std::string& where, const char* key) { return where.empty() ? key : where + "." + key; }

std::uint64_t positive_int(const json& obj, const std::string& where, const char* key, std::uint64_t fallback) {
    if (!obj.contains(key)) return fallback;
    const auto& v = obj[key];
    if (v.is_number_integer() && v.get<long long>() > 0) return v.get<std::uint64_t>();
    if (v.is_number_float() && v.get<double>() >= 1.0 && v.get<double>() <= 1e18 &&
        std::floor(v.get<double>()) == v.get<double>()) {
        return static_cast<std::uint64_t>(v.get<double>());
    }
    schema(join(where, key), "must be a positive integer");
}

RealAlphabet alphabet_from_json(const json& spec) {
    const std::string where = "system.alphabet";
    if (!spec.is_object()) schema(where, "must be an object");
    try {
        if (spec.contains("points")) {
            only_fields(spec, where, {"points"});
            if (!spec["points"].is_array()) schema(where + ".points", "must be an array of numbers");
            std::vector<double> pts;
            for (const auto& p : spec["points"]) {
                if (!p.is_number()) schema(where + ".points", "must be an array of numbers");
                pts.push_back(p.get<double>());
            }
            return make_alphabet(std::move(pts));
        }
        only_fields(spec, where, {"family", "lambda", "n_max"});
        if (!spec.contains("family") || spec["family"] != "f_lambda") {
            schema(where + ".family", "expected \"f_lambda\" or an explicit points list");
        }
        if (!spec.contains("lambda") || !spec["lambda"].is_number()) schema(where + ".lambda", "must be a number");
        return f_lambda_alphabet(spec["lambda"].get<double>(), positive_int(spec, where, "n_max", 64));
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::InvalidArgument) schema(where, e.what());
        throw;
    }
}

void load_system(const json& sys, RunConfig& cfg) {
    if (!sys.is_object()) schema("system", "must be an object");
    if (!sys.contains("type") || !sys["type"].is_string()) schema("system.type", "must be \"carpet\" or \"fullshift\"");
    const auto type = sys["type"].get<std::string>();
    if (type == "fullshift") {
        only_fields(sys, "system", {"type", "alphabet"});
        if (!sys.contains("alphabet")) schema("system.alphabet", "missing");
        cfg.alphabet = alphabet_from_json(sys["alphabet"]);
        return;
    }
    if (type != "carpet") schema("system.type", "must be \"carpet\" or \"fullshift\"");
    only_fields(sys, "system", {"type", "a", "b", "subshift"});
    for (const char* key : {"a", "b"}) {
        if (!sys.contains(key) || !sys[key].is_number_integer() || sys[key].get<long long>() < 0) {
            schema(join("system", key), "must be a nonnegative integer");
        }
    }
    const auto a = sys["a"].get<std::uint32_t>();
    const auto b = sys["b"].get<std::uint32_t>();
    if (!(a > b && b >= 2)) schema("system.a", "a > b ≥ 2 required");
    if (!sys.contains("subshift")) schema("system.subshift", "missing");

    PairSFT omega = [&] {
        try {
            return sft_from_json(sys["subshift"]);
        } catch (const Error& e) {
            if (e.is_cap()) throw;
            schema("system.subshift", e.what());
        }
    }();
    if (omega.a_size() != a || omega.b_size() != b) {
        schema("system.subshift", "a_size and b_size must equal a and b");
    }
    cfg.carpet = make_carpet(a, b, std::move(omega), cfg.caps.automaton);
}

}  // namespace

std::vector<double> parse_theta_grid(const std::string& spec) {
    std::vector<double> parts;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ':')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != item.size()) schema("theta_grid", "expected a:b:step, got '" + spec + "'");
        parts.push_back(v);
    }
    if (parts.size() != 3) schema("theta_grid", "expected a:b:step, got '" + spec + "'");
    const double lo = parts[0], hi = parts[1], step = parts[2];
    if (!(lo > 0.0 && hi < 1.0 && lo <= hi && step > 0.0)) {
        schema("theta_grid", "need 0 < a <= b < 1 and step > 0");
    }
    const double span = (hi - lo) / step;
    if (span > 10000.0) schema("theta_grid", "more than 10000 values");
    const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
    std::vector<double> out;
    for (std::size_t i = 0; i < count; ++i) out.push_back(round12(lo + static_cast<double>(i) * step));
    return out;
}

RunMode parse_mode(const std::string& mode) {
    if (mode == "exact") return RunMode::Exact;
    if (mode == "interval") return RunMode::Interval;
    if (mode == "estimate") return RunMode::Estimate;
    schema("mode", "must be exact, interval or estimate");
}

std::string to_string(RunMode mode) {
    switch (mode) {
        case RunMode::Exact: return "exact";
        case RunMode::Interval: return "interval";
        case RunMode::Estimate: return "estimate";
    }
    return "estimate";
}

RunConfig config_from_json(const json& doc) {
    only_fields(doc, "", {"name", "system", "grid", "caps", "mode", "slack", "output"});
    RunConfig cfg;
    cfg.grid.thetas = parse_theta_grid("0.1:0.9:0.1");

    if (doc.contains("name")) {
        if (!doc["name"].is_string()) schema("name", "must be a string");
        cfg.name = doc["name"].get<std::string>();
    }
    if (doc.contains("caps")) {
        const auto& c = doc["caps"];
        only_fields(c, "caps", {"max_length", "max_words", "max_states", "exhaustive_limit", "center_limit"});
        cfg.caps.enumeration.max_length = positive_int(c, "caps", "max_length", cfg.caps.enumeration.max_length);
        cfg.caps.enumeration.max_words = positive_int(c, "caps", "max_words", cfg.caps.enumeration.max_words);
        cfg.caps.automaton.max_states = positive_int(c, "caps", "max_states", cfg.caps.automaton.max_states);
        cfg.caps.exhaustive_limit = positive_int(c, "caps", "exhaustive_limit", cfg.caps.exhaustive_limit);
        cfg.caps.center_limit = positive_int(c, "caps", "center_limit", cfg.caps.center_limit);
    }
    if (doc.contains("grid")) {
        const auto& g = doc["grid"];
        only_fields(g, "grid", {"k_max", "n_max", "theta_grid", "oracle_n_max", "oracle_l_max"});
        cfg.grid.k_max = static_cast<int>(positive_int(g, "grid", "k_max", static_cast<std::uint64_t>(cfg.grid.k_max)));
        cfg.grid.n_max = positive_int(g, "grid", "n_max", cfg.grid.n_max);
        cfg.grid.oracle_n_max = positive_int(g, "grid", "oracle_n_max", cfg.grid.oracle_n_max);
        cfg.grid.oracle_l_max =
            static_cast<int>(positive_int(g, "grid", "oracle_l_max", static_cast<std::uint64_t>(cfg.grid.oracle_l_max)));
        if (g.contains("theta_grid")) {
            if (!g["theta_grid"].is_string()) schema("grid.theta_grid", "must be a string a:b:step");
            cfg.grid.thetas = parse_theta_grid(g["theta_grid"].get<std::string>());
        }
    }
    if (doc.contains("mode")) {
        if (!doc["mode"].is_string()) schema("mode", "must be exact, interval or estimate");
        cfg.mode = parse_mode(doc["mode"].get<std::string>());
    }
    if (doc.contains("slack")) {
        if (!doc["slack"].is_number() || doc["slack"].get<double>() < 0.0) schema("slack", "must be a number >= 0");
        cfg.slack = doc["slack"].get<double>();
    }
    if (doc.contains("output")) {
        const auto& o = doc["output"];
        only_fields(o, "output", {"dir"});
        if (o.contains("dir")) {
            if (!o["dir"].is_string()) schema("output.dir", "must be a string");
            cfg.output_dir = o["dir"].get<std::string>();
        }
    }
    if (!doc.contains("system")) schema("system", "missing");
    load_system(doc["system"], cfg);
    return cfg;
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigSyntax, "cannot open config " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    json doc;
    try {
        doc = json::parse(buf.str());
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::ConfigSyntax, path + ": " + e.what());
    }
    return config_from_json(doc);
}

}  // namespace assouad
