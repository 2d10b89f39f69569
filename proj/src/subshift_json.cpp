#include "assouad/subshift_json.hpp"

#include "assouad/error.hpp"

#include <fstream>
#include <sstream>

namespace assouad {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw Error(ErrorKind::ConfigSchema, msg); }

std::uint32_t small_uint(const nlohmann::json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0 || j.get<long long>() > 0xffffffffLL) {
        schema(where + " must be a nonnegative integer");
    }
    return j.get<std::uint32_t>();
}

PairSymbol pair_of(const nlohmann::json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) schema(where + " must be a [u, v] pair");
    return {small_uint(j[0], where + "[0]"), small_uint(j[1], where + "[1]")};
}

}  // namespace

PairSFT sft_from_json(const nlohmann::json& spec) {
    if (!spec.is_object()) schema("subshift must be an object");
    for (const auto& [key, _] : spec.items()) {
        if (key != "a_size" && key != "b_size" && key != "pairs" && key != "transitions") {
            schema("unknown field '" + key + "' in subshift");
        }
    }
    for (const char* key : {"a_size", "b_size", "pairs"}) {
        if (!spec.contains(key)) schema(std::string("missing field '") + key + "' in subshift");
    }
    const auto a = small_uint(spec["a_size"], "a_size");
    const auto b = small_uint(spec["b_size"], "b_size");

    std::vector<PairSymbol> pairs;
    const auto& jp = spec["pairs"];
    if (jp.is_string()) {
        if (jp.get<std::string>() != "full") schema("pairs must be an array or \"full\"");
        for (std::uint32_t u = 0; u < a; ++u) {
            for (std::uint32_t v = 0; v < b; ++v) pairs.push_back({u, v});
        }
    } else if (jp.is_array()) {
        for (std::size_t i = 0; i < jp.size(); ++i) pairs.push_back(pair_of(jp[i], "pairs[" + std::to_string(i) + "]"));
    } else {
        schema("pairs must be an array or \"full\"");
    }

    TransitionSpec transitions = FullTransitions{};
    if (spec.contains("transitions")) {
        const auto& jt = spec["transitions"];
        if (jt.is_string()) {
            if (jt.get<std::string>() != "full") schema("transitions must be an array or \"full\"");
        } else if (jt.is_array()) {
            TransitionList list;
            for (std::size_t i = 0; i < jt.size(); ++i) {
                const std::string where = "transitions[" + std::to_string(i) + "]";
                if (!jt[i].is_array() || jt[i].size() != 2) schema(where + " must be [[u,v],[u',v']]");
                list.emplace_back(pair_of(jt[i][0], where + "[0]"), pair_of(jt[i][1], where + "[1]"));
            }
            transitions = std::move(list);
        } else {
            schema("transitions must be an array or \"full\"");
        }
    }
    return make_sft(a, b, std::move(pairs), transitions);
}

nlohmann::json sft_to_json(const PairSFT& sft) {
    nlohmann::json j;
    j["a_size"] = sft.a_size();
    j["b_size"] = sft.b_size();
    auto pairs = nlohmann::json::array();
    for (const auto& p : sft.symbols()) pairs.push_back({p.u, p.v});
    j["pairs"] = pairs;
    if (sft.is_full()) {
        j["transitions"] = "full";
    } else {
        auto t = nlohmann::json::array();
        for (const auto& [from, to] : sft.transitions()) {
            t.push_back({nlohmann::json{from.u, from.v}, nlohmann::json{to.u, to.v}});
        }
        j["transitions"] = t;
    }
    return j;
}

PairSFT load_subshift_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigSyntax, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(buf.str());
    } catch (const nlohmann::json::parse_error& e) {
        throw Error(ErrorKind::ConfigSyntax, path + ": " + e.what());
    }
    return sft_from_json(j);
}

}  // namespace assouad
