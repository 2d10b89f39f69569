#pragma once

// JSON form of a pair subshift:
//   {"a_size": 3, "b_size": 2,
//    "pairs": [[0,0],[1,0]] | "full",
//    "transitions": "full" | [[[u,v],[u',v']], ...]}

#include "assouad/symbolic.hpp"

#include "json.hpp"

#include <string>

namespace assouad {

PairSFT sft_from_json(const nlohmann::json& spec);
nlohmann::json sft_to_json(const PairSFT& sft);
PairSFT load_subshift_file(const std::string& path);

}  // namespace assouad
