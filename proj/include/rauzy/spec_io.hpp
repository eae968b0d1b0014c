#pragma once

#include <filesystem>
#include <string>

#include "rauzy/morphic.hpp"

namespace rauzy {

// Morphism spec files:
//   {"alphabet":["a","b"], "rules":{"a":"ab","b":"a"}, "seed":"a",
//    "coding":{"a":"a","b":"b"}, "prefix_budget":1000000}
// "coding" may be omitted (identity). Its target alphabet is "coding_alphabet"
// when present, otherwise the distinct letters of the images in code point order.
MorphicWordSpec parse_spec(const std::string& json_text);
MorphicWordSpec load_spec(const std::filesystem::path& path);

std::string dump_spec(const MorphicWordSpec& spec);

}  // namespace rauzy
