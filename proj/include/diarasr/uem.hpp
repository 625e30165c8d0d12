#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "diarasr/types.hpp"

namespace diarasr {

// Parses UEM scoring-region files: "<session> <channel> <begin> <end>" per
// line, ';' or '#' comments. Returns per-session interval lists.
std::map<std::string, std::vector<Interval>> parse_uem(std::string_view text);

} // namespace diarasr
