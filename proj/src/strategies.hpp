#pragma once

#include <string>
#include <utility>
#include <vector>

namespace coxpoly::detail {

// Strategy files compiled into the library, as (file stem, text).
const std::vector<std::pair<std::string, std::string>>& embedded_strategies();

}  // namespace coxpoly::detail
