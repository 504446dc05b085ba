#pragma once

#include <json.hpp>

#include "pground/grounder.hpp"
#include "pground/model.hpp"
#include "pground/parser.hpp"

namespace pground {

// Stats document written by `ground --stats`; the schema is listed in README.md.
nlohmann::json stats_to_json(const GroundingStats& stats, const Program& program);

}  // namespace pground
