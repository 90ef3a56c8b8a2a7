#pragma once

#include "json.hpp"

namespace ocam::run {

/// Oracle-equivalence suite: checks the statistics kernel against the
/// definitional brute-force oracles and replays a handful of anchored
/// values. Returns {checks: [{name, passed, detail}], all_passed}.
nlohmann::ordered_json run_selftest();

}  // namespace ocam::run
