#pragma once

#include <string>
#include <vector>

#include "zikaoc/scenarios.hpp"

namespace zikaoc {

// Static SVG 1.1 figures mirroring the study plots, one polyline per
// scenario per subplot:
//   <dir>/women.svg       2x2 panel: S, I, W, M
//   <dir>/mosquitoes.svg  2x2 panel: Am, Sm, Em, Im
//   <dir>/controls.svg    1x2 panel: u1, u2
// Returns the written file paths (deterministic order).
std::vector<std::string> emit_plots(const std::vector<ScenarioResult>& results,
                                    const std::string& out_dir);

}  // namespace zikaoc
