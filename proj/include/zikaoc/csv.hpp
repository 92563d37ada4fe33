#pragma once

#include <array>
#include <string>
#include <vector>

#include "zikaoc/scenarios.hpp"

namespace zikaoc {

// One value per column of the trajectory CSV schema:
// t,S,I,W,M,Am,Sm,Em,Im,u1,u2,lambda1..lambda8
constexpr std::size_t csv_columns = 19;

extern const char* const csv_header;

// Writes one row per grid node at 17 significant digits; byte-identical for
// identical inputs.
void write_csv(const ScenarioResult& result, const std::string& path);

struct CsvTable {
    std::vector<std::array<double, csv_columns>> rows;
};

CsvTable read_csv(const std::string& path);

// Reassembles grid/trajectory/controls from a parsed table (for round-trip
// checks and external post-processing).
ScenarioResult from_csv(const CsvTable& table, const ObjectiveWeights& w);

}  // namespace zikaoc
