#include "zikaoc/csv.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "zikaoc/config.hpp"

namespace zikaoc {

const char* const csv_header =
    "t,S,I,W,M,Am,Sm,Em,Im,u1,u2,lambda1,lambda2,lambda3,lambda4,lambda5,lambda6,lambda7,"
    "lambda8";

void write_csv(const ScenarioResult& result, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << csv_header << "\n";
    char buf[32];
    const auto put = [&](double v, char sep) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        out << buf << sep;
    };
    const auto& sol = result.solution;
    for (std::size_t k = 0; k < result.grid.n_nodes(); ++k) {
        put(result.grid.node(k), ',');
        for (std::size_t i = 0; i < StateVector::size; ++i) put(sol.states[k][i], ',');
        put(sol.controls.u1[k], ',');
        put(sol.controls.u2[k], ',');
        for (std::size_t i = 0; i < AdjointVector::size; ++i)
            put(sol.adjoints[k][i], i + 1 == AdjointVector::size ? '\n' : ',');
    }
    if (!out) throw IoError("write failed: " + path);
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open: " + path);
    std::string line;
    if (!std::getline(in, line) || line != csv_header)
        throw ParseError(path + ": unexpected CSV header");
    CsvTable table;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::array<double, csv_columns> row{};
        std::size_t col = 0;
        const char* s = line.c_str();
        while (*s != '\0') {
            char* end = nullptr;
            if (col >= csv_columns)
                throw ParseError(path + ": too many columns on line " +
                                 std::to_string(line_no));
            row[col++] = std::strtod(s, &end);
            if (end == s)
                throw ParseError(path + ": bad number on line " + std::to_string(line_no));
            s = (*end == ',') ? end + 1 : end;
        }
        if (col != csv_columns)
            throw ParseError(path + ": expected " + std::to_string(csv_columns) +
                             " columns on line " + std::to_string(line_no));
        table.rows.push_back(row);
    }
    if (table.rows.size() < 2) throw ParseError(path + ": fewer than two data rows");
    return table;
}

ScenarioResult from_csv(const CsvTable& table, const ObjectiveWeights& w) {
    ScenarioResult res;
    const std::size_t n_nodes = table.rows.size();
    res.grid = TimeGrid{table.rows.back()[0], n_nodes - 1};
    res.weights = w;
    res.solution.controls = ControlGrid(n_nodes);
    res.solution.states.resize(n_nodes);
    res.solution.adjoints.resize(n_nodes);
    for (std::size_t k = 0; k < n_nodes; ++k) {
        const auto& row = table.rows[k];
        StateVector x;
        AdjointVector lam;
        for (std::size_t i = 0; i < StateVector::size; ++i) x.set(i, row[1 + i]);
        res.solution.controls.u1[k] = row[9];
        res.solution.controls.u2[k] = row[10];
        for (std::size_t i = 0; i < AdjointVector::size; ++i) lam.set(i, row[11 + i]);
        res.solution.states[k] = x;
        res.solution.adjoints[k] = lam;
    }
    res.solution.objective = evaluate_objective(res.solution.states, res.solution.controls, w,
                                                res.grid);
    res.metrics = compute_metrics(res.solution, res.grid, w);
    return res;
}

}  // namespace zikaoc
