#include "zikaoc/config.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <sstream>

namespace zikaoc {

ModelParams RunConfig::effective_params() const {
    ModelParams p = params;
    p.biting_rate *= per_day_scale;
    p.eggs_per_capita *= per_day_scale;
    p.larva_mortality *= per_day_scale;
    p.maturation_rate *= per_day_scale;
    p.incubation_rate *= per_day_scale;
    p.adult_mortality *= per_day_scale;
    return p;
}

RunConfig default_run_config() { return RunConfig{}; }

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Field {
    const char* section;
    const char* key;
    std::function<double&(RunConfig&)> ref;
};

// Single source of truth for every numeric key: parser, dumper and the
// round-trip test all walk this table.
const std::vector<Field>& numeric_fields() {
    static const std::vector<Field> fields = {
        {"model", "lambda", [](RunConfig& c) -> double& { return c.params.recruitment; }},
        {"model", "phi", [](RunConfig& c) -> double& { return c.params.infected_fraction; }},
        {"model", "b", [](RunConfig& c) -> double& { return c.params.biting_rate; }},
        {"model", "beta_mh", [](RunConfig& c) -> double& { return c.params.transmission_mh; }},
        {"model", "beta_hm", [](RunConfig& c) -> double& { return c.params.transmission_hm; }},
        {"model", "tau1",
         [](RunConfig& c) -> double& { return c.params.birth_rate_susceptible; }},
        {"model", "tau2", [](RunConfig& c) -> double& { return c.params.birth_rate_infected; }},
        {"model", "mu_h", [](RunConfig& c) -> double& { return c.params.maternal_exit_rate; }},
        {"model", "psi",
         [](RunConfig& c) -> double& { return c.params.microcephaly_fraction; }},
        {"model", "mu_b", [](RunConfig& c) -> double& { return c.params.eggs_per_capita; }},
        {"model", "mu_a", [](RunConfig& c) -> double& { return c.params.larva_mortality; }},
        {"model", "eta_a", [](RunConfig& c) -> double& { return c.params.maturation_rate; }},
        {"model", "eta_m", [](RunConfig& c) -> double& { return c.params.incubation_rate; }},
        {"model", "mu_m", [](RunConfig& c) -> double& { return c.params.adult_mortality; }},
        {"model", "k", [](RunConfig& c) -> double& { return c.params.larva_capacity; }},
        {"model", "per_day_scale", [](RunConfig& c) -> double& { return c.per_day_scale; }},
        {"weights", "w1", [](RunConfig& c) -> double& { return c.weights.w1; }},
        {"weights", "w2", [](RunConfig& c) -> double& { return c.weights.w2; }},
        {"weights", "w3", [](RunConfig& c) -> double& { return c.weights.w3; }},
        {"weights", "w4", [](RunConfig& c) -> double& { return c.weights.w4; }},
        {"initial", "s", [](RunConfig& c) -> double& { return c.initial.S; }},
        {"initial", "i", [](RunConfig& c) -> double& { return c.initial.I; }},
        {"initial", "w", [](RunConfig& c) -> double& { return c.initial.W; }},
        {"initial", "m", [](RunConfig& c) -> double& { return c.initial.M; }},
        {"initial", "am", [](RunConfig& c) -> double& { return c.initial.Am; }},
        {"initial", "sm", [](RunConfig& c) -> double& { return c.initial.Sm; }},
        {"initial", "em", [](RunConfig& c) -> double& { return c.initial.Em; }},
        {"initial", "im", [](RunConfig& c) -> double& { return c.initial.Im; }},
        {"grid", "t_f", [](RunConfig& c) -> double& { return c.grid.t_f; }},
        {"fbsm", "tol", [](RunConfig& c) -> double& { return c.fbsm.rel_tol; }},
        {"fbsm", "relaxation", [](RunConfig& c) -> double& { return c.fbsm.relaxation; }},
        {"fbsm", "u_max", [](RunConfig& c) -> double& { return c.fbsm.u_max; }},
    };
    return fields;
}

double parse_number(const std::string& value, std::size_t line_no) {
    const std::string v = trim(value);
    char* end = nullptr;
    const double d = std::strtod(v.c_str(), &end);
    if (v.empty() || end != v.c_str() + v.size())
        throw ParseError("line " + std::to_string(line_no) + ": expected a number, got '" +
                         v + "'");
    return d;
}

std::size_t parse_count(const std::string& value, std::size_t line_no) {
    const double d = parse_number(value, line_no);
    if (d < 0.0 || d != static_cast<double>(static_cast<std::size_t>(d)))
        throw ParseError("line " + std::to_string(line_no) +
                         ": expected a nonnegative integer, got '" + trim(value) + "'");
    return static_cast<std::size_t>(d);
}

}  // namespace

RunConfig parse_config(const std::string& text) {
    RunConfig cfg;
    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        if (const auto hash = line.find('#'); hash != std::string::npos)
            line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ParseError("line " + std::to_string(line_no) +
                                 ": unterminated section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ParseError("line " + std::to_string(line_no) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));

        bool matched = false;
        for (const auto& f : numeric_fields()) {
            if (section == f.section && key == f.key) {
                f.ref(cfg) = parse_number(value, line_no);
                matched = true;
                break;
            }
        }
        if (matched) continue;

        if (section == "grid" && key == "n_steps")
            cfg.grid.n_steps = parse_count(value, line_no);
        else if (section == "fbsm" && key == "max_iters")
            cfg.fbsm.max_iters = parse_count(value, line_no);
        else if (section == "fbsm" && key == "substeps")
            cfg.fbsm.substeps = parse_count(value, line_no);
        else if (section == "run" && key == "mode") {
            try {
                cfg.mode = control_mode_from_string(value);
            } catch (const std::invalid_argument& e) {
                throw ParseError("line " + std::to_string(line_no) + ": " + e.what());
            }
        } else if (section == "run" && key == "out")
            cfg.output_dir = value;
        else if (section == "run" && key == "sweep") {
            cfg.sweep_values.clear();
            std::istringstream items(value);
            std::string item;
            while (std::getline(items, item, ','))
                cfg.sweep_values.push_back(parse_number(item, line_no));
            if (cfg.sweep_values.empty())
                throw ParseError("line " + std::to_string(line_no) + ": empty sweep list");
        } else
            throw ParseError("line " + std::to_string(line_no) + ": unknown key '" + section +
                             "." + key + "'");
    }
    validate(cfg);
    return cfg;
}

RunConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

std::string dump_config(const RunConfig& cfg) {
    std::string out;
    std::string section;
    for (const auto& f : numeric_fields()) {
        RunConfig& mut = const_cast<RunConfig&>(cfg);
        if (section != f.section) {
            section = f.section;
            if (!out.empty()) out += "\n";
            out += "[" + section + "]\n";
        }
        out += std::string(f.key) + " = " + fmt(f.ref(mut)) + "\n";
        if (section == "grid")
            out += "n_steps = " + std::to_string(cfg.grid.n_steps) + "\n";
    }
    out += "max_iters = " + std::to_string(cfg.fbsm.max_iters) + "\n";
    out += "substeps = " + std::to_string(cfg.fbsm.substeps) + "\n";
    out += "\n[run]\n";
    out += "mode = " + to_string(cfg.mode) + "\n";
    out += "out = " + cfg.output_dir + "\n";
    std::string sweep;
    for (double v : cfg.sweep_values) {
        if (!sweep.empty()) sweep += ",";
        sweep += fmt(v);
    }
    out += "sweep = " + sweep + "\n";
    return out;
}

namespace {

void require(bool ok, const std::string& message) {
    if (!ok) throw ValidationError(message);
}

std::string got(double v) { return " (got " + fmt(v) + ")"; }

}  // namespace

void validate(const RunConfig& cfg) {
    const ModelParams& p = cfg.params;
    require(p.recruitment > 0.0, "lambda: must be > 0" + got(p.recruitment));
    require(p.infected_fraction > 0.0 && p.infected_fraction <= 1.0,
            "phi: must lie in (0, 1]" + got(p.infected_fraction));
    require(p.biting_rate > 0.0, "b: must be > 0" + got(p.biting_rate));
    require(p.transmission_mh > 0.0 && p.transmission_mh <= 1.0,
            "beta_mh: must lie in (0, 1]" + got(p.transmission_mh));
    require(p.transmission_hm > 0.0 && p.transmission_hm <= 1.0,
            "beta_hm: must lie in (0, 1]" + got(p.transmission_hm));
    require(p.birth_rate_susceptible > 0.0,
            "tau1: must be > 0" + got(p.birth_rate_susceptible));
    require(p.birth_rate_infected > 0.0, "tau2: must be > 0" + got(p.birth_rate_infected));
    require(p.maternal_exit_rate > 0.0, "mu_h: must be > 0" + got(p.maternal_exit_rate));
    require(p.microcephaly_fraction > 0.0 && p.microcephaly_fraction <= 1.0,
            "psi: must lie in (0, 1]" + got(p.microcephaly_fraction));
    require(p.eggs_per_capita > 0.0, "mu_b: must be > 0" + got(p.eggs_per_capita));
    require(p.larva_mortality > 0.0, "mu_a: must be > 0" + got(p.larva_mortality));
    require(p.maturation_rate > 0.0, "eta_a: must be > 0" + got(p.maturation_rate));
    require(p.incubation_rate > 0.0, "eta_m: must be > 0" + got(p.incubation_rate));
    require(p.adult_mortality > 0.0, "mu_m: must be > 0" + got(p.adult_mortality));
    require(p.larva_capacity > 0.0, "k: must be > 0" + got(p.larva_capacity));
    require(cfg.per_day_scale > 0.0,
            "per_day_scale: must be > 0" + got(cfg.per_day_scale));

    require(cfg.weights.w1 > 0.0, "w1: must be > 0" + got(cfg.weights.w1));
    require(cfg.weights.w2 > 0.0, "w2: must be > 0" + got(cfg.weights.w2));
    require(cfg.weights.w3 > 0.0, "w3: must be > 0" + got(cfg.weights.w3));
    require(cfg.weights.w4 > 0.0, "w4: must be > 0" + got(cfg.weights.w4));

    static const char* names[8] = {"s", "i", "w", "m", "am", "sm", "em", "im"};
    for (std::size_t c = 0; c < StateVector::size; ++c)
        require(cfg.initial[c] >= 0.0 && std::isfinite(cfg.initial[c]),
                std::string("initial.") + names[c] + ": must be finite and >= 0" +
                    got(cfg.initial[c]));
    require(total_women(cfg.initial) > 0.0,
            "initial: women total s+i+w+m must be > 0" + got(total_women(cfg.initial)));

    require(cfg.grid.t_f > 0.0, "t_f: must be > 0" + got(cfg.grid.t_f));
    require(cfg.grid.n_steps >= 2, "n_steps: must be >= 2 (got " +
                                       std::to_string(cfg.grid.n_steps) + ")");
    require(cfg.fbsm.max_iters >= 1, "max_iters: must be >= 1");
    require(cfg.fbsm.rel_tol > 0.0, "tol: must be > 0" + got(cfg.fbsm.rel_tol));
    require(cfg.fbsm.relaxation > 0.0 && cfg.fbsm.relaxation <= 1.0,
            "relaxation: must lie in (0, 1]" + got(cfg.fbsm.relaxation));
    require(cfg.fbsm.u_max > 0.0 && cfg.fbsm.u_max <= 0.5,
            "u_max: must lie in (0, 0.5]" + got(cfg.fbsm.u_max));
    for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i) {
        require(cfg.sweep_values[i] > 0.0,
                "sweep: values must be > 0" + got(cfg.sweep_values[i]));
        require(i == 0 || cfg.sweep_values[i] > cfg.sweep_values[i - 1],
                "sweep: values must be strictly ascending");
    }
}

std::string effective_params_report(const RunConfig& cfg) {
    const ModelParams p = cfg.effective_params();
    std::ostringstream out;
    out << "effective parameters (per_day_scale = " << fmt(cfg.per_day_scale) << ")\n";
    out << "  lambda  = " << fmt(p.recruitment) << "\n";
    out << "  phi     = " << fmt(p.infected_fraction) << "\n";
    out << "  b       = " << fmt(p.biting_rate) << "\n";
    out << "  beta_mh = " << fmt(p.transmission_mh) << "\n";
    out << "  beta_hm = " << fmt(p.transmission_hm) << "\n";
    out << "  tau1    = " << fmt(p.birth_rate_susceptible) << "\n";
    out << "  tau2    = " << fmt(p.birth_rate_infected) << "\n";
    out << "  mu_h    = " << fmt(p.maternal_exit_rate) << "\n";
    out << "  psi     = " << fmt(p.microcephaly_fraction) << "\n";
    out << "  mu_b    = " << fmt(p.eggs_per_capita) << "\n";
    out << "  mu_a    = " << fmt(p.larva_mortality) << "\n";
    out << "  eta_a   = " << fmt(p.maturation_rate) << "\n";
    out << "  eta_m   = " << fmt(p.incubation_rate) << "\n";
    out << "  mu_m    = " << fmt(p.adult_mortality) << "\n";
    out << "  k       = " << fmt(p.larva_capacity) << "\n";
    out << "  weights w1..w4 = " << fmt(cfg.weights.w1) << " " << fmt(cfg.weights.w2) << " "
        << fmt(cfg.weights.w3) << " " << fmt(cfg.weights.w4) << "\n";
    out << "  grid: t_f = " << fmt(cfg.grid.t_f) << ", n_steps = " << cfg.grid.n_steps
        << ", u_max = " << fmt(cfg.fbsm.u_max) << "\n";
    return out.str();
}

ScenarioSpec make_scenario(const RunConfig& cfg, ControlMode mode, const std::string& label) {
    ScenarioSpec spec;
    spec.label = label;
    spec.mode = mode;
    spec.params = cfg.effective_params();
    spec.weights = cfg.weights;
    spec.x0 = cfg.initial;
    spec.grid = cfg.grid;
    spec.fbsm = cfg.fbsm;
    return spec;
}

}  // namespace zikaoc
