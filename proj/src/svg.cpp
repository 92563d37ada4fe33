#include "zikaoc/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "zikaoc/config.hpp"

namespace zikaoc {

namespace {

constexpr int plot_w = 420;
constexpr int plot_h = 280;
constexpr int margin_l = 70;
constexpr int margin_r = 20;
constexpr int margin_t = 40;
constexpr int margin_b = 45;
constexpr int cell_w = plot_w + margin_l + margin_r;
constexpr int cell_h = plot_h + margin_t + margin_b;
constexpr int legend_h = 26;

const char* const palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                               "#ff7f0e", "#8c564b", "#e377c2", "#7f7f7f"};

std::string esc(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

struct Series {
    std::vector<double> x;
    std::vector<double> y;
};

struct Subplot {
    std::string title;
    std::vector<Series> series;  // one per scenario, palette order
};

void render_subplot(std::string& out, const Subplot& sp, int ox, int oy) {
    double x_lo = 0.0, x_hi = 1.0;
    double y_lo = std::numeric_limits<double>::infinity(), y_hi = -y_lo;
    for (const auto& s : sp.series) {
        for (double v : s.x) x_hi = std::max(x_hi, v);
        for (double v : s.y) {
            y_lo = std::min(y_lo, v);
            y_hi = std::max(y_hi, v);
        }
    }
    if (!(y_lo < y_hi)) {
        y_lo -= 1.0;
        y_hi += 1.0;
    }
    const double pad = 0.05 * (y_hi - y_lo);
    y_lo -= pad;
    y_hi += pad;

    const int px = ox + margin_l, py = oy + margin_t;
    const auto sx = [&](double v) { return px + (v - x_lo) / (x_hi - x_lo) * plot_w; };
    const auto sy = [&](double v) { return py + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h; };

    out += "<rect x=\"" + num(px) + "\" y=\"" + num(py) + "\" width=\"" + num(plot_w) +
           "\" height=\"" + num(plot_h) +
           "\" fill=\"none\" stroke=\"#404040\" stroke-width=\"1\"/>\n";
    out += "<text x=\"" + num(px + plot_w / 2.0) + "\" y=\"" + num(py - 10) +
           "\" text-anchor=\"middle\" font-size=\"15\">" + esc(sp.title) + "</text>\n";
    out += "<text x=\"" + num(px - 6) + "\" y=\"" + num(sy(y_hi - pad) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + num(y_hi - pad) + "</text>\n";
    out += "<text x=\"" + num(px - 6) + "\" y=\"" + num(sy(y_lo + pad) + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + num(y_lo + pad) + "</text>\n";
    out += "<text x=\"" + num(px) + "\" y=\"" + num(py + plot_h + 16) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + num(x_lo) + "</text>\n";
    out += "<text x=\"" + num(px + plot_w) + "\" y=\"" + num(py + plot_h + 16) +
           "\" text-anchor=\"middle\" font-size=\"11\">" + num(x_hi) + "</text>\n";
    out += "<text x=\"" + num(px + plot_w / 2.0) + "\" y=\"" + num(py + plot_h + 32) +
           "\" text-anchor=\"middle\" font-size=\"12\">t (weeks)</text>\n";

    for (std::size_t i = 0; i < sp.series.size(); ++i) {
        const auto& s = sp.series[i];
        std::string pts;
        for (std::size_t k = 0; k < s.x.size(); ++k) {
            pts += num(sx(s.x[k]));
            pts += ",";
            pts += num(sy(s.y[k]));
            if (k + 1 < s.x.size()) pts += " ";
        }
        out += "<polyline fill=\"none\" stroke=\"";
        out += palette[i % 8];
        out += "\" stroke-width=\"1.5\" points=\"" + pts + "\"/>\n";
    }
}

void write_panel(const std::string& path, const std::vector<std::string>& labels,
                 const std::vector<Subplot>& subplots, int cols) {
    const int rows = static_cast<int>((subplots.size() + cols - 1) / cols);
    const int width = cols * cell_w;
    const int height = rows * cell_h + legend_h;

    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(width) + "\" height=\"" + std::to_string(height) +
           "\" viewBox=\"0 0 " + std::to_string(width) + " " + std::to_string(height) +
           "\">\n";
    out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    for (std::size_t i = 0; i < labels.size(); ++i) {
        const double lx = 20 + 170.0 * static_cast<double>(i);
        out += "<line x1=\"" + num(lx) + "\" y1=\"14\" x2=\"" + num(lx + 24) +
               "\" y2=\"14\" stroke=\"";
        out += palette[i % 8];
        out += "\" stroke-width=\"2\"/>\n";
        out += "<text x=\"" + num(lx + 30) + "\" y=\"18\" font-size=\"13\">" +
               esc(labels[i]) + "</text>\n";
    }
    for (std::size_t i = 0; i < subplots.size(); ++i) {
        const int ox = static_cast<int>(i % cols) * cell_w;
        const int oy = legend_h + static_cast<int>(i / cols) * cell_h;
        render_subplot(out, subplots[i], ox, oy);
    }
    out += "</svg>\n";

    std::ofstream f(path);
    if (!f) throw IoError("cannot open for writing: " + path);
    f << out;
    if (!f) throw IoError("write failed: " + path);
}

Series make_series(const ScenarioResult& r, std::size_t component) {
    Series s;
    s.x.reserve(r.grid.n_nodes());
    s.y.reserve(r.grid.n_nodes());
    for (std::size_t k = 0; k < r.grid.n_nodes(); ++k) {
        s.x.push_back(r.grid.node(k));
        s.y.push_back(r.solution.states[k][component]);
    }
    return s;
}

Series make_control_series(const ScenarioResult& r, bool first) {
    Series s;
    for (std::size_t k = 0; k < r.grid.n_nodes(); ++k) {
        s.x.push_back(r.grid.node(k));
        s.y.push_back(first ? r.solution.controls.u1[k] : r.solution.controls.u2[k]);
    }
    return s;
}

}  // namespace

std::vector<std::string> emit_plots(const std::vector<ScenarioResult>& results,
                                    const std::string& out_dir) {
    if (results.empty()) throw std::invalid_argument("emit_plots: no results");
    std::vector<std::string> labels;
    for (const auto& r : results) labels.push_back(r.label);

    static const char* women_titles[4] = {"S: susceptible pregnant", "I: infected pregnant",
                                          "W: births without disorder",
                                          "M: births with microcephaly"};
    static const char* mosq_titles[4] = {"Am: aquatic phase", "Sm: susceptible mosquitoes",
                                         "Em: exposed mosquitoes",
                                         "Im: infectious mosquitoes"};

    std::vector<Subplot> women(4), mosquitoes(4), controls(2);
    for (int i = 0; i < 4; ++i) {
        women[i].title = women_titles[i];
        mosquitoes[i].title = mosq_titles[i];
        for (const auto& r : results) {
            women[i].series.push_back(make_series(r, static_cast<std::size_t>(i)));
            mosquitoes[i].series.push_back(make_series(r, static_cast<std::size_t>(i) + 4));
        }
    }
    controls[0].title = "control u1 (protection)";
    controls[1].title = "control u2 (insecticide)";
    for (const auto& r : results) {
        controls[0].series.push_back(make_control_series(r, true));
        controls[1].series.push_back(make_control_series(r, false));
    }

    std::vector<std::string> written;
    written.push_back(out_dir + "/women.svg");
    write_panel(written.back(), labels, women, 2);
    written.push_back(out_dir + "/mosquitoes.svg");
    write_panel(written.back(), labels, mosquitoes, 2);
    written.push_back(out_dir + "/controls.svg");
    write_panel(written.back(), labels, controls, 2);
    return written;
}

}  // namespace zikaoc
