#include "alphatime/report.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace alphatime {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string csv_field(const std::string& raw) {
    if (raw.find_first_of(",\"\r\n") == std::string::npos) return raw;
    std::string out = "\"";
    for (char c : raw) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

void CsvWriter::header(const std::vector<std::string>& cols) { emit(cols); }
void CsvWriter::row(const std::vector<std::string>& cells) { emit(cells); }

void CsvWriter::emit(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ += ',';
        out_ += csv_field(cells[i]);
    }
    out_ += "\r\n";
}

nlohmann::ordered_json to_json(const ResidualReport& rep) {
    nlohmann::ordered_json j;
    j["theorem"] = rep.theorem_tag;
    j["tolerance"] = rep.tolerance;
    j["floor"] = rep.floor_val;
    j["pass"] = rep.pass;
    j["exploratory"] = rep.exploratory;
    j["low_precision_fd"] = rep.low_precision_fd;
    j["max_rel_residual"] = rep.max_rel_residual;
    j["max_x_spread"] = rep.max_x_spread;
    nlohmann::ordered_json pts = nlohmann::ordered_json::array();
    for (const auto& p : rep.points) {
        nlohmann::ordered_json e;
        e["t"] = p.t;
        e["x"] = p.x;
        e["lhs"] = p.lhs;
        e["rhs"] = p.rhs;
        e["abs_residual"] = p.abs_residual;
        e["rel_residual"] = p.rel_residual;
        pts.push_back(e);
    }
    j["points"] = pts;
    return j;
}

nlohmann::ordered_json to_json(const Estimate& est) {
    nlohmann::ordered_json j;
    j["mean"] = est.mean;
    j["std_error"] = est.std_error;
    j["n"] = est.n;
    return j;
}

void append_points_csv(CsvWriter& csv, const std::string& experiment,
                       const std::string& tag, const ResidualReport& rep) {
    for (const auto& p : rep.points)
        csv.row({experiment, tag, fmt_double(p.t), fmt_double(p.x),
                 fmt_double(p.lhs), fmt_double(p.rhs),
                 fmt_double(p.abs_residual), fmt_double(p.rel_residual)});
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << content;
}

}  // namespace alphatime
