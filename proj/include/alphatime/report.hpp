#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "alphatime/residuals.hpp"
#include "alphatime/stats.hpp"

namespace alphatime {

/// Round-trip decimal formatting; all report numbers go through this so
/// reruns are byte-identical.
std::string fmt_double(double v);

/// RFC 4180 CSV accumulator (CRLF rows, quoting only where required).
class CsvWriter {
public:
    void header(const std::vector<std::string>& cols);
    void row(const std::vector<std::string>& cells);
    const std::string& str() const { return out_; }

private:
    void emit(const std::vector<std::string>& cells);
    std::string out_;
};

std::string csv_field(const std::string& raw);

nlohmann::ordered_json to_json(const ResidualReport& rep);
nlohmann::ordered_json to_json(const Estimate& est);

void append_points_csv(CsvWriter& csv, const std::string& experiment,
                       const std::string& tag, const ResidualReport& rep);

void write_file(const std::string& path, const std::string& content);

}  // namespace alphatime
