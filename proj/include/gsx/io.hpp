#pragma once

#include "gsx/models.hpp"
#include "gsx/sweep.hpp"

#include <Eigen/Dense>
#include <json.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gsx::io {

using nlohmann::json;

inline constexpr const char* kToolVersion = "0.1.0";

// 17 significant digits, round-trips every double.
std::string format_double(double v);
std::string format_optional(const std::optional<double>& v);

json to_json(const models::ModelSpec& s);
models::ModelSpec model_from_json(const json& j);

// Writes to a sibling temporary and renames, so readers never see partial files.
void write_atomic(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);
std::string sidecar_path(const std::string& data_path);

// A cell is null, a number or text.
using Cell = std::variant<std::monostate, double, std::string>;
Cell cell(const std::optional<double>& v);
std::string format_cell(const Cell& c);

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    // Numeric column by name; nulls and text become empty optionals.
    std::vector<std::optional<double>> column(const std::string& name) const;
};

std::string to_csv(const Table& t);
json to_json(const Table& t);           // array of row objects, nulls preserved
Table parse_csv(const std::string& text);

Table sweep_table(const sweep::SweepTable& t);
Table spectral_table(const sweep::SpectralFlow& f);
Table matrix_table(const Eigen::MatrixXd& m);
Table scaling_table(const std::vector<sweep::ScalingRow>& rows);

json sweep_metadata(const sweep::SweepMeta& m, const sweep::Grid& grid);

// Covariance dump: headerless CSV matrix plus sidecar fields.
std::string covariance_csv(const Eigen::MatrixXd& m);
Eigen::MatrixXd parse_covariance_csv(const std::string& text);

} // namespace gsx::io
