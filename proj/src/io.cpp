#include "gsx/io.hpp"

#include "gsx/error.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fmt/core.h>
#include <fstream>
#include <sstream>
#include <unistd.h>

namespace gsx::io {

namespace fs = std::filesystem;

std::string format_double(double v) {
    return fmt::format("{:.17g}", v);
}

std::string format_optional(const std::optional<double>& v) {
    return v ? format_double(*v) : std::string("null");
}

json to_json(const models::ModelSpec& s) {
    json j{{"kind", models::to_string(s.kind)}, {"n", s.n}};
    if (s.delta) j["delta"] = *s.delta;
    if (s.h) j["h"] = *s.h;
    if (s.seed) j["seed"] = *s.seed;
    if (s.kind == models::Kind::random_chiral) j["chiral_sign"] = s.chiral_sign;
    return j;
}

models::ModelSpec model_from_json(const json& j) {
    try {
        models::ModelSpec s;
        s.kind = models::kind_from_string(j.at("kind").get<std::string>());
        s.n = j.at("n").get<int>();
        if (j.contains("delta") && !j["delta"].is_null()) s.delta = j["delta"].get<double>();
        if (j.contains("h") && !j["h"].is_null()) s.h = j["h"].get<double>();
        if (j.contains("seed") && !j["seed"].is_null()) s.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("chiral_sign")) s.chiral_sign = j["chiral_sign"].get<int>();
        return s;
    } catch (const json::exception& e) {
        throw InvalidInput(fmt::format("malformed model spec: {}", e.what()));
    }
}

void write_atomic(const std::string& path, const std::string& content) {
    const fs::path target(path);
    const fs::path tmp = target.string() + fmt::format(".tmp{}", static_cast<long>(::getpid()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw InvalidInput(fmt::format("cannot open '{}' for writing", tmp.string()));
        out << content;
        out.flush();
        if (!out) {
            out.close();
            fs::remove(tmp);
            throw InvalidInput(fmt::format("failed writing '{}'", tmp.string()));
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw InvalidInput(fmt::format("cannot move output into place at '{}': {}", path, ec.message()));
    }
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput(fmt::format("cannot read '{}'", path));
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string sidecar_path(const std::string& data_path) {
    return data_path + ".json";
}

Cell cell(const std::optional<double>& v) {
    return v ? Cell(*v) : Cell();
}

std::string format_cell(const Cell& c) {
    if (const auto* d = std::get_if<double>(&c)) return format_double(*d);
    if (const auto* s = std::get_if<std::string>(&c)) return *s;
    return "null";
}

std::vector<std::optional<double>> Table::column(const std::string& name) const {
    const auto it = std::find(columns.begin(), columns.end(), name);
    if (it == columns.end()) throw InvalidInput(fmt::format("no column '{}'", name));
    const auto k = static_cast<std::size_t>(it - columns.begin());
    std::vector<std::optional<double>> out;
    for (const auto& row : rows) {
        if (const auto* d = std::get_if<double>(&row[k])) out.emplace_back(*d);
        else out.emplace_back();
    }
    return out;
}

std::string to_csv(const Table& t) {
    std::string out;
    for (std::size_t c = 0; c < t.columns.size(); ++c) out += (c ? "," : "") + t.columns[c];
    out += '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c) out += ',';
            out += format_cell(row[c]);
        }
        out += '\n';
    }
    return out;
}

json to_json(const Table& t) {
    json rows = json::array();
    for (const auto& row : t.rows) {
        json r = json::object();
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const auto* d = std::get_if<double>(&row[c])) r[t.columns[c]] = *d;
            else if (const auto* s = std::get_if<std::string>(&row[c])) r[t.columns[c]] = *s;
            else r[t.columns[c]] = nullptr;
        }
        rows.push_back(std::move(r));
    }
    return json{{"columns", t.columns}, {"rows", rows}};
}

Table parse_csv(const std::string& text) {
    Table t;
    std::istringstream in(text);
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> out;
        std::string cell;
        std::istringstream ls(s);
        while (std::getline(ls, cell, ',')) out.push_back(cell);
        if (!s.empty() && s.back() == ',') out.emplace_back();
        return out;
    };
    if (!std::getline(in, line)) throw InvalidInput("empty CSV");
    t.columns = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != t.columns.size()) throw InvalidInput(fmt::format("CSV row has {} cells, header has {}", cells.size(), t.columns.size()));
        std::vector<Cell> row;
        for (const auto& c : cells) {
            if (c == "null" || c.empty()) {
                row.emplace_back();
                continue;
            }
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(c, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used == c.size()) row.emplace_back(v);
            else row.emplace_back(c);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

Table sweep_table(const sweep::SweepTable& t) {
    Table out{{"delta", "complexity", "fidelity", "fubini_study", "entropy_half", "d2_fidelity", "d2_complexity"}, {}};
    for (const auto& r : t.rows)
        out.rows.push_back({r.delta, cell(r.complexity), r.fidelity, r.fubini_study, r.entropy_half, cell(r.d2_fidelity),
                            cell(r.d2_complexity)});
    return out;
}

Table spectral_table(const sweep::SpectralFlow& f) {
    Table out;
    out.columns.push_back("delta");
    const std::size_t width = f.phases.empty() ? 0 : f.phases.front().size();
    for (std::size_t j = 0; j < width; ++j) out.columns.push_back(fmt::format("theta_{}", j + 1));
    for (std::size_t i = 0; i < f.delta.size(); ++i) {
        std::vector<Cell> row{f.delta[i]};
        for (double th : f.phases[i]) row.emplace_back(th);
        out.rows.push_back(std::move(row));
    }
    return out;
}

Table matrix_table(const Eigen::MatrixXd& m) {
    Table out;
    for (Eigen::Index c = 0; c < m.cols(); ++c) out.columns.push_back(fmt::format("c{}", c + 1));
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        std::vector<Cell> row;
        for (Eigen::Index c = 0; c < m.cols(); ++c) row.emplace_back(m(r, c));
        out.rows.push_back(std::move(row));
    }
    return out;
}

Table scaling_table(const std::vector<sweep::ScalingRow>& rows) {
    Table out{{"model", "n", "complexity", "entropy_half", "obstructed"}, {}};
    for (const auto& r : rows)
        out.rows.push_back({r.model, static_cast<double>(r.n), cell(r.complexity), r.entropy_half, r.obstructed ? 1.0 : 0.0});
    return out;
}

json sweep_metadata(const sweep::SweepMeta& m, const sweep::Grid& grid) {
    json j{{"model", to_json(m.model)},
           {"n", m.model.n},
           {"mode", sweep::to_string(m.mode)},
           {"epsilon", m.epsilon ? json(*m.epsilon) : json(nullptr)},
           {"ref_delta", m.ref_delta ? json(*m.ref_delta) : json(nullptr)},
           {"grid",
            {{"start", grid.points.empty() ? 0.0 : grid.points.front()},
             {"stop", grid.points.empty() ? 0.0 : grid.points.back()},
             {"step", grid.step},
             {"points", grid.points.size()}}},
           {"clipped", m.clipped}};
    return j;
}

std::string covariance_csv(const Eigen::MatrixXd& m) {
    std::string out;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            if (c) out += ',';
            out += format_double(m(r, c));
        }
        out += '\n';
    }
    return out;
}

Eigen::MatrixXd parse_covariance_csv(const std::string& text) {
    std::vector<std::vector<double>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        std::string cell;
        while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw InvalidInput("empty covariance dump");
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows.front().size()) throw InvalidInput("ragged covariance dump");
        for (std::size_t c = 0; c < rows[r].size(); ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rows[r][c];
    }
    return m;
}

} // namespace gsx::io
