#include "commcalc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "commcalc/errors.hpp"

namespace commcalc::io {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, ptr);
}

double quantize_9(double v) {
    if (!std::isfinite(v) || v == 0.0) return v;
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.8e", v);
    return std::strtod(buf, nullptr);
}

std::string format_double_9(double v) { return format_double(quantize_9(v)); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("read failure on '" + path + "'");
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw IoError("write failure on '" + path + "'");
}

Matrix parse_matrix_json(const std::string& text, const std::string& origin) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw IoError(origin + ": invalid JSON: " + e.what());
    }
    if (!j.is_object())
        throw IoError(origin + ": expected a JSON object with keys "
                               "\"d\" and \"entries\"");
    for (const auto& item : j.items())
        if (item.key() != "d" && item.key() != "entries")
            throw IoError(origin + ": unknown key \"" + item.key() + "\"");
    if (!j.contains("d") || !j["d"].is_number_integer())
        throw IoError(origin + ": \"d\" must be an integer dimension");
    const long long d = j["d"].get<long long>();
    if (d < 1 || d > 4096)
        throw IoError(origin + ": dimension " + std::to_string(d) +
                      " out of range");
    if (!j.contains("entries") || !j["entries"].is_array() ||
        static_cast<long long>(j["entries"].size()) != d)
        throw IoError(origin + ": \"entries\" must be an array of " +
                      std::to_string(d) + " rows");
    Matrix m(d, d);
    for (long long i = 0; i < d; ++i) {
        const auto& row = j["entries"][i];
        if (!row.is_array() || static_cast<long long>(row.size()) != d)
            throw IoError(origin + ": row " + std::to_string(i) +
                          " must hold " + std::to_string(d) + " numbers");
        for (long long k = 0; k < d; ++k) {
            if (!row[k].is_number())
                throw IoError(origin + ": entry (" + std::to_string(i) + "," +
                              std::to_string(k) + ") is not a number");
            const double v = row[k].get<double>();
            if (!std::isfinite(v))
                throw IoError(origin + ": entry (" + std::to_string(i) + "," +
                              std::to_string(k) + ") is not finite");
            m(i, k) = v;
        }
    }
    return m;
}

Matrix read_matrix_json(const std::string& path) {
    return parse_matrix_json(read_file(path), path);
}

std::string matrix_to_json(const Matrix& m, bool quantize) {
    std::string out = "{\n  \"d\": " + std::to_string(m.rows()) +
                      ",\n  \"entries\": [\n";
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        out += "    [";
        for (Eigen::Index k = 0; k < m.cols(); ++k) {
            out += quantize ? format_double_9(m(i, k)) : format_double(m(i, k));
            if (k + 1 < m.cols()) out += ", ";
        }
        out += i + 1 < m.rows() ? "],\n" : "]\n";
    }
    out += "  ]\n}\n";
    return out;
}

std::string trajectory_to_csv(int dim, const std::vector<TrajectoryRow>& rows) {
    std::string out = "t";
    for (int i = 0; i < dim; ++i)
        for (int k = 0; k < dim; ++k)
            out += ",s" + std::to_string(i) + std::to_string(k);
    out += ",cross_residual\n";
    for (const auto& row : rows) {
        out += format_double(row.t);
        for (double v : row.state) out += "," + format_double(v);
        out += "," + format_double(row.cross_residual) + "\n";
    }
    return out;
}

}  // namespace commcalc::io
