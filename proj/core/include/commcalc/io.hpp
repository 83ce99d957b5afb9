#pragma once

#include <string>
#include <vector>

#include "commcalc/matrix.hpp"

namespace commcalc::io {

// Shortest decimal string that round-trips to the same double.
std::string format_double(double v);

// Round to nine significant decimal digits.  Every matrix entry and
// eigenvalue printed by the command-line tool passes through this, so
// algebraically equivalent evaluation routes (spectral vs. closed form,
// different derivative variants) produce byte-identical files whenever they
// agree to ~1e-9 relative, which the cross-route tolerances guarantee.
double quantize_9(double v);
std::string format_double_9(double v);

// Matrix file format: {"d": n, "entries": [[row 0], ..., [row n-1]]}.
// Unknown keys, shape mismatches, and non-finite entries are IoError.
Matrix read_matrix_json(const std::string& path);
Matrix parse_matrix_json(const std::string& text, const std::string& origin);
std::string matrix_to_json(const Matrix& m, bool quantize = true);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& text);

// One integrator output row: time, state entries in row-major order, and
// the cross-check residual recorded alongside the state.
struct TrajectoryRow {
    double t = 0.0;
    std::vector<double> state;
    double cross_residual = 0.0;
};

std::string trajectory_to_csv(int dim, const std::vector<TrajectoryRow>& rows);

}  // namespace commcalc::io
