#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "lmmse/experiments.hpp"
#include "lmmse/linalg.hpp"
#include "lmmse/model.hpp"

namespace lmmse::io {

using nlohmann::json;

/// Shortest text that parses back to the same double ("%.17g" width cap).
std::string format_double(double v);

/// Dense matrix text: "rows cols" header line, then row-major values, one
/// matrix row per line, 17 significant digits.
std::string format_matrix(const Matrix& m);
Matrix parse_matrix(const std::string& text);

void write_matrix_file(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_file(const std::filesystem::path& path);

/// Row-major nested arrays: [[row 0], [row 1], ...].
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

/// {"A": [[...]], "Cxx": [[...]], "Czz": [[...]]}
json model_to_json(const LinearModel& model);
LinearModel model_from_json(const json& j);

/// Directory holding A.txt, Cxx.txt and Czz.txt in the matrix text format.
void save_model_dir(const std::filesystem::path& dir, const LinearModel& model);

/// Loads a model from a directory (see save_model_dir) or a JSON document.
LinearModel load_model(const std::filesystem::path& path);

json solution_to_json(const LmmseSolution& sol);

/// "tau,exceed_fraction" rows.
std::string tail_csv(const TailReport& rep);
/// "replication,mse,test_mse" rows; test_mse is empty when absent.
std::string values_csv(const TailReport& rep);
/// Report numbers (no config echo) as JSON.
json report_to_json(const TailReport& rep, bool include_values);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace lmmse::io
