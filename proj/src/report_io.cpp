#include "lmmse/report_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "lmmse/errors.hpp"

namespace lmmse::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string format_matrix(const Matrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << '\n';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.17g", m(i, j));
      if (j) out << ' ';
      out << buf;
    }
    out << '\n';
  }
  return out.str();
}

Matrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  long long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows < 0 || cols < 0) {
    fail(ErrorKind::IoError, "matrix text must start with 'rows cols'");
  }
  Matrix m(rows, cols);
  std::string token;
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) {
      if (!(in >> token)) fail(ErrorKind::TruncatedFile, "matrix text ended early");
      double v = 0.0;
      const auto res = std::from_chars(token.data(), token.data() + token.size(), v);
      if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
        fail(ErrorKind::IoError, "bad matrix entry '" + token + "'");
      }
      m(i, j) = v;
    }
  if (in >> token) fail(ErrorKind::IoError, "trailing data after matrix entries");
  return m;
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
  out << text;
  if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  write_text_file(path, format_matrix(m));
}

Matrix read_matrix_file(const std::filesystem::path& path) { return parse_matrix(read_text_file(path)); }

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const json& j) {
  if (!j.is_array()) fail(ErrorKind::IoError, "matrix must be an array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const Eigen::Index cols = rows ? static_cast<Eigen::Index>(j.front().size()) : 0;
  Matrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      fail(ErrorKind::DimensionMismatch, "ragged matrix rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& v = row[static_cast<std::size_t>(c)];
      if (!v.is_number()) fail(ErrorKind::IoError, "matrix entries must be numbers");
      m(i, c) = v.get<double>();
    }
  }
  return m;
}

json model_to_json(const LinearModel& model) {
  return {{"A", matrix_to_json(model.a())}, {"Cxx", matrix_to_json(model.cxx())},
          {"Czz", matrix_to_json(model.czz())}};
}

LinearModel model_from_json(const json& j) {
  for (const char* key : {"A", "Cxx", "Czz"}) {
    if (!j.contains(key)) fail(ErrorKind::IoError, std::string("model JSON lacks '") + key + "'");
  }
  return build_model(matrix_from_json(j.at("A")), matrix_from_json(j.at("Cxx")), matrix_from_json(j.at("Czz")));
}

void save_model_dir(const std::filesystem::path& dir, const LinearModel& model) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) fail(ErrorKind::IoError, "cannot create " + dir.string());
  write_matrix_file(dir / "A.txt", model.a());
  write_matrix_file(dir / "Cxx.txt", model.cxx());
  write_matrix_file(dir / "Czz.txt", model.czz());
}

LinearModel load_model(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) {
    return build_model(read_matrix_file(path / "A.txt"), read_matrix_file(path / "Cxx.txt"),
                       read_matrix_file(path / "Czz.txt"));
  }
  json j;
  try {
    j = json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    fail(ErrorKind::IoError, path.string() + ": " + e.what());
  }
  return model_from_json(j);
}

json solution_to_json(const LmmseSolution& sol) {
  return {{"theta_star", matrix_to_json(sol.theta_star)},
          {"cee", matrix_to_json(sol.cee)},
          {"mse", sol.mse},
          {"cyy", matrix_to_json(sol.cyy)},
          {"cee_form_disagreement", sol.cee_form_disagreement}};
}

std::string tail_csv(const TailReport& rep) {
  std::string out = "tau,exceed_fraction\n";
  for (std::size_t i = 0; i < rep.tau_grid.size(); ++i) {
    out += format_double(rep.tau_grid[i]) + ',' + format_double(rep.exceed_fractions[i]) + '\n';
  }
  return out;
}

std::string values_csv(const TailReport& rep) {
  std::string out = "replication,mse,test_mse\n";
  for (std::size_t i = 0; i < rep.mse_values.size(); ++i) {
    out += std::to_string(i) + ',' + format_double(rep.mse_values[i]) + ',';
    if (rep.test_values) out += format_double((*rep.test_values)[i]);
    out += '\n';
  }
  return out;
}

json report_to_json(const TailReport& rep, bool include_values) {
  json j{{"eps", rep.eps},
         {"n", rep.n},
         {"trace_cee", rep.trace_cee},
         {"reference_expected", rep.reference_expected},
         {"reference_asymptotic", rep.reference_asymptotic},
         {"retries", rep.retries},
         {"mean_mse", mean_of(rep.mse_values)},
         {"mean_relative_excess", mean_of(rep.mse_values) / rep.trace_cee - 1.0}};
  if (rep.test_values) j["mean_test_mse"] = mean_of(*rep.test_values);
  if (include_values) {
    j["tau"] = rep.tau_grid;
    j["exceed_fraction"] = rep.exceed_fractions;
    j["mse"] = rep.mse_values;
    if (rep.test_values) {
      j["test_mse"] = *rep.test_values;
      if (rep.test_exceed_fractions) j["test_exceed_fraction"] = *rep.test_exceed_fractions;
    }
  }
  return j;
}

}  // namespace lmmse::io
