#include "support.hpp"

#include <filesystem>
#include <limits>

#include "lmmse/report_io.hpp"

using namespace lmmse;
namespace fs = std::filesystem;

TEST_CASE("format_double round trips") {
  Rng rng({1, 0});
  for (int i = 0; i < 2000; ++i) {
    const double v = std::ldexp(rng.normal(), static_cast<int>(rng.below(200)) - 100);
    CHECK(std::stod(io::format_double(v)) == v);
  }
  CHECK(io::format_double(0.25) == "0.25");
  CHECK(io::format_double(13329.0) == "13329");
}

TEST_CASE("matrix text format") {
  Matrix m(2, 3);
  m << 0.1, -2.5, 1.0 / 3, 1e-300, 7.0, std::numeric_limits<double>::max();
  const std::string text = io::format_matrix(m);
  CHECK(text.rfind("2 3\n", 0) == 0);
  CHECK(io::parse_matrix(text) == m);
  CHECK_ERROR_KIND(io::parse_matrix("2 2\n1 2 3\n"), ErrorKind::TruncatedFile);
  CHECK_THROWS_AS(io::parse_matrix("x y\n"), Error);

  const fs::path dir = fs::temp_directory_path() / "lmmse_lab_tests";
  fs::create_directories(dir);
  io::write_matrix_file(dir / "m.txt", m);
  CHECK(io::read_matrix_file(dir / "m.txt") == m);
  CHECK_ERROR_KIND(io::read_matrix_file(dir / "missing.txt"), ErrorKind::IoError);
}

TEST_CASE("model serialization") {
  const LinearModel model = testing::random_model(3, 2, 4);
  const LinearModel from_json = io::model_from_json(io::model_to_json(model));
  CHECK(from_json.a() == model.a());
  CHECK(from_json.cxx() == model.cxx());
  CHECK(from_json.czz() == model.czz());

  const fs::path dir = fs::temp_directory_path() / "lmmse_lab_tests" / "model_dir";
  io::save_model_dir(dir, model);
  const LinearModel loaded = io::load_model(dir);
  CHECK(loaded.a() == model.a());
  CHECK(loaded.czz() == model.czz());

  const fs::path file = dir.parent_path() / "model.json";
  io::write_text_file(file, io::model_to_json(model).dump());
  CHECK(io::load_model(file).cxx() == model.cxx());

  CHECK_THROWS_AS(io::matrix_from_json(io::json::parse("[[1, 2], [3]]")), Error);
}

TEST_CASE("report encodings carry the same numbers") {
  TailReport rep;
  rep.eps = 0.25;
  rep.n = 81;
  rep.mse_values = {1.0 / 3, 2.0 / 7};
  rep.test_values = std::vector<double>{0.1, 0.2};
  rep.tau_grid = {1.0, 1.5};
  rep.exceed_fractions = {1.0, 0.5};
  rep.test_exceed_fractions = std::vector<double>{1.0, 0.0};
  rep.trace_cee = 0.2;
  const std::string csv = io::values_csv(rep);
  CHECK(csv.rfind("replication,mse,test_mse\n", 0) == 0);
  const io::json j = io::report_to_json(rep, true);
  CHECK(j["mse"][0].get<double>() == rep.mse_values[0]);
  const auto line = csv.substr(csv.find('\n') + 1);
  CHECK(std::stod(line.substr(line.find(',') + 1)) == rep.mse_values[0]);
  CHECK(io::tail_csv(rep) == "tau,exceed_fraction\n1,1\n1.5,0.5\n");
}
