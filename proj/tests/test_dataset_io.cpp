#include "support.hpp"

#include <filesystem>
#include <fstream>
#include <set>

#include "lmmse/dataset_io.hpp"
#include "lmmse/experiments.hpp"

using namespace lmmse;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "lmmse_lab_tests";
  fs::create_directories(dir);
  return dir / name;
}

void write_bytes(const fs::path& p, const std::vector<unsigned char>& bytes) {
  std::ofstream out(p, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

std::vector<unsigned char> header(std::uint32_t magic, std::uint32_t count, std::uint32_t rows, std::uint32_t cols) {
  std::vector<unsigned char> out;
  for (std::uint32_t v : {magic, count, rows, cols})
    for (int shift = 24; shift >= 0; shift -= 8) out.push_back(static_cast<unsigned char>((v >> shift) & 0xff));
  return out;
}

}  // namespace

TEST_CASE("load_idx_images reads a hand-built fixture") {
  auto bytes = header(0x803, 2, 2, 2);
  for (unsigned char b : {0, 255, 51, 102, 255, 0, 0, 204}) bytes.push_back(b);
  const fs::path p = scratch("two.idx");
  write_bytes(p, bytes);

  const ImageDataset ds = load_idx_images(p);
  REQUIRE(ds.count() == 2);
  REQUIRE(ds.dim() == 4);
  CHECK(ds.height == 2);
  CHECK(ds.width == 2);
  CHECK_FALSE(ds.centered);
  CHECK(ds.data(0, 0) == 0.0);
  CHECK(ds.data(0, 1) == 1.0);
  CHECK(ds.data(0, 2) == 0.2);
  CHECK(ds.data(0, 3) == 0.4);
  CHECK(ds.data(1, 0) == 1.0);
  CHECK(ds.data(1, 3) == 0.8);
}

TEST_CASE("load_idx_images errors") {
  auto bad = header(0x801, 1, 1, 1);
  bad.push_back(0);
  write_bytes(scratch("bad.idx"), bad);
  CHECK_ERROR_KIND(load_idx_images(scratch("bad.idx")), ErrorKind::BadMagic);

  auto shortfile = header(0x803, 3, 2, 2);
  shortfile.resize(shortfile.size() + 5);
  write_bytes(scratch("short.idx"), shortfile);
  CHECK_ERROR_KIND(load_idx_images(scratch("short.idx")), ErrorKind::TruncatedFile);

  write_bytes(scratch("tiny.idx"), {0, 0, 8});
  CHECK_ERROR_KIND(load_idx_images(scratch("tiny.idx")), ErrorKind::TruncatedFile);

  CHECK_ERROR_KIND(load_idx_images(scratch("does-not-exist.idx")), ErrorKind::IoError);
}

TEST_CASE("IDX round trip") {
  Rng rng({1, 0});
  Matrix values(5, 6);
  for (Eigen::Index i = 0; i < values.size(); ++i) values(i) = static_cast<double>(rng.below(256)) / 255.0;
  const fs::path p = scratch("roundtrip.idx");
  write_idx_images(p, values, 2, 3);
  const ImageDataset ds = load_idx_images(p);
  CHECK(ds.data == values);
  CHECK(ds.height == 2);
  CHECK(ds.width == 3);
}

TEST_CASE("centering") {
  ImageDataset constant;
  constant.data = Matrix::Constant(4, 3, 0.7);
  const ImageDataset c = center_dataset(constant);
  CHECK(c.data.cwiseAbs().maxCoeff() == doctest::Approx(0.0));
  CHECK(c.centered);
  CHECK(c.mean_vector.isApprox(Vector::Constant(3, 0.7)));

  ImageDataset r;
  Rng rng({2, 0});
  r.data = standard_normal_matrix(50, 4, rng).array() + 3.0;
  const ImageDataset once = center_dataset(r);
  CHECK(once.data.colwise().mean().cwiseAbs().maxCoeff() < 1e-10);
  const ImageDataset twice = center_dataset(once);
  CHECK((twice.data - once.data).cwiseAbs().maxCoeff() < 1e-12);

  // Trace of the centered covariance equals the summed column variances.
  const double trace = empirical_covariance(once.data).trace();
  double var = 0.0;
  for (Eigen::Index j = 0; j < 4; ++j) {
    const Vector col = r.data.col(j);
    var += (col.array() - col.mean()).square().sum() / 50.0;
  }
  CHECK(testing::rel(trace, var) < 1e-8);

  // Test data centered with the training mean.
  ImageDataset test;
  test.data = Matrix::Constant(2, 4, 3.0);
  const ImageDataset shifted = center_with(test, once.mean_vector);
  CHECK(shifted.data.row(0).transpose().isApprox(Vector::Constant(4, 3.0) - once.mean_vector));
  CHECK_ERROR_KIND(center_with(test, Vector::Zero(3)), ErrorKind::DimensionMismatch);
}

TEST_CASE("sampling without replacement") {
  ImageDataset ds;
  ds.data = Matrix(6, 1);
  ds.data << 0, 1, 2, 3, 4, 5;
  Rng rng({3, 0});
  const Matrix all = sample_without_replacement(ds, 6, rng);
  std::set<double> seen(all.data(), all.data() + all.size());
  CHECK(seen.size() == 6);

  CHECK(sample_without_replacement(ds, 1, SeedSpec{4, 1}) == sample_without_replacement(ds, 1, SeedSpec{4, 1}));
  CHECK_ERROR_KIND(sample_without_replacement(ds, 7, SeedSpec{4, 1}), ErrorKind::InsufficientData);

  Rng many({5, 0});
  for (int trial = 0; trial < 1000; ++trial) {
    const auto idx = sample_indices_without_replacement(100, 30, many);
    std::set<Eigen::Index> s(idx.begin(), idx.end());
    CHECK(s.size() == 30);
    CHECK(*s.rbegin() < 100);
  }
}

TEST_CASE("synthetic_image_dataset") {
  const ImageDataset a = synthetic_image_dataset(12, 20000, SeedSpec{6, 0});
  CHECK(a.centered);
  CHECK(a.data.colwise().mean().cwiseAbs().maxCoeff() < 1e-10);
  CHECK(a.data.allFinite());
  // Spectrum 1/k^2 decays monotonically.
  const Vector eig = symmetric_eigenvalues(empirical_covariance(a.data)).reverse();
  for (Eigen::Index k = 1; k < eig.size(); ++k) CHECK(eig(k) < eig(k - 1));
  CHECK(eig(0) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(eig(3) == doctest::Approx(1.0 / 16).epsilon(0.05));

  const ImageDataset one = synthetic_image_dataset(5, 1, SeedSpec{6, 0});
  CHECK(one.count() == 1);
  CHECK(synthetic_image_dataset(5, 30, SeedSpec{6, 0}).data == synthetic_image_dataset(5, 30, SeedSpec{6, 0}).data);
}
