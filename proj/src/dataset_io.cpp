#include "lmmse/dataset_io.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>

#include "lmmse/errors.hpp"
#include "lmmse/sampling.hpp"

namespace lmmse {
namespace {

std::uint32_t read_be32(const unsigned char* p) {
  return (std::uint32_t{p[0]} << 24) | (std::uint32_t{p[1]} << 16) | (std::uint32_t{p[2]} << 8) |
         std::uint32_t{p[3]};
}

void write_be32(std::ostream& out, std::uint32_t v) {
  const std::array<char, 4> bytes{static_cast<char>(v >> 24), static_cast<char>(v >> 16),
                                  static_cast<char>(v >> 8), static_cast<char>(v)};
  out.write(bytes.data(), bytes.size());
}

}  // namespace

ImageDataset load_idx_images(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::IoError, "cannot open " + path.string());

  std::array<unsigned char, 16> header{};
  in.read(reinterpret_cast<char*>(header.data()), 4);
  if (in.gcount() < 4) fail(ErrorKind::TruncatedFile, path.string() + ": missing IDX magic");
  const std::uint32_t magic = read_be32(header.data());
  if (magic != kIdxImageMagic) fail(ErrorKind::BadMagic, path.string() + ": not an IDX image file");
  in.read(reinterpret_cast<char*>(header.data() + 4), 12);
  if (in.gcount() < 12) fail(ErrorKind::TruncatedFile, path.string() + ": incomplete IDX header");

  const std::uint64_t count = read_be32(header.data() + 4);
  const std::uint64_t rows = read_be32(header.data() + 8);
  const std::uint64_t cols = read_be32(header.data() + 12);
  const std::uint64_t pixels = rows * cols;

  std::vector<unsigned char> raw(count * pixels);
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::uint64_t>(in.gcount()) < raw.size()) {
    fail(ErrorKind::TruncatedFile, path.string() + ": file shorter than its header promises");
  }

  ImageDataset ds;
  ds.data.resize(static_cast<Eigen::Index>(count), static_cast<Eigen::Index>(pixels));
  for (std::uint64_t i = 0; i < count; ++i)
    for (std::uint64_t j = 0; j < pixels; ++j)
      ds.data(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = raw[i * pixels + j] / 255.0;
  ds.mean_vector = Vector::Zero(static_cast<Eigen::Index>(pixels));
  ds.source = path.filename().string();
  ds.height = static_cast<std::int64_t>(rows);
  ds.width = static_cast<std::int64_t>(cols);
  return ds;
}

void write_idx_images(const std::filesystem::path& path, const Matrix& data, std::int64_t height,
                      std::int64_t width) {
  require(height * width == data.cols(), ErrorKind::DimensionMismatch, "height * width must equal N");
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::IoError, "cannot write " + path.string());
  write_be32(out, kIdxImageMagic);
  write_be32(out, static_cast<std::uint32_t>(data.rows()));
  write_be32(out, static_cast<std::uint32_t>(height));
  write_be32(out, static_cast<std::uint32_t>(width));
  for (Eigen::Index i = 0; i < data.rows(); ++i)
    for (Eigen::Index j = 0; j < data.cols(); ++j) {
      const double v = std::clamp(data(i, j), 0.0, 1.0);
      out.put(static_cast<char>(static_cast<unsigned char>(std::lround(v * 255.0))));
    }
  if (!out) fail(ErrorKind::IoError, "write failed for " + path.string());
}

ImageDataset center_dataset(ImageDataset ds) {
  require(ds.count() >= 1, ErrorKind::InsufficientData, "cannot center an empty dataset");
  const Vector mean = ds.data.colwise().mean().transpose();
  return center_with(std::move(ds), mean);
}

ImageDataset center_with(ImageDataset ds, const Vector& mean) {
  require(mean.size() == ds.dim(), ErrorKind::DimensionMismatch, "mean has the wrong length");
  ds.data.rowwise() -= mean.transpose();
  if (ds.mean_vector.size() != mean.size()) ds.mean_vector = Vector::Zero(mean.size());
  ds.mean_vector += mean;
  ds.centered = true;
  return ds;
}

std::pair<ImageDataset, ImageDataset> split_rows(const ImageDataset& ds, Eigen::Index first) {
  require(first >= 0 && first <= ds.count(), ErrorKind::InsufficientData, "split point out of range");
  ImageDataset head = ds;
  ImageDataset tail = ds;
  head.data = ds.data.topRows(first);
  tail.data = ds.data.bottomRows(ds.count() - first);
  return {std::move(head), std::move(tail)};
}

std::vector<Eigen::Index> sample_indices_without_replacement(Eigen::Index count, Eigen::Index n, Rng& rng) {
  require(n >= 0, ErrorKind::InvalidArgument, "sample count must be nonnegative");
  if (n > count) {
    fail(ErrorKind::InsufficientData, "requested " + std::to_string(n) + " samples from a set of " +
                                          std::to_string(count));
  }
  std::vector<Eigen::Index> idx(static_cast<std::size_t>(count));
  std::iota(idx.begin(), idx.end(), Eigen::Index{0});
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto j = i + static_cast<Eigen::Index>(rng.below(static_cast<std::uint64_t>(count - i)));
    std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
  }
  idx.resize(static_cast<std::size_t>(n));
  return idx;
}

Matrix sample_without_replacement(const ImageDataset& ds, Eigen::Index n, Rng& rng) {
  const auto idx = sample_indices_without_replacement(ds.count(), n, rng);
  Matrix out(n, ds.dim());
  for (Eigen::Index i = 0; i < n; ++i) out.row(i) = ds.data.row(idx[static_cast<std::size_t>(i)]);
  return out;
}

Matrix sample_without_replacement(const ImageDataset& ds, Eigen::Index n, const SeedSpec& seed) {
  Rng rng(seed);
  return sample_without_replacement(ds, n, rng);
}

ImageDataset synthetic_image_dataset(Eigen::Index n_pixels, Eigen::Index count, const SeedSpec& seed) {
  require(n_pixels >= 1 && count >= 1, ErrorKind::InvalidArgument, "synthetic dataset needs N, count >= 1");
  Rng rng(seed);
  const Matrix basis = random_orthogonal(n_pixels, rng);
  Vector scale(n_pixels);
  for (Eigen::Index k = 0; k < n_pixels; ++k) scale(k) = 1.0 / static_cast<double>(k + 1);
  const Matrix factor = basis * scale.asDiagonal();

  ImageDataset ds;
  ds.data = standard_normal_matrix(count, n_pixels, rng) * factor.transpose();
  ds.mean_vector = Vector::Zero(n_pixels);
  ds.source = "synthetic";
  ds.height = 1;
  ds.width = n_pixels;
  if (count > 1) ds = center_dataset(std::move(ds));
  ds.centered = true;
  return ds;
}

}  // namespace lmmse
