#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "lmmse/linalg.hpp"
#include "lmmse/rng.hpp"

namespace lmmse {

/// Flattened images, one per row.
struct ImageDataset {
  Matrix data;         // count x N
  Vector mean_vector;  // subtracted column means (zero until centered)
  bool centered = false;
  std::string source;
  std::int64_t height = 0;
  std::int64_t width = 0;

  Eigen::Index count() const noexcept { return data.rows(); }
  Eigen::Index dim() const noexcept { return data.cols(); }
};

inline constexpr std::uint32_t kIdxImageMagic = 0x00000803;

/// Reads an IDX-ubyte image file (magic 0x00000803, big-endian dims
/// count/rows/cols, then unsigned bytes). Pixels map to p / 255.
ImageDataset load_idx_images(const std::filesystem::path& path);

/// Writes the inverse format; values are rounded to round(255 v) after
/// clamping to [0, 1].
void write_idx_images(const std::filesystem::path& path, const Matrix& data, std::int64_t height,
                      std::int64_t width);

/// Subtracts the dataset's own column means.
ImageDataset center_dataset(ImageDataset ds);

/// Subtracts a given mean (e.g. the training mean applied to a test set).
ImageDataset center_with(ImageDataset ds, const Vector& mean);

/// First `first` rows and the remaining rows.
std::pair<ImageDataset, ImageDataset> split_rows(const ImageDataset& ds, Eigen::Index first);

/// n distinct row indices by a seeded partial Fisher-Yates shuffle.
std::vector<Eigen::Index> sample_indices_without_replacement(Eigen::Index count, Eigen::Index n, Rng& rng);

Matrix sample_without_replacement(const ImageDataset& ds, Eigen::Index n, Rng& rng);
Matrix sample_without_replacement(const ImageDataset& ds, Eigen::Index n, const SeedSpec& seed);

/// Gaussian stand-in for an image set: covariance P diag(1/k^2) P^T with a
/// random orthogonal P, rows centered on their sample mean.
ImageDataset synthetic_image_dataset(Eigen::Index n_pixels, Eigen::Index count, const SeedSpec& seed);

}  // namespace lmmse
