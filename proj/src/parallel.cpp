#include "lmmse/parallel.hpp"

#include "lmmse/errors.hpp"

namespace lmmse {

Matrix empirical_covariance_serial(const Matrix& rows) {
  require(rows.rows() >= 1, ErrorKind::InsufficientData, "covariance of an empty sample");
  return symmetrized(rows.transpose() * rows / static_cast<double>(rows.rows()));
}

Matrix empirical_covariance_chunked(const Matrix& rows, int workers) {
  require(rows.rows() >= 1, ErrorKind::InsufficientData, "covariance of an empty sample");
  const Eigen::Index n = rows.rows();
  const Eigen::Index d = rows.cols();
  const std::int64_t chunks = (n + kCovarianceChunkRows - 1) / kCovarianceChunkRows;
  std::vector<Matrix> partial(static_cast<std::size_t>(chunks));
  for_each_index(chunks, workers, [&](std::int64_t c) {
    const Eigen::Index begin = c * kCovarianceChunkRows;
    const Eigen::Index len = std::min(kCovarianceChunkRows, n - begin);
    Matrix g = Matrix::Zero(d, d);
    g.selfadjointView<Eigen::Lower>().rankUpdate(rows.middleRows(begin, len).transpose());
    partial[static_cast<std::size_t>(c)] = std::move(g);
  });
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& g : partial) sum += g;
  Matrix full = sum.selfadjointView<Eigen::Lower>();
  return symmetrized(full / static_cast<double>(n));
}

}  // namespace lmmse
