#pragma once

#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "lmmse/errors.hpp"
#include "lmmse/linalg.hpp"
#include "lmmse/model.hpp"
#include "lmmse/rng.hpp"
#include "lmmse/sampling.hpp"

namespace testing {

using lmmse::Matrix;
using lmmse::Vector;

inline lmmse::LinearModel random_model(Eigen::Index m, Eigen::Index n, std::uint64_t seed, double floor = 0.05) {
  lmmse::Rng rng({seed, 0});
  Matrix a = lmmse::standard_normal_matrix(m, n, rng);
  Matrix cxx = lmmse::random_spd_covariance(n, rng, floor);
  Matrix czz = lmmse::random_spd_covariance(m, rng, floor);
  return lmmse::build_model(a, cxx, czz);
}

inline lmmse::LinearModel scalar_model() {
  return lmmse::build_model(Matrix::Ones(1, 1), Matrix::Ones(1, 1), Matrix::Ones(1, 1));
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace testing

// Evaluates expr and checks that it throws lmmse::Error of the given kind.
#define CHECK_ERROR_KIND(expr, expected_kind)                        \
  do {                                                              \
    bool threw_ = false;                                            \
    try {                                                           \
      (void)(expr);                                                 \
    } catch (const lmmse::Error& e_) {                              \
      threw_ = true;                                                \
      CHECK_MESSAGE(e_.kind() == (expected_kind), e_.what());       \
    }                                                               \
    CHECK_MESSAGE(threw_, "expected an lmmse::Error from " #expr);  \
  } while (0)
