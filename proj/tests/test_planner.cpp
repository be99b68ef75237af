#include "support.hpp"

#include <cfloat>

#include "lmmse/planner.hpp"

using namespace lmmse;
using namespace lmmse::planner;

namespace {

// ceil(M / eps) + M + 1 evaluated in exact integer arithmetic from the binary
// representation eps = mant * 2^exp.
std::int64_t n0_oracle(std::int64_t m, double eps) {
  int exp = 0;
  const double frac = std::frexp(eps, &exp);
  const auto mant = static_cast<__int128>(std::ldexp(frac, 53));
  exp -= 53;
  // M / eps = M * 2^-exp / mant
  __int128 num = m;
  __int128 den = mant;
  if (exp < 0) {
    num <<= -exp;
  } else {
    den <<= exp;
  }
  const __int128 q = (num + den - 1) / den;
  return static_cast<std::int64_t>(q) + m + 1;
}

double n1_oracle(double m, double eps, double delta, double nu) {
  const double l = std::log(3.0 / delta);
  const double a = std::sqrt((m + 2.0 * std::sqrt(m * nu * l) + 2.0 * nu * l) / eps);
  return std::pow(a + std::sqrt(m) + std::sqrt(l), 2);
}

double n_general_oracle(double tr, double tr2, double nrm, double trace_cee, double m, double eps, double delta,
                        double rho, double c) {
  const double l = std::log(3.0 / delta);
  const double a = std::sqrt((tr * m + 2.0 * std::sqrt(m * tr2 * l) + 2.0 * nrm * l) / (trace_cee * eps));
  return std::pow(a + c * rho * rho * (std::sqrt(m) + std::sqrt(l)), 2);
}

Matrix random_psd(Eigen::Index k, std::uint64_t seed) {
  return random_spd_covariance(k, SeedSpec{seed, 0}, 1e-4);
}

}  // namespace

TEST_CASE("n_expected_gaussian") {
  CHECK(n_expected_gaussian(784, 1.0 / 16) == 13329);
  CHECK(n_expected_gaussian(16, 1.0) == 33);
  CHECK(n_expected_gaussian(1, 1.0) == 3);
  CHECK(n_expected_gaussian(16, 0.25) == 81);
  CHECK_ERROR_KIND(n_expected_gaussian(16, 0.0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(n_expected_gaussian(16, -1.0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(n_expected_gaussian(0, 1.0), ErrorKind::InvalidArgument);
}

TEST_CASE("n_expected_gaussian resolves the ceiling exactly") {
  // 3 / 0.1 rounds to 30.000000000000004 in floating point, but the double
  // 0.1 exceeds 1/10, so the exact quotient is below 30.
  CHECK(n_expected_gaussian(3, 0.1) == 30 + 3 + 1);
  for (std::int64_t m : {1, 2, 3, 7, 10, 49, 100, 784, 1000, 65536}) {
    for (double eps : {0.1, 0.3, 0.7, 1.0 / 3, 1.0 / 7, 0.05, 1e-3, 2.5, 1.0 / 16, 0.2}) {
      CHECK(n_expected_gaussian(m, eps) == n0_oracle(m, eps));
      CHECK(n_expected_gaussian(m, std::nextafter(eps, 0.0)) == n0_oracle(m, std::nextafter(eps, 0.0)));
      CHECK(n_expected_gaussian(m, std::nextafter(eps, 1.0)) == n0_oracle(m, std::nextafter(eps, 1.0)));
    }
  }
}

TEST_CASE("n0 is the minimal sample count meeting the expected-error target") {
  for (std::int64_t m = 1; m <= 64; ++m) {
    for (int k = 0; k <= 8; ++k) {
      const double eps = std::ldexp(1.0, -k);
      const std::int64_t n0 = n_expected_gaussian(m, eps);
      CHECK(expected_approx_error_gaussian(1.0, m, n0) <= eps);
      if (n0 - 1 <= m + 1) {
        CHECK_ERROR_KIND(expected_approx_error_gaussian(1.0, m, n0 - 1), ErrorKind::NTooSmall);
      } else {
        CHECK(expected_approx_error_gaussian(1.0, m, n0 - 1) > eps);
      }
    }
  }
}

TEST_CASE("n_tail_gaussian and its simplified bound") {
  CHECK(n_tail_gaussian(16, 0.25, 0.05, 1.0) == doctest::Approx(n1_oracle(16, 0.25, 0.05, 1.0)).epsilon(1e-14));
  CHECK(n_tail_gaussian(16, 0.25, 0.05, 1.0) <= n_tail_gaussian_simplified(16, 0.25, 0.05));
  CHECK(n_tail_gaussian(16, 0.25, 0.05, 0.1) <= n_tail_gaussian(16, 0.25, 0.05, 1.0));

  const double ratio = n_tail_gaussian(784, 1.0 / 16, 0.05, 1.0) / static_cast<double>(n_expected_gaussian(784, 1.0 / 16));
  CHECK(ratio >= 0.9);
  CHECK(ratio <= 2.0);

  // L = ln(3 / delta) = 2: (1 + 2 sqrt 2 + 4)(1 + 2 + 1). L = 1 would need delta = 3/e > 1.
  CHECK(n_tail_gaussian_simplified(1, 1.0, 3.0 * std::exp(-2.0)) ==
        doctest::Approx(4.0 * (5.0 + 2.0 * std::sqrt(2.0))).epsilon(1e-14));
  CHECK_ERROR_KIND(n_tail_gaussian_simplified(1, 1.0, 3.0 / std::exp(1.0)), ErrorKind::InvalidArgument);
  const double big = n_tail_gaussian_simplified(1000000, 1e-3, 0.05) /
                     static_cast<double>(n_expected_gaussian(1000000, 1e-3));
  CHECK(big < 1.2);

  CHECK_ERROR_KIND(n_tail_gaussian(16, 0.25, 0.0, 1.0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(n_tail_gaussian(16, 0.25, 1.0, 1.0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(n_tail_gaussian(16, 0.25, 0.05, 0.0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(n_tail_gaussian(16, 0.25, 0.05, 1.5), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(n_tail_gaussian_simplified(16, 0.0, 0.05), ErrorKind::InvalidArgument);
}

TEST_CASE("n1 <= n2 grid sweep") {
  for (std::int64_t m : {1, 2, 5, 16, 100, 784, 10000}) {
    for (double eps : {1e-3, 1.0 / 16, 0.25, 0.5, 1.0, 4.0}) {
      for (double delta : {1e-6, 0.01, 0.05, 0.5, 0.99}) {
        for (double nu : {1e-4, 0.01, 0.1, 0.5, 1.0}) {
          CHECK(n_tail_gaussian(m, eps, delta, nu) <= n_tail_gaussian_simplified(m, eps, delta) * (1 + 1e-12));
        }
      }
    }
  }
}

TEST_CASE("planner monotonicity sweep") {
  const std::vector<std::int64_t> ms{1, 2, 4, 16, 64, 256, 1024};
  const std::vector<double> epss{1e-3, 0.01, 1.0 / 16, 0.25, 0.5, 1.0, 2.0};
  const std::vector<double> deltas{1e-4, 0.01, 0.05, 0.2, 0.6, 0.9};
  for (std::size_t i = 0; i < ms.size(); ++i) {
    for (std::size_t j = 0; j < epss.size(); ++j) {
      for (std::size_t k = 0; k < deltas.size(); ++k) {
        const auto m = ms[i];
        const double e = epss[j], d = deltas[k];
        const double n1 = n_tail_gaussian(m, e, d, 0.5);
        const double n2 = n_tail_gaussian_simplified(m, e, d);
        if (i + 1 < ms.size()) {
          CHECK(n_expected_gaussian(ms[i + 1], e) >= n_expected_gaussian(m, e));
          CHECK(n_tail_gaussian(ms[i + 1], e, d, 0.5) >= n1);
          CHECK(n_tail_gaussian_simplified(ms[i + 1], e, d) >= n2);
        }
        if (j + 1 < epss.size()) {
          CHECK(n_expected_gaussian(m, epss[j + 1]) <= n_expected_gaussian(m, e));
          CHECK(n_tail_gaussian(m, epss[j + 1], d, 0.5) <= n1);
          CHECK(n_tail_gaussian_simplified(m, epss[j + 1], d) <= n2);
        }
        if (k + 1 < deltas.size()) {
          CHECK(n_tail_gaussian(m, e, deltas[k + 1], 0.5) <= n1);
          CHECK(n_tail_gaussian_simplified(m, e, deltas[k + 1]) <= n2);
          CHECK(n_tail_general_nu(m, e, deltas[k + 1], 0.5, 1.0, 1.0) <= n_tail_general_nu(m, e, d, 0.5, 1.0, 1.0));
        }
      }
    }
  }
}

TEST_CASE("n_tail_gaussian_exact") {
  // Cee = I_N reduces to n1 with nu = 1 / N.
  for (Eigen::Index n : {1, 3, 10}) {
    const double v = n_tail_gaussian_exact(Matrix::Identity(n, n), 16, 0.25, 0.05);
    CHECK(v == doctest::Approx(n1_oracle(16, 0.25, 0.05, 1.0 / static_cast<double>(n))).epsilon(1e-12));
  }
  // A single dominant direction approaches the nu = 1 case.
  Matrix spike = 1e-9 * Matrix::Identity(5, 5);
  spike(0, 0) = 1.0;
  CHECK(n_tail_gaussian_exact(spike, 16, 0.25, 0.05) == doctest::Approx(n_tail_gaussian(16, 0.25, 0.05, 1.0)).epsilon(1e-6));

  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const Matrix c = random_psd(6, seed);
    const double nu = spectral_norm_psd(c) / c.trace();
    CHECK(n_tail_gaussian_exact(c, 20, 0.1, 0.05) <= n_tail_gaussian(20, 0.1, 0.05, nu) * (1 + 1e-12));
  }
  Matrix indefinite = Matrix::Identity(2, 2);
  indefinite(1, 1) = -1.0;
  CHECK_ERROR_KIND(n_tail_gaussian_exact(indefinite, 4, 0.5, 0.05), ErrorKind::NotPositiveDefinite);
}

TEST_CASE("n_tail_general") {
  const Matrix c = random_psd(4, 3);
  const double tr = c.trace(), tr2 = (c * c).trace(), nrm = spectral_norm_psd(c);
  CHECK(n_tail_general(c, tr, 16, 0.25, 0.05, 1.0, 1.0) == doctest::Approx(n_tail_gaussian_exact(c, 16, 0.25, 0.05)).epsilon(1e-14));
  CHECK(n_tail_general(c, 2.0, 16, 0.25, 0.05, 1.3, 0.7) ==
        doctest::Approx(n_general_oracle(tr, tr2, nrm, 2.0, 16, 0.25, 0.05, 1.3, 0.7)).epsilon(1e-12));
  CHECK(n_tail_general(c, tr, 16, 0.25, 0.05, 2.0, 1.0) > n_tail_general(c, tr, 16, 0.25, 0.05, 1.0, 1.0));

  const Matrix scaled = 0.3 * Matrix::Identity(4, 4);
  CHECK(n_tail_general(scaled, scaled.trace(), 16, 0.25, 0.05, 1.0, 1.0) ==
        doctest::Approx(n1_oracle(16, 0.25, 0.05, 0.25)).epsilon(1e-12));

  // nu relaxation: trace(C^2) <= nu trace^2 with ||C|| = nu trace.
  CHECK(n_tail_general_nu(16, 0.25, 0.05, 0.25, 1.0, 1.0) >= n_tail_general(scaled, scaled.trace(), 16, 0.25, 0.05, 1.0, 1.0) * (1 - 1e-12));
  CHECK(n_tail_general_nu(16, 0.25, 0.05, 1.0, 1.0, 1.0) == doctest::Approx(n1_oracle(16, 0.25, 0.05, 1.0)).epsilon(1e-12));
  CHECK_ERROR_KIND(n_tail_general(c, tr, 16, 0.25, 0.05, 0.0, 1.0), ErrorKind::InvalidArgument);
  CHECK_ERROR_KIND(n_tail_general(c, tr, 16, 0.25, 0.05, 1.0, 0.0), ErrorKind::InvalidArgument);
}

TEST_CASE("expected error, lower bound and asymptotic limit") {
  CHECK(expected_approx_error_gaussian(1.0, 16, 81) == 0.25);
  CHECK_ERROR_KIND(expected_approx_error_gaussian(1.0, 16, 17), ErrorKind::NTooSmall);
  CHECK(expected_approx_error_gaussian(2.0, 16, 18) == 32.0);

  CHECK(trace_lower_bound(16, 81) == doctest::Approx(16.0 / 81).epsilon(1e-15));
  CHECK(trace_lower_bound(7, 7) == 1.0);
  for (std::int64_t m = 1; m < 20; ++m)
    for (std::int64_t n = m + 2; n < 60; ++n) CHECK(trace_lower_bound(m, n) <= expected_approx_error_gaussian(1.0, m, n));

  CHECK(asymptotic_gaussian_limit(1.0, 0.5) == 1.0);
  CHECK(asymptotic_gaussian_limit(2.0, 1.0 / 17) == doctest::Approx(0.125).epsilon(1e-14));
  CHECK_ERROR_KIND(asymptotic_gaussian_limit(1.0, 1.0), ErrorKind::DegenerateGamma);
  CHECK_ERROR_KIND(asymptotic_gaussian_limit(1.0, 0.0), ErrorKind::DegenerateGamma);
}

TEST_CASE("asymptotic_error_bound") {
  const AsymptoticBound b = asymptotic_error_bound(1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.25);
  CHECK(b.eps_err == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(b.eps_bias == 0.0);

  const AsymptoticBound w = asymptotic_error_bound(2.0, 1.0, 1.0, 0.5, 1.2, 0.8, 0.1);
  const double d = 1.0 - 0.8 * 1.44 * std::sqrt(0.1);
  CHECK(w.eps_err == doctest::Approx(2.0 * 0.1 / (d * d)).epsilon(1e-14));
  CHECK(w.eps_bias == doctest::Approx(1.5 * 1.44 * 0.5 * 0.1 / std::pow(d, 4)).epsilon(1e-14));

  const AsymptoticBound hi = asymptotic_error_bound(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1e-4);
  const AsymptoticBound lo = asymptotic_error_bound(1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1e-6);
  CHECK(testing::rel(hi.eps_err / 1e-4, lo.eps_err / 1e-6) < 0.05);
  CHECK(testing::rel(hi.eps_bias / 1e-4, lo.eps_bias / 1e-6) < 0.05);

  CHECK_ERROR_KIND(asymptotic_error_bound(1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 1.0), ErrorKind::GammaOutOfRange);
  CHECK_ERROR_KIND(asymptotic_error_bound(1.0, 1.0, 1.0, 0.0, 2.0, 1.0, 0.1), ErrorKind::GammaOutOfRange);
  CHECK_ERROR_KIND(asymptotic_error_bound(1.0, 1.0, 1.0, 0.0, 1.0, 1.0, 0.0), ErrorKind::GammaOutOfRange);
}

TEST_CASE("plan inputs and sample-count rounding") {
  PlanInputs in;
  in.m = 4;
  in.eps = 0.5;
  CHECK_NOTHROW(validate(in));
  in.nu = 0.0;
  CHECK_ERROR_KIND(validate(in), ErrorKind::InvalidArgument);
  in.nu = 1.0;
  in.rho = -1.0;
  CHECK_ERROR_KIND(validate(in), ErrorKind::InvalidArgument);
  CHECK(as_sample_count(12.0) == 12);
  CHECK(as_sample_count(12.000001) == 13);
  CHECK_ERROR_KIND(as_sample_count(std::nan("")), ErrorKind::InvalidArgument);
}
