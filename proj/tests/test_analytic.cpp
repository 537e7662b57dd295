// Copyright 2026 The qslide Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qslide/analytic.hpp"

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <stdexcept>

#include "qslide/errors.hpp"

namespace qslide {
namespace {

constexpr double kPi = std::numbers::pi;
using cd = std::complex<double>;

// Dense oracle: <r| exp(-i H t) |0> through Eigen's own symmetric solver.
Eigen::VectorXcd dense_column(int degree, double a, double t) {
  const int n = degree + 1;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) h(i, i) = a * i;
  for (int i = 1; i < n; ++i) h(i - 1, i) = h(i, i - 1) = std::sqrt(double(i) * (n - i));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h);
  Eigen::VectorXcd phases(n);
  for (int k = 0; k < n; ++k) phases[k] = std::polar(1.0, -es.eigenvalues()[k] * t);
  const Eigen::MatrixXd& v = es.eigenvectors();
  return v * phases.asDiagonal() * v.row(0).transpose().cast<cd>();
}

double max_deviation_mod_phase(const Eigen::VectorXcd& x, const std::vector<cd>& y) {
  cd overlap = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) overlap += std::conj(y[i]) * x[i];
  const cd unphase = std::polar(1.0, -std::arg(overlap));
  double worst = 0.0;
  for (Eigen::Index i = 0; i < x.size(); ++i) worst = std::max(worst, std::abs(x[i] * unphase - y[i]));
  return worst;
}

TEST(Krawtchouk, LowOrders) {
  const KrawtchoukContext ctx(7, 0.35);
  for (double x : {0.0, 1.0, 2.5, 7.0}) {
    EXPECT_EQ(krawtchouk(0, x, ctx), 1.0);
    EXPECT_NEAR(krawtchouk(1, x, ctx), 1.0 - x / (0.35 * 7), 1e-14);
  }
}

TEST(Krawtchouk, DualityExample) {
  const KrawtchoukContext ctx(5, 0.5);
  EXPECT_NEAR(krawtchouk(2, 3, ctx), krawtchouk(3, 2, ctx), 1e-14);
}

TEST(Krawtchouk, SelfDuality) {
  for (double p : {0.2, 0.5, 0.7}) {
    for (int big_n = 1; big_n <= 12; ++big_n) {
      const KrawtchoukContext ctx(big_n, p);
      for (int r = 0; r <= big_n; ++r) {
        for (int n = 0; n <= big_n; ++n) {
          const double lhs = krawtchouk(r, n, ctx);
          const double rhs = krawtchouk(n, r, ctx);
          EXPECT_NEAR(lhs, rhs, 1e-9 * std::max(1.0, std::abs(lhs)))
              << "N=" << big_n << " p=" << p << " r=" << r << " n=" << n;
        }
      }
    }
  }
}

TEST(Krawtchouk, IndexOutOfRange) {
  const KrawtchoukContext ctx(4, 0.5);
  EXPECT_THROW(krawtchouk(5, 0.0, ctx), std::out_of_range);
  EXPECT_THROW(krawtchouk(-1, 0.0, ctx), std::out_of_range);
  EXPECT_THROW(KrawtchoukContext(0, 0.5), ConfigError);
  EXPECT_THROW(KrawtchoukContext(3, 1.0), ConfigError);
}

TEST(Weight, Examples) {
  const KrawtchoukContext ctx(12, 0.37);
  EXPECT_NEAR(weight(0, ctx), std::pow(0.63, 12), 1e-15);
  double sum = 0.0;
  for (int n = 0; n <= 12; ++n) sum += weight(n, ctx);
  EXPECT_NEAR(sum, 1.0, 1e-14);
}

TEST(Weight, LargeDegreeStaysFinite) {
  const KrawtchoukContext ctx(4000, 0.5);
  const double w = weight(2000, ctx);
  EXPECT_TRUE(std::isfinite(w));
  EXPECT_NEAR(w, 1.0 / std::sqrt(kPi * 2000.0), 1e-5);  // Stirling
  EXPECT_NEAR(log_binomial(10, 3), std::log(120.0), 1e-13);
}

TEST(Weight, Orthogonality) {
  for (int big_n = 1; big_n <= 10; ++big_n) {
    for (double p : {0.3, 0.5, 0.8}) {
      const KrawtchoukContext ctx(big_n, p);
      for (int m = 0; m <= big_n; ++m) {
        for (int n = 0; n <= big_n; ++n) {
          double sum = 0.0;
          for (int s = 0; s <= big_n; ++s) {
            sum += weight(s, ctx) * krawtchouk_chi(m, s, ctx) * krawtchouk_chi(n, s, ctx);
          }
          EXPECT_NEAR(sum, m == n ? 1.0 : 0.0, 1e-11) << "N=" << big_n << " m=" << m << " n=" << n;
        }
      }
    }
  }
}

TEST(POfA, Examples) {
  EXPECT_DOUBLE_EQ(p_of_a(0.0), 0.5);
  EXPECT_NEAR(p_of_a(-2.0), 0.5 * (1.0 + 1.0 / std::sqrt(2.0)), 1e-15);
  EXPECT_NEAR(a_of_p(p_of_a(3.0)), 3.0, 1e-12);
  for (double a : {-7.0, -0.3, 0.1, 5.0}) {
    const double p = p_of_a(a);
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
    EXPECT_NEAR(a_of_p(p), a, 1e-12);
  }
}

TEST(Amplitude, PerfectTransferAtZeroField) {
  const auto r = amplitude(30, 0.0, kPi / 2, 30);
  EXPECT_NEAR(r.magnitude, 1.0, 1e-12);
}

TEST(Amplitude, Normalized) {
  double sum = 0.0;
  for (int r = 0; r <= 10; ++r) sum += std::pow(amplitude(r, -2.0, 0.3, 10).magnitude, 2);
  EXPECT_NEAR(sum, 1.0, 1e-13);
}

TEST(Amplitude, MatchesDensePropagatorAtSwitchTime) {
  const double t = 0.226 * kPi;
  const auto exact = amplitude_profile(-2.0, t, 40);
  const auto sim = dense_column(40, -2.0, t);
  EXPECT_LE(max_deviation_mod_phase(sim, exact), 1e-8);
}

// The tracked global and diagonal phases make the match exact, not just
// modulo a phase.
TEST(Amplitude, FullPhaseIsExact) {
  for (double a : {-2.0, 0.5}) {
    const double t = 0.3 * period(a);
    const auto exact = amplitude_profile(a, t, 25);
    const auto sim = dense_column(25, a, t);
    for (int r = 0; r <= 25; ++r) EXPECT_LE(std::abs(sim[r] - exact[r]), 1e-10);
  }
}

TEST(Amplitude, OracleSweep) {
  std::mt19937_64 rng(20260101);
  for (int degree : {1, 5, 17, 33, 60}) {
    for (double a : {-2.0, 0.0, 1.0}) {
      std::uniform_real_distribution<double> dist(0.0, period(a));
      for (int i = 0; i < 10; ++i) {
        double t = dist(rng);
        if (t <= 0.0) t = 0.1;
        EXPECT_LE(max_deviation_mod_phase(dense_column(degree, a, t), amplitude_profile(a, t, degree)),
                  1e-8)
            << "N=" << degree << " a=" << a << " t=" << t;
      }
    }
  }
}

TEST(Amplitude, DomainErrors) {
  EXPECT_THROW(amplitude(0, -2.0, 0.0, 10), std::domain_error);
  EXPECT_THROW(amplitude(0, -2.0, period(-2.0), 10), std::domain_error);
  EXPECT_THROW(amplitude(11, -2.0, 0.3, 10), std::out_of_range);
}

TEST(MomentumTheta, ZeroField) {
  for (double t : {0.01, 0.3, 1.0, 1.5, kPi / 2}) EXPECT_NEAR(momentum_theta(t, 0.0), -kPi / 2, 1e-15);
}

TEST(MomentumTheta, SymmetryAndRange) {
  EXPECT_NEAR(momentum_theta(period_scale(-2.0) * kPi, -2.0), 0.0, 1e-15);
  for (double a : {-4.0, -2.0, -0.5, 0.5, 2.0, 4.0}) {
    const double bp = period_scale(a) * kPi;
    for (double frac : {0.01, 0.2, 0.5, 0.9, 0.999}) {
      const double d = frac * bp;
      const double lo = momentum_theta(bp - d, a);
      const double hi = momentum_theta(bp + d, a);
      if (a < 0) {
        EXPECT_NEAR(hi, -lo, 1e-12);
        EXPECT_GT(lo, -kPi / 2);
        EXPECT_LT(lo, kPi / 2);
        EXPECT_GT(hi, -kPi / 2);
        EXPECT_LT(hi, kPi / 2);
      } else {
        EXPECT_NEAR(wrap_phase(hi + lo), 0.0, 1e-12);
        for (double th : {lo, hi}) EXPECT_TRUE(th < -kPi / 2 || th > kPi / 2) << th;
      }
    }
    // continuity through b pi
    const double eps = 1e-9 * bp;
    EXPECT_NEAR(wrap_phase(momentum_theta(bp + eps, a) - momentum_theta(bp, a)), 0.0, 1e-6);
    EXPECT_NEAR(wrap_phase(momentum_theta(bp - eps, a) - momentum_theta(bp, a)), 0.0, 1e-6);
  }
  const double bp0 = 0.5 * kPi;
  EXPECT_NEAR(momentum_theta(bp0 + 0.1, 0.0), kPi / 2, 1e-15);
  EXPECT_THROW(momentum_theta(0.0, -2.0), std::domain_error);
  EXPECT_THROW(momentum_theta(period(-2.0), -2.0), std::domain_error);
}

TEST(MomentumTheta, SwitchTimeSeed) {
  const double b = period_scale(-2.0);
  const double t_star = time_for_momentum(-kPi / 4, -2.0);
  EXPECT_NEAR(t_star, 2 * b * std::atan(1.0 / (2 * b)), 1e-14);
  EXPECT_NEAR(t_star / kPi, 0.215, 0.001);
  EXPECT_NEAR(momentum_theta(t_star, -2.0), -kPi / 4, 1e-13);
}

TEST(GaussianPacket, Examples) {
  const auto g = gaussian_packet(400, 0.0, kPi / 4);
  EXPECT_NEAR(g.center, 200.0, 1e-10);
  EXPECT_NEAR(g.sigma, 10.0, 1e-10);
  EXPECT_NEAR(g.momentum, -kPi / 2, 1e-15);
  EXPECT_TRUE(g.approximate_regime);
  for (auto [n, a, t] : {std::tuple{400, -2.0, 0.7}, std::tuple{7, 1.0, 0.2}}) {
    const auto p = gaussian_packet(n, a, t);
    EXPECT_DOUBLE_EQ(p.sigma_k * p.sigma, 0.5);
  }
  EXPECT_FALSE(gaussian_packet(7, 1.0, 0.2).approximate_regime);
}

TEST(GaussianPacket, OverlapWithBinomialProfile) {
  const int big_n = 400;
  const double t = 0.226 * kPi;
  const auto g = gaussian_packet(big_n, -2.0, t);
  const auto exact = amplitude_profile(-2.0, t, big_n);
  cd overlap = 0.0;
  double gnorm = 0.0;
  double enorm = 0.0;
  for (int r = 0; r <= big_n; ++r) {
    const double env = std::exp(-std::pow(r - g.center, 2) / (4 * g.sigma * g.sigma));
    const cd gr = env * std::polar(1.0, g.momentum * r);
    overlap += std::conj(gr) * exact[r];
    gnorm += std::norm(gr);
    enorm += std::norm(exact[r]);
  }
  EXPECT_GE(std::abs(overlap) / std::sqrt(gnorm * enorm), 0.999);
}

TEST(TransmissionB, SpecialPoints) {
  EXPECT_NEAR(transmission_b(-kPi / 4), 1.0, 1e-15);
  EXPECT_LT(transmission_b(-kPi / 2), 1e-30);
  EXPECT_THROW(transmission_b(0.0), std::domain_error);
  EXPECT_THROW(transmission_b(-kPi), std::domain_error);
  EXPECT_EQ(transmission_b(0.0, true), 0.0);
  EXPECT_EQ(transmission_b(-kPi, true), 0.0);
}

TEST(TransmissionB, ExtendedPrecisionOracle) {
  using big = boost::multiprecision::cpp_bin_float_50;
  const big k = -boost::math::constants::pi<big>() / 8;
  const big c2 = cos(2 * k);
  const big s = sin(k);
  const big c = cos(k);
  const big expected = 64 / (64 + c2 * c2 / (s * s * s * s * s * s) / (c * c));
  const double got = transmission_b(-kPi / 8);
  EXPECT_GT(got, 0.0);
  EXPECT_LT(got, 1.0);
  EXPECT_NEAR(got, static_cast<double>(expected), 1e-15);
}

TEST(GaussianTransmission, PlaneWaveLimit) {
  EXPECT_NEAR(gaussian_transmission(-kPi / 4, 1e-4), 1.0, 1e-6);
}

TEST(GaussianTransmission, BoundedByOne) {
  for (double theta : {-2.5, -kPi / 4, -0.4}) {
    for (double sk : {0.01, 0.05, 0.3}) {
      const double v = gaussian_transmission(theta, sk);
      EXPECT_LE(v, 1.0);
      EXPECT_GE(v, 0.0);
    }
  }
}

// Independent route: composite Simpson on a fine uniform grid.
TEST(GaussianTransmission, SimpsonOracle) {
  const double theta = -kPi / 4;
  const double sk = 0.05;
  const int n = 400000;
  const double h = kPi / n;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double k = -kPi + i * h;
    const double f = std::exp(-0.5 * std::pow((k - theta) / sk, 2)) / (sk * std::sqrt(2 * kPi)) *
                     transmission_b(k, true);
    sum += f * (i == 0 || i == n ? 1.0 : (i % 2 ? 4.0 : 2.0));
  }
  EXPECT_NEAR(gaussian_transmission(theta, sk), sum * h / 3.0, 1e-9);
}

TEST(GaussianTransmission, TableRoute) {
  std::vector<double> k;
  std::vector<double> t;
  for (int i = 1; i < 4000; ++i) {
    k.push_back(-kPi + kPi * i / 4000);
    t.push_back(transmission_b(k.back()));
  }
  const TransmissionTable table(k, t);
  EXPECT_NEAR(table(k[10]), t[10], 1e-15);
  EXPECT_NEAR(gaussian_transmission(-kPi / 4, 0.05, table), gaussian_transmission(-kPi / 4, 0.05),
              1e-5);
  EXPECT_THROW(TransmissionTable({0.0}, {1.0}), ConfigError);
}

TEST(WrapPhase, Range) {
  EXPECT_NEAR(wrap_phase(3 * kPi), kPi, 1e-15);
  EXPECT_NEAR(wrap_phase(-kPi), kPi, 1e-15);
  EXPECT_NEAR(wrap_phase(0.5 - 4 * kPi), 0.5, 1e-14);
}

}  // namespace
}  // namespace qslide
