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

#include "qslide/jacobi.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "qslide/analytic.hpp"
#include "qslide/errors.hpp"

namespace qslide {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(BuildChain, PstThreeSites) {
  const auto c = build_chain(ChainKind::pst, 3);
  ASSERT_EQ(c.n_sites(), 3);
  EXPECT_DOUBLE_EQ(c.couplings()[0], std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(c.couplings()[1], std::sqrt(2.0));
  for (double b : c.fields()) EXPECT_EQ(b, 0.0);
  EXPECT_FALSE(c.junction_coupling());
}

TEST(BuildChain, FieldThreeSites) {
  const auto c = build_chain(ChainKind::field, 3, -2.0);
  EXPECT_DOUBLE_EQ(c.couplings()[0], std::sqrt(2.0));
  EXPECT_DOUBLE_EQ(c.couplings()[1], std::sqrt(2.0));
  EXPECT_EQ(c.fields()[0], 0.0);
  EXPECT_EQ(c.fields()[1], -2.0);
  EXPECT_EQ(c.fields()[2], -4.0);
}

TEST(BuildChain, HalfSlide) {
  const auto c = build_chain(ChainKind::half_slide, 200, -2.0);
  ASSERT_EQ(c.n_sites(), 200);
  ASSERT_EQ(c.couplings().size(), 199u);
  EXPECT_DOUBLE_EQ(c.couplings()[0], std::sqrt(399.0));
  EXPECT_DOUBLE_EQ(c.couplings()[198], std::sqrt(199.0 * 201.0));
  EXPECT_EQ(c.fields()[199], -398.0);
  ASSERT_TRUE(c.junction_coupling());
  EXPECT_EQ(*c.junction_coupling(), 200.0);
}

TEST(BuildChain, Uniform) {
  const auto c = build_chain(ChainKind::uniform, 5, 3.0, 0.7);
  for (double j : c.couplings()) EXPECT_EQ(j, 0.7);
  for (double b : c.fields()) EXPECT_EQ(b, 0.0);
  EXPECT_THROW(build_chain(ChainKind::uniform, 5, 0.0, 0.0), ConfigError);
}

TEST(BuildChain, RejectsTinyChains) {
  EXPECT_THROW(build_chain(ChainKind::pst, 1), ConfigError);
  EXPECT_THROW(build_chain(ChainKind::half_slide, 0), ConfigError);
}

TEST(JacobiChain, ValidatesShape) {
  EXPECT_THROW(JacobiChain({1.0}, {0.0}), ConfigError);
  EXPECT_THROW(JacobiChain({1.0, -1.0}, {0.0, 0.0, 0.0}), ConfigError);
  EXPECT_NO_THROW(JacobiChain({}, {1.0}));
}

TEST(JacobiChain, TraceIsSumOfFields) {
  for (int n : {2, 7, 41}) {
    const double a = -1.5;
    const auto c = build_chain(ChainKind::field, n, a);
    const int big_n = n - 1;
    EXPECT_DOUBLE_EQ(c.trace(), a * big_n * (big_n + 1) / 2.0);
  }
}

TEST(Eigendecompose, TwoSiteUniform) {
  const auto s = eigendecompose(build_chain(ChainKind::uniform, 2, 0.0, 1.0));
  EXPECT_NEAR(s.eigenvalues[0], -1.0, 1e-14);
  EXPECT_NEAR(s.eigenvalues[1], 1.0, 1e-14);
}

TEST(Eigendecompose, ReconstructsAndIsOrthogonal) {
  for (auto kind : {ChainKind::pst, ChainKind::field, ChainKind::half_slide, ChainKind::uniform}) {
    for (int n : {2, 9, 120}) {
      const auto chain = build_chain(kind, n, -2.0, 1.3);
      const auto s = eigendecompose(chain);
      const Eigen::MatrixXd h = chain.dense();
      EXPECT_LE((s.reconstruct() - h).cwiseAbs().maxCoeff(), 1e-10 * std::max(1.0, h.norm()));
      const Eigen::MatrixXd v = s.eigenvectors;
      EXPECT_LE((v.transpose() * v - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff(),
                1e-10);
      for (int i = 1; i < n; ++i) EXPECT_LE(s.eigenvalues[i - 1], s.eigenvalues[i]);
      for (int i = 0; i < n; ++i) {
        const double r = (h * v.col(i) - s.eigenvalues[i] * v.col(i)).norm();
        EXPECT_LE(r, 1e-10 * h.norm());
      }
    }
  }
}

TEST(Eigendecompose, KrawtchoukChainHasIntegerSpectrum) {
  for (double p : {0.1, 0.3, 0.5, 0.9}) {
    for (int big_n = 1; big_n <= 50; ++big_n) {
      const auto s = eigendecompose(build_krawtchouk_chain(big_n, p));
      for (int n = 0; n <= big_n; ++n) EXPECT_NEAR(s.eigenvalues[n], n, 1e-8);
    }
  }
  const auto s = eigendecompose(build_krawtchouk_chain(10, 0.3));
  for (int n = 0; n <= 10; ++n) EXPECT_NEAR(s.eigenvalues[n], n, 1e-9);
}

// H_a is H_p / sqrt(p(1-p)) up to a constant diagonal shift.
TEST(Eigendecompose, FieldChainIsScaledKrawtchoukChain) {
  const int big_n = 20;
  const double a = -2.0;
  const double p = p_of_a(a);
  const auto ha = eigendecompose(build_chain(ChainKind::field, big_n + 1, a)).eigenvalues;
  Eigen::VectorXd hp = eigendecompose(build_krawtchouk_chain(big_n, p)).eigenvalues;
  hp /= std::sqrt(p * (1 - p));
  const double shift = ha[0] - hp[0];
  for (int n = 0; n <= big_n; ++n) EXPECT_NEAR(ha[n] - hp[n], shift, 1e-9);
  // the shift is the dropped constant -pN / sqrt(p(1-p))
  EXPECT_NEAR(shift, -p * big_n / std::sqrt(p * (1 - p)), 1e-9);
}

TEST(EvolveSpectral, PerfectStateTransfer) {
  const auto s = eigendecompose(build_chain(ChainKind::pst, 51));
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(51);
  psi[0] = 1.0;
  const auto out = evolve_spectral(s, psi, kPi / 2);
  EXPECT_GE(std::norm(out[50]), 1.0 - 1e-8);
  EXPECT_NEAR(out.norm(), 1.0, 1e-12);
}

}  // namespace
}  // namespace qslide
