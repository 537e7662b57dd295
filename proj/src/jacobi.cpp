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

#include <cmath>
#include <complex>
#include <numeric>
#include <string>
#include <utility>

#include "linalg.hpp"
#include "qslide/errors.hpp"

namespace qslide {

JacobiChain::JacobiChain(std::vector<double> couplings, std::vector<double> fields,
                         std::optional<double> junction_coupling)
    : couplings_(std::move(couplings)),
      fields_(std::move(fields)),
      junction_coupling_(junction_coupling) {
  if (fields_.empty()) throw ConfigError("JacobiChain: need at least one site");
  if (couplings_.size() + 1 != fields_.size()) {
    throw ConfigError("JacobiChain: expected " + std::to_string(fields_.size() - 1) +
                      " couplings, got " + std::to_string(couplings_.size()));
  }
  for (std::size_t n = 0; n < couplings_.size(); ++n) {
    if (!(couplings_[n] > 0.0) || !std::isfinite(couplings_[n])) {
      throw ConfigError("JacobiChain: coupling J_" + std::to_string(n + 1) +
                        " must be finite and strictly positive");
    }
  }
  for (double b : fields_) {
    if (!std::isfinite(b)) throw ConfigError("JacobiChain: fields must be finite");
  }
}

double JacobiChain::trace() const {
  return std::accumulate(fields_.begin(), fields_.end(), 0.0);
}

Eigen::MatrixXd JacobiChain::dense() const {
  const int n = n_sites();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) h(i, i) = fields_[i];
  for (int i = 0; i + 1 < n; ++i) {
    h(i, i + 1) = couplings_[i];
    h(i + 1, i) = couplings_[i];
  }
  return h;
}

JacobiChain build_chain(ChainKind kind, int n_sites, double a, double j_uniform) {
  if (n_sites < 2) {
    throw ConfigError("build_chain: n_sites must be >= 2, got " + std::to_string(n_sites));
  }
  if (!std::isfinite(a)) throw ConfigError("build_chain: field slope must be finite");
  std::vector<double> couplings(n_sites - 1);
  std::vector<double> fields(n_sites, 0.0);
  std::optional<double> junction;
  const double last = n_sites - 1;  // N, the highest site index
  switch (kind) {
    case ChainKind::pst:
    case ChainKind::field:
      for (int n = 1; n < n_sites; ++n) couplings[n - 1] = std::sqrt(n * (last + 1 - n));
      if (kind == ChainKind::field) {
        for (int n = 0; n < n_sites; ++n) fields[n] = a * n;
      }
      break;
    case ChainKind::half_slide: {
      const double virtual_len = 2.0 * n_sites;
      for (int n = 1; n < n_sites; ++n) couplings[n - 1] = std::sqrt(n * (virtual_len - n));
      for (int n = 0; n < n_sites; ++n) fields[n] = a * n;
      junction = static_cast<double>(n_sites);
      break;
    }
    case ChainKind::uniform:
      if (!(j_uniform > 0.0)) throw ConfigError("build_chain: uniform coupling must be > 0");
      std::fill(couplings.begin(), couplings.end(), j_uniform);
      break;
  }
  return JacobiChain(std::move(couplings), std::move(fields), junction);
}

JacobiChain build_krawtchouk_chain(int degree, double p) {
  if (degree < 1) throw ConfigError("build_krawtchouk_chain: degree must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("build_krawtchouk_chain: p must lie in (0,1)");
  const double n_top = degree;
  std::vector<double> couplings(degree);
  std::vector<double> fields(degree + 1);
  for (int n = 1; n <= degree; ++n) {
    couplings[n - 1] = std::sqrt(p * (1 - p) * n * (n_top + 1 - n));
  }
  for (int n = 0; n <= degree; ++n) fields[n] = (1 - 2 * p) * n + p * n_top;
  return JacobiChain(std::move(couplings), std::move(fields));
}

Eigen::MatrixXd Spectrum::reconstruct() const {
  return eigenvectors * eigenvalues.asDiagonal() * eigenvectors.transpose();
}

Spectrum eigendecompose(const JacobiChain& chain) {
  const auto f = chain.fields();
  const auto c = chain.couplings();
  Eigen::VectorXd diag = Eigen::Map<const Eigen::VectorXd>(f.data(), f.size());
  Eigen::VectorXd off = Eigen::Map<const Eigen::VectorXd>(c.data(), c.size());
  auto sys = detail::tridiagonal_eigensystem(diag, off);
  return Spectrum{std::move(sys.values), std::move(sys.vectors)};
}

Eigen::VectorXcd evolve_spectral(const Spectrum& spectrum, const Eigen::VectorXcd& psi,
                                 double t) {
  const auto& v = spectrum.eigenvectors;
  if (psi.size() != v.rows()) throw ConfigError("evolve_spectral: dimension mismatch");
  Eigen::VectorXcd coeff = v.transpose().cast<std::complex<double>>() * psi;
  for (Eigen::Index j = 0; j < coeff.size(); ++j) {
    coeff[j] *= std::polar(1.0, -spectrum.eigenvalues[j] * t);
  }
  return v.cast<std::complex<double>>() * coeff;
}

}  // namespace qslide
