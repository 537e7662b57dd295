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

#ifndef QSLIDE_JACOBI_HPP_
#define QSLIDE_JACOBI_HPP_

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <vector>

namespace qslide {

enum class ChainKind {
  pst,         // J_n = sqrt(n(N+1-n)), no field
  field,       // pst couplings with the linear field B_n = a*n
  half_slide,  // first half of a virtual chain of 2*n_sites sites, with field
  uniform,     // constant coupling, no field
};

/// Nearest-neighbour chain Hamiltonian: a real symmetric tridiagonal matrix
/// with couplings J_1..J_N on the off-diagonal and fields B_0..B_N on the
/// diagonal. Immutable once built.
class JacobiChain {
 public:
  /// Throws ConfigError unless couplings.size() == fields.size() - 1,
  /// fields.size() >= 1 and every coupling is strictly positive.
  JacobiChain(std::vector<double> couplings, std::vector<double> fields,
              std::optional<double> junction_coupling = std::nullopt);

  int n_sites() const { return static_cast<int>(fields_.size()); }
  std::span<const double> couplings() const { return couplings_; }
  std::span<const double> fields() const { return fields_; }

  /// Coupling a continuation wire must carry to extend this chain smoothly.
  /// Only half slides have one: the coupling J_N = N of the virtual chain.
  std::optional<double> junction_coupling() const { return junction_coupling_; }

  double trace() const;
  Eigen::MatrixXd dense() const;

 private:
  std::vector<double> couplings_;
  std::vector<double> fields_;
  std::optional<double> junction_coupling_;
};

/// `a` is ignored for pst and uniform, `j_uniform` is used only for uniform.
JacobiChain build_chain(ChainKind kind, int n_sites, double a = 0.0,
                        double j_uniform = 1.0);

/// The Krawtchouk chain with J_n = sqrt(p(1-p) n (N+1-n)) and
/// B_n = (1-2p) n + p N over N+1 sites. Its spectrum is exactly {0, ..., N}.
JacobiChain build_krawtchouk_chain(int degree, double p);

struct Spectrum {
  Eigen::VectorXd eigenvalues;   // ascending
  Eigen::MatrixXd eigenvectors;  // orthonormal columns

  Eigen::MatrixXd reconstruct() const;
};

Spectrum eigendecompose(const JacobiChain& chain);

/// exp(-i H t) psi with H given by its spectrum.
Eigen::VectorXcd evolve_spectral(const Spectrum& spectrum, const Eigen::VectorXcd& psi,
                                 double t);

}  // namespace qslide

#endif  // QSLIDE_JACOBI_HPP_
