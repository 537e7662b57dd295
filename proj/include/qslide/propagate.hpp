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

#ifndef QSLIDE_PROPAGATE_HPP_
#define QSLIDE_PROPAGATE_HPP_

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "qslide/assembly.hpp"

namespace qslide {

/// Walker wavefunction over graph sites at a given time.
struct PacketState {
  Eigen::VectorXcd amplitudes;
  double time = 0.0;

  double norm_squared() const { return amplitudes.squaredNorm(); }
  double probability(std::span<const int> sites) const;

  /// |site> on an n-site graph at t = 0.
  static PacketState localized(int n_sites, int site);
};

/// exp(-i H dt) for a fixed real symmetric H.
class Propagator {
 public:
  virtual ~Propagator() = default;

  virtual Eigen::Index dimension() const = 0;
  virtual Eigen::VectorXcd apply(const Eigen::VectorXcd& psi, double dt) const = 0;

  /// States at each of the ascending offsets `dts` from psi. The default
  /// chains apply() between consecutive offsets.
  virtual std::vector<Eigen::VectorXcd> apply_many(const Eigen::VectorXcd& psi,
                                                   std::span<const double> dts) const;
};

/// Full eigendecomposition, reused across every time offset.
class SpectralPropagator final : public Propagator {
 public:
  explicit SpectralPropagator(const Eigen::MatrixXd& hamiltonian);

  Eigen::Index dimension() const override { return eigenvalues_.size(); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi, double dt) const override;
  std::vector<Eigen::VectorXcd> apply_many(const Eigen::VectorXcd& psi,
                                           std::span<const double> dts) const override;

  const Eigen::VectorXd& eigenvalues() const { return eigenvalues_; }

 private:
  Eigen::VectorXcd to_eigenbasis(const Eigen::VectorXcd& psi) const;
  Eigen::VectorXcd from_eigenbasis(const Eigen::VectorXcd& coeff) const;

  Eigen::VectorXd eigenvalues_;
  Eigen::MatrixXd eigenvectors_;
};

/// Chebyshev expansion of exp(-i H dt) on the Gershgorin interval of H. The
/// series is cut once the discarded Bessel coefficients sum below
/// `tolerance`, which bounds the 2-norm error of each apply().
class ChebyshevPropagator final : public Propagator {
 public:
  explicit ChebyshevPropagator(Eigen::SparseMatrix<double> hamiltonian,
                               double tolerance = 1e-10);

  Eigen::Index dimension() const override { return hamiltonian_.rows(); }
  Eigen::VectorXcd apply(const Eigen::VectorXcd& psi, double dt) const override;

  /// Number of Chebyshev terms apply() uses for this step.
  int order(double dt) const;

 private:
  Eigen::SparseMatrix<double> hamiltonian_;
  double center_ = 0.0;
  double half_width_ = 1.0;
  double tolerance_;
};

/// Coefficients J_0(x) .. J_n(x) by normalized backward recurrence.
std::vector<double> bessel_j_sequence(double x, int n);

enum class PropagatorKind { automatic, spectral, chebyshev };

struct PropagatorOptions {
  PropagatorKind kind = PropagatorKind::automatic;
  int spectral_max_sites = 6000;  // automatic: spectral up to this size
  double chebyshev_tolerance = 1e-10;
};

std::shared_ptr<const Propagator> make_propagator(const Eigen::SparseMatrix<double>& h,
                                                  const PropagatorOptions& options = {});

struct Segment {
  std::shared_ptr<const Propagator> propagator;
  double duration = 0.0;
};

/// Piecewise-constant Hamiltonian history plus the absolute sample times.
class Schedule {
 public:
  Schedule() = default;
  /// Throws ConfigError on negative durations, null propagators, mixed
  /// dimensions, or sample times outside [0, total_duration()].
  Schedule(std::vector<Segment> segments, std::vector<double> sample_times);

  const std::vector<Segment>& segments() const { return segments_; }
  const std::vector<double>& sample_times() const { return sample_times_; }
  double total_duration() const;

 private:
  std::vector<Segment> segments_;
  std::vector<double> sample_times_;
};

/// Propagators for a circuit with the slide field on and off.
struct SwitchPropagators {
  std::shared_ptr<const Propagator> field_on;
  std::shared_ptr<const Propagator> field_off;
};

SwitchPropagators prepare_switch(const WalkGraph& graph, const PropagatorOptions& options = {});

/// Field on for t_off, then off for t_total - t_off. A zero-length second
/// segment is dropped. Throws ConfigError unless 0 < t_off <= t_total.
Schedule make_switch_schedule(const SwitchPropagators& propagators, double t_off,
                              double t_total, std::vector<double> samples);
Schedule make_switch_schedule(const WalkGraph& graph, double t_off, double t_total,
                              std::vector<double> samples,
                              const PropagatorOptions& options = {});

/// One state per sample time. Throws ConfigError on dimension mismatch or an
/// unnormalized initial state.
std::vector<PacketState> evolve(const Schedule& schedule, const PacketState& initial);

/// Rows of time, site, Re psi, Im psi, |psi|^2.
void write_trajectory_csv(std::ostream& os, std::span<const PacketState> trajectory);

}  // namespace qslide

#endif  // QSLIDE_PROPAGATE_HPP_
