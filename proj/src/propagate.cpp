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

#include "qslide/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>
#include <string>
#include <utility>

#include "linalg.hpp"
#include "qslide/errors.hpp"

namespace qslide {

using cd = std::complex<double>;

double PacketState::probability(std::span<const int> sites) const {
  double p = 0.0;
  for (int s : sites) p += std::norm(amplitudes[s]);
  return p;
}

PacketState PacketState::localized(int n_sites, int site) {
  if (site < 0 || site >= n_sites) throw ConfigError("PacketState: site out of range");
  PacketState state;
  state.amplitudes = Eigen::VectorXcd::Zero(n_sites);
  state.amplitudes[site] = 1.0;
  return state;
}

std::vector<Eigen::VectorXcd> Propagator::apply_many(const Eigen::VectorXcd& psi,
                                                     std::span<const double> dts) const {
  std::vector<Eigen::VectorXcd> out;
  out.reserve(dts.size());
  Eigen::VectorXcd current = psi;
  double at = 0.0;
  for (double dt : dts) {
    if (dt != at) current = apply(current, dt - at);
    at = dt;
    out.push_back(current);
  }
  return out;
}

SpectralPropagator::SpectralPropagator(const Eigen::MatrixXd& hamiltonian) {
  auto sys = detail::symmetric_eigensystem(hamiltonian);
  eigenvalues_ = std::move(sys.values);
  eigenvectors_ = std::move(sys.vectors);
}

Eigen::VectorXcd SpectralPropagator::to_eigenbasis(const Eigen::VectorXcd& psi) const {
  if (psi.size() != dimension()) throw ConfigError("propagator: state dimension mismatch");
  const Eigen::VectorXd re = eigenvectors_.transpose() * psi.real();
  const Eigen::VectorXd im = eigenvectors_.transpose() * psi.imag();
  Eigen::VectorXcd c(re.size());
  c.real() = re;
  c.imag() = im;
  return c;
}

Eigen::VectorXcd SpectralPropagator::from_eigenbasis(const Eigen::VectorXcd& coeff) const {
  const Eigen::VectorXd re = eigenvectors_ * coeff.real();
  const Eigen::VectorXd im = eigenvectors_ * coeff.imag();
  Eigen::VectorXcd psi(re.size());
  psi.real() = re;
  psi.imag() = im;
  return psi;
}

Eigen::VectorXcd SpectralPropagator::apply(const Eigen::VectorXcd& psi, double dt) const {
  Eigen::VectorXcd c = to_eigenbasis(psi);
  for (Eigen::Index j = 0; j < c.size(); ++j) c[j] *= std::polar(1.0, -eigenvalues_[j] * dt);
  return from_eigenbasis(c);
}

std::vector<Eigen::VectorXcd> SpectralPropagator::apply_many(
    const Eigen::VectorXcd& psi, std::span<const double> dts) const {
  const Eigen::VectorXcd c0 = to_eigenbasis(psi);
  std::vector<Eigen::VectorXcd> out;
  out.reserve(dts.size());
  for (double dt : dts) {
    Eigen::VectorXcd c = c0;
    for (Eigen::Index j = 0; j < c.size(); ++j) c[j] *= std::polar(1.0, -eigenvalues_[j] * dt);
    out.push_back(from_eigenbasis(c));
  }
  return out;
}

std::vector<double> bessel_j_sequence(double x, int n) {
  if (n < 0) throw ConfigError("bessel_j_sequence: order must be >= 0");
  std::vector<double> out(n + 1, 0.0);
  if (x == 0.0) {
    out[0] = 1.0;
    return out;
  }
  const double ax = std::abs(x);
  int top = std::max(n, static_cast<int>(std::ceil(ax))) + 60 +
            static_cast<int>(std::ceil(20.0 * std::cbrt(ax)));
  top += top % 2;
  std::vector<double> f(top + 2, 0.0);
  f[top] = 1e-300;
  for (int k = top; k >= 1; --k) {
    f[k - 1] = (2.0 * k / ax) * f[k] - f[k + 1];
    if (std::abs(f[k - 1]) > 1e250) {
      for (int j = k - 1; j <= top; ++j) f[j] *= 1e-250;
    }
  }
  // J_0 + 2 (J_2 + J_4 + ...) = 1
  double norm = f[0];
  for (int k = 2; k <= top; k += 2) norm += 2.0 * f[k];
  for (int k = 0; k <= n; ++k) {
    const double v = f[k] / norm;
    out[k] = (x < 0.0 && k % 2 == 1) ? -v : v;
  }
  return out;
}

ChebyshevPropagator::ChebyshevPropagator(Eigen::SparseMatrix<double> hamiltonian,
                                         double tolerance)
    : hamiltonian_(std::move(hamiltonian)), tolerance_(tolerance) {
  if (hamiltonian_.rows() != hamiltonian_.cols()) {
    throw ConfigError("ChebyshevPropagator: matrix must be square");
  }
  if (!(tolerance_ > 0.0)) throw ConfigError("ChebyshevPropagator: tolerance must be > 0");
  hamiltonian_.makeCompressed();
  const Eigen::Index n = hamiltonian_.rows();
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd radius = Eigen::VectorXd::Zero(n);
  for (Eigen::Index col = 0; col < hamiltonian_.outerSize(); ++col) {
    for (Eigen::SparseMatrix<double>::InnerIterator it(hamiltonian_, col); it; ++it) {
      if (it.row() == it.col()) {
        diag[it.row()] += it.value();
      } else {
        radius[it.row()] += std::abs(it.value());
      }
    }
  }
  double lo = 0.0;
  double hi = 0.0;
  if (n > 0) {
    lo = (diag - radius).minCoeff();
    hi = (diag + radius).maxCoeff();
  }
  center_ = 0.5 * (hi + lo);
  half_width_ = 0.5 * (hi - lo) * (1.0 + 1e-9) + 1e-12;
}

int ChebyshevPropagator::order(double dt) const {
  const double x = half_width_ * std::abs(dt);
  const int top = static_cast<int>(std::ceil(x + 20.0 * std::cbrt(x) + 40.0));
  const auto j = bessel_j_sequence(x, top);
  double tail = 0.0;
  int k = top;
  while (k > 0 && tail + 2.0 * std::abs(j[k]) < tolerance_) {
    tail += 2.0 * std::abs(j[k]);
    --k;
  }
  return k;
}

Eigen::VectorXcd ChebyshevPropagator::apply(const Eigen::VectorXcd& psi, double dt) const {
  if (psi.size() != dimension()) throw ConfigError("propagator: state dimension mismatch");
  if (dt == 0.0) return psi;
  const int terms = order(dt);
  const auto j = bessel_j_sequence(half_width_ * dt, terms);
  auto scaled = [&](const Eigen::VectorXcd& v) -> Eigen::VectorXcd {
    return (hamiltonian_ * v - center_ * v) / half_width_;
  };
  // exp(-i x y) = J_0(x) + 2 sum_k (-i)^k J_k(x) T_k(y)
  Eigen::VectorXcd prev = psi;
  Eigen::VectorXcd acc = j[0] * psi;
  if (terms >= 1) {
    Eigen::VectorXcd cur = scaled(psi);
    cd phase(0.0, -1.0);
    acc += 2.0 * j[1] * phase * cur;
    for (int k = 2; k <= terms; ++k) {
      Eigen::VectorXcd next = 2.0 * scaled(cur) - prev;
      prev = std::move(cur);
      cur = std::move(next);
      phase *= cd(0.0, -1.0);
      acc += (2.0 * j[k]) * phase * cur;
    }
  }
  return std::polar(1.0, -center_ * dt) * acc;
}

std::shared_ptr<const Propagator> make_propagator(const Eigen::SparseMatrix<double>& h,
                                                  const PropagatorOptions& options) {
  bool spectral = options.kind == PropagatorKind::spectral;
  if (options.kind == PropagatorKind::automatic) {
    spectral = h.rows() <= options.spectral_max_sites;
  }
  if (spectral) return std::make_shared<SpectralPropagator>(Eigen::MatrixXd(h));
  return std::make_shared<ChebyshevPropagator>(h, options.chebyshev_tolerance);
}

Schedule::Schedule(std::vector<Segment> segments, std::vector<double> sample_times)
    : segments_(std::move(segments)), sample_times_(std::move(sample_times)) {
  Eigen::Index dim = -1;
  for (const auto& s : segments_) {
    if (!s.propagator) throw ConfigError("Schedule: segment without a propagator");
    if (!(s.duration >= 0.0)) throw ConfigError("Schedule: durations must be non-negative");
    if (dim >= 0 && s.propagator->dimension() != dim) {
      throw ConfigError("Schedule: segments act on different dimensions");
    }
    dim = s.propagator->dimension();
  }
  const double total = total_duration();
  if (!std::is_sorted(sample_times_.begin(), sample_times_.end())) {
    throw ConfigError("Schedule: sample times must be sorted");
  }
  for (double t : sample_times_) {
    if (!(t >= 0.0 && t <= total * (1.0 + 1e-14))) {
      throw ConfigError("Schedule: sample time " + std::to_string(t) + " outside [0, " +
                        std::to_string(total) + "]");
    }
  }
}

double Schedule::total_duration() const {
  double t = 0.0;
  for (const auto& s : segments_) t += s.duration;
  return t;
}

SwitchPropagators prepare_switch(const WalkGraph& graph, const PropagatorOptions& options) {
  return {make_propagator(graph.hamiltonian(true), options),
          make_propagator(graph.hamiltonian(false), options)};
}

Schedule make_switch_schedule(const SwitchPropagators& propagators, double t_off,
                              double t_total, std::vector<double> samples) {
  if (!(t_off > 0.0)) throw ConfigError("switch schedule: t_off must be positive");
  if (!(t_off <= t_total)) {
    throw ConfigError("switch schedule: t_off = " + std::to_string(t_off) +
                      " exceeds t_total = " + std::to_string(t_total));
  }
  std::vector<Segment> segments = {{propagators.field_on, t_off}};
  if (t_total > t_off) segments.push_back({propagators.field_off, t_total - t_off});
  std::sort(samples.begin(), samples.end());
  return Schedule(std::move(segments), std::move(samples));
}

Schedule make_switch_schedule(const WalkGraph& graph, double t_off, double t_total,
                              std::vector<double> samples, const PropagatorOptions& options) {
  if (!(t_off > 0.0 && t_off <= t_total)) {
    throw ConfigError("switch schedule: need 0 < t_off <= t_total");
  }
  return make_switch_schedule(prepare_switch(graph, options), t_off, t_total,
                              std::move(samples));
}

std::vector<PacketState> evolve(const Schedule& schedule, const PacketState& initial) {
  const auto& segments = schedule.segments();
  if (!segments.empty() && segments.front().propagator->dimension() != initial.amplitudes.size()) {
    throw ConfigError("evolve: state has " + std::to_string(initial.amplitudes.size()) +
                      " sites, schedule acts on " +
                      std::to_string(segments.front().propagator->dimension()));
  }
  if (std::abs(initial.norm_squared() - 1.0) > 1e-8) {
    throw ConfigError("evolve: initial state is not normalized");
  }
  const auto& samples = schedule.sample_times();
  std::vector<PacketState> out;
  out.reserve(samples.size());
  std::size_t next = 0;
  Eigen::VectorXcd psi = initial.amplitudes;
  double start = 0.0;
  while (next < samples.size() && samples[next] <= start) {
    out.push_back({psi, initial.time + samples[next]});
    ++next;
  }
  for (const auto& seg : segments) {
    const double end = start + seg.duration;
    std::vector<double> offsets;
    std::size_t taken = next;
    while (taken < samples.size() && samples[taken] <= end) {
      offsets.push_back(samples[taken] - start);
      ++taken;
    }
    offsets.push_back(seg.duration);
    auto states = seg.propagator->apply_many(psi, offsets);
    for (std::size_t i = 0; next < taken; ++i, ++next) {
      out.push_back({states[i], initial.time + samples[next]});
    }
    psi = std::move(states.back());
    start = end;
  }
  for (; next < samples.size(); ++next) out.push_back({psi, initial.time + samples[next]});
  return out;
}

void write_trajectory_csv(std::ostream& os, std::span<const PacketState> trajectory) {
  os << "time,site,re,im,prob\n";
  char buf[160];
  for (const auto& state : trajectory) {
    for (Eigen::Index s = 0; s < state.amplitudes.size(); ++s) {
      const cd a = state.amplitudes[s];
      std::snprintf(buf, sizeof buf, "%.17g,%ld,%.17g,%.17g,%.17g\n", state.time,
                    static_cast<long>(s), a.real(), a.imag(), std::norm(a));
      os << buf;
    }
  }
}

}  // namespace qslide
