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

#ifndef QSLIDE_ANALYTIC_HPP_
#define QSLIDE_ANALYTIC_HPP_

#include <complex>
#include <functional>
#include <span>
#include <vector>

// Closed-form results for the linear-field chain H_a (J_n = sqrt(n(N+1-n)),
// B_n = a n): Krawtchouk polynomials and weights, the exact transition
// amplitude from site 0, the packet momentum law and its Gaussian limit, and
// Gaussian-averaged transmission through a widget.

namespace qslide {

/// Parameters of the Krawtchouk family K_n(x; p, N).
struct KrawtchoukContext {
  KrawtchoukContext(int degree, double p);  // throws ConfigError unless N>=1, 0<p<1

  int degree;  // N
  double p;
};

/// K_n(x; p, N) by forward three-term recurrence from K_0 = 1.
/// Throws std::out_of_range unless 0 <= n <= N.
double krawtchouk(int n, double x, const KrawtchoukContext& ctx);

/// Orthonormal polynomial of the Krawtchouk chain,
/// chi_n(x) = (-1)^n (p/(1-p))^{n/2} sqrt(binom(N,n)) K_n(x).
double krawtchouk_chi(int n, double x, const KrawtchoukContext& ctx);

/// Binomial weight binom(N,n) p^n (1-p)^{N-n}, evaluated in log space.
double weight(int n, const KrawtchoukContext& ctx);

double log_binomial(int n, int k);

/// Inverse of a = (1-2p)/sqrt(p(1-p)): upper branch for a <= 0.
double p_of_a(double a);
double a_of_p(double p);

/// b = 1/sqrt(a^2 + 4). The walk on H_a returns to site 0 after 2*b*pi.
double period_scale(double a);
double period(double a);

struct AmplitudeResult {
  double magnitude = 0.0;
  double phase = 0.0;           // full phase of <r|exp(-i H_a t)|0>, in (-pi, pi]
  double momentum_theta = 0.0;  // theta(t, a), in (-pi, pi]
  double global_phase = 0.0;    // N * arg(1 - p + p e^{-i t/b}), unwrapped
  double diagonal_phase = 0.0;  // (pN/b) t, from the constant dropped between H_a and H_p/b

  std::complex<double> value() const { return std::polar(magnitude, phase); }
};

/// <r| exp(-i H_a t) |0> for the (N+1)-site chain, 0 <= r <= N.
/// Throws std::domain_error unless 0 < t < 2 b pi.
AmplitudeResult amplitude(int r, double a, double t, int degree);

/// All N+1 amplitudes at once.
std::vector<std::complex<double>> amplitude_profile(double a, double t, int degree);

/// Piecewise momentum law: -atan(ab tan(t/2b)) -/+ pi/2 on (0, b pi] and
/// (b pi, 2 b pi). The value at t = b pi is the limit from the left.
/// Throws std::domain_error outside (0, 2 b pi).
double momentum_theta(double t, double a);

/// Earliest t in (0, b pi] with momentum_theta(t, a) == theta, for a < 0 and
/// theta in (-pi/2, 0); closed form 2b atan(cot(-theta) / (-a b)).
double time_for_momentum(double theta, double a);

/// q(t) = 4 b^2 sin^2(t / 2b), the binomial success probability of |A|^2.
double binomial_q(double t, double a);

struct GaussianPacket {
  double center = 0.0;    // N q
  double sigma = 0.0;     // sqrt(N q (1 - q))
  double momentum = 0.0;  // theta(t, a)
  double sigma_k = 0.0;   // 1 / (2 sigma)
  bool approximate_regime = true;  // false when sigma < 3
};

GaussianPacket gaussian_packet(int degree, double a, double t);

/// Plane-wave transmission through the U_b phase widget,
/// 64 / (64 + cos^2(2k) csc^6(k) sec^2(k)), for k in (-pi, 0).
/// At k = 0 or -pi throws std::domain_error unless `limits` is set, in which
/// case the limit 0 is returned. k = -pi/2 returns its limit 0.
double transmission_b(double k, bool limits = false);

/// Tabulated transmission T(k) on an ascending grid, linearly interpolated.
class TransmissionTable {
 public:
  TransmissionTable(std::vector<double> k, std::vector<double> t);

  double operator()(double k) const;
  std::span<const double> k() const { return k_; }
  std::span<const double> values() const { return t_; }

 private:
  std::vector<double> k_;
  std::vector<double> t_;
};

/// Integral over k in (-pi, 0) of the normal density N(theta, sigma_k) times
/// T(k). Adaptive Gauss-Kronrod with absolute tolerance 1e-10; throws
/// NumericalError when the error estimate exceeds it.
double gaussian_transmission(double theta, double sigma_k,
                             const std::function<double(double)>& transmission);

/// Widget b uses the closed form.
double gaussian_transmission(double theta, double sigma_k);

/// Widget c has no closed form; pass its table from the scattering solver.
double gaussian_transmission(double theta, double sigma_k, const TransmissionTable& table);

/// Wrap an angle into (-pi, pi].
double wrap_phase(double phi);

}  // namespace qslide

#endif  // QSLIDE_ANALYTIC_HPP_
