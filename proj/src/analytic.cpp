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

#include <algorithm>
#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "qslide/errors.hpp"

namespace qslide {

namespace {

constexpr double kPi = std::numbers::pi;

void check_index(int n, const KrawtchoukContext& ctx) {
  if (n < 0 || n > ctx.degree) {
    throw std::out_of_range("krawtchouk: index " + std::to_string(n) + " outside [0, " +
                            std::to_string(ctx.degree) + "]");
  }
}

void check_in_period(double t, double a, const char* who) {
  const double T = period(a);
  if (!(t > 0.0 && t < T)) {
    throw std::domain_error(std::string(who) + ": t = " + std::to_string(t) +
                            " outside the open period (0, " + std::to_string(T) + ")");
  }
}

// x log y with the convention 0 log 0 = 0.
double xlogy(double x, double y) { return x == 0.0 ? 0.0 : x * std::log(y); }

}  // namespace

KrawtchoukContext::KrawtchoukContext(int degree_, double p_) : degree(degree_), p(p_) {
  if (degree < 1) throw ConfigError("KrawtchoukContext: degree must be >= 1");
  if (!(p > 0.0 && p < 1.0)) throw ConfigError("KrawtchoukContext: p must lie in (0,1)");
}

double krawtchouk(int n, double x, const KrawtchoukContext& ctx) {
  check_index(n, ctx);
  const double N = ctx.degree;
  const double p = ctx.p;
  // -x K_m = p(N-m) K_{m+1} - [p(N-m) + m(1-p)] K_m + m(1-p) K_{m-1}
  double prev = 0.0;
  double cur = 1.0;
  for (int m = 0; m < n; ++m) {
    const double up = p * (N - m);
    const double down = m * (1 - p);
    const double next = ((up + down - x) * cur - down * prev) / up;
    prev = cur;
    cur = next;
  }
  return cur;
}

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double krawtchouk_chi(int n, double x, const KrawtchoukContext& ctx) {
  const double p = ctx.p;
  const double scale =
      std::exp(0.5 * (n * (std::log(p) - std::log1p(-p)) + log_binomial(ctx.degree, n)));
  return (n % 2 == 0 ? 1.0 : -1.0) * scale * krawtchouk(n, x, ctx);
}

double weight(int n, const KrawtchoukContext& ctx) {
  check_index(n, ctx);
  const double p = ctx.p;
  return std::exp(log_binomial(ctx.degree, n) + n * std::log(p) +
                  (ctx.degree - n) * std::log1p(-p));
}

double p_of_a(double a) {
  if (!std::isfinite(a)) throw std::domain_error("p_of_a: a must be finite");
  const double root = std::sqrt(a * a / (a * a + 4.0));
  return a <= 0.0 ? 0.5 * (1.0 + root) : 0.5 * (1.0 - root);
}

double a_of_p(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("a_of_p: p must lie in (0,1)");
  return (1.0 - 2.0 * p) / std::sqrt(p * (1.0 - p));
}

double period_scale(double a) { return 1.0 / std::sqrt(a * a + 4.0); }

double period(double a) { return 2.0 * period_scale(a) * kPi; }

double wrap_phase(double phi) {
  double w = std::remainder(phi, 2.0 * kPi);  // [-pi, pi]
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

double momentum_theta(double t, double a) {
  check_in_period(t, a, "momentum_theta");
  const double b = period_scale(a);
  const double x = t / (2.0 * b);
  const bool first = t <= b * kPi;
  // t = b pi sits on the tan pole; take the limit from the left
  const double arc = t == b * kPi ? (a == 0.0 ? 0.0 : std::copysign(kPi / 2, a))
                                  : std::atan(a * b * std::tan(x));
  return wrap_phase(first ? -arc - kPi / 2 : -arc + kPi / 2);
}

double time_for_momentum(double theta, double a) {
  if (!(a < 0.0)) throw std::domain_error("time_for_momentum: requires a < 0");
  if (!(theta > -kPi / 2 && theta < 0.0)) {
    throw std::domain_error("time_for_momentum: theta must lie in (-pi/2, 0)");
  }
  const double b = period_scale(a);
  const double tan_x = (1.0 / std::tan(-theta)) / (-a * b);
  return 2.0 * b * std::atan(tan_x);
}

double binomial_q(double t, double a) {
  const double b = period_scale(a);
  const double s = std::sin(t / (2.0 * b));
  return std::clamp(4.0 * b * b * s * s, 0.0, 1.0);
}

AmplitudeResult amplitude(int r, double a, double t, int degree) {
  if (degree < 1) throw ConfigError("amplitude: degree must be >= 1");
  if (r < 0 || r > degree) {
    throw std::out_of_range("amplitude: site " + std::to_string(r) + " outside [0, " +
                            std::to_string(degree) + "]");
  }
  check_in_period(t, a, "amplitude");
  const double b = period_scale(a);
  const double p = p_of_a(a);
  const double q = binomial_q(t, a);
  const double tau = t / b;

  AmplitudeResult out;
  const double log_mag =
      0.5 * (log_binomial(degree, r) + xlogy(r, q) + xlogy(degree - r, 1.0 - q));
  out.magnitude = std::exp(log_mag);
  out.momentum_theta = momentum_theta(t, a);
  out.global_phase =
      degree * std::atan2(-p * std::sin(tau), 1.0 - p + p * std::cos(tau));
  out.diagonal_phase = p * degree / b * t;
  out.phase = wrap_phase(r * out.momentum_theta + out.global_phase + out.diagonal_phase);
  return out;
}

std::vector<std::complex<double>> amplitude_profile(double a, double t, int degree) {
  std::vector<std::complex<double>> out(degree + 1);
  for (int r = 0; r <= degree; ++r) out[r] = amplitude(r, a, t, degree).value();
  return out;
}

GaussianPacket gaussian_packet(int degree, double a, double t) {
  if (degree < 1) throw ConfigError("gaussian_packet: degree must be >= 1");
  const double q = binomial_q(t, a);
  GaussianPacket g;
  g.center = degree * q;
  g.sigma = std::sqrt(degree * q * (1.0 - q));
  g.momentum = momentum_theta(t, a);
  g.sigma_k = 1.0 / (2.0 * g.sigma);
  g.approximate_regime = g.sigma >= 3.0;
  return g;
}

double transmission_b(double k, bool limits) {
  if (!(k >= -kPi && k <= 0.0)) {
    throw std::domain_error("transmission_b: k must lie in (-pi, 0)");
  }
  if (k == 0.0 || k == -kPi) {
    if (!limits) throw std::domain_error("transmission_b: csc pole at k = 0 or -pi");
    return 0.0;
  }
  const double s = std::sin(k);
  const double c = std::cos(k);
  const double c2 = std::cos(2.0 * k);
  // multiplied through by sin^6 cos^2 so k = -pi/2 gives its limit 0
  const double num = 64.0 * std::pow(s, 6) * c * c;
  return num / (num + c2 * c2);
}

TransmissionTable::TransmissionTable(std::vector<double> k, std::vector<double> t)
    : k_(std::move(k)), t_(std::move(t)) {
  if (k_.size() != t_.size() || k_.size() < 2) {
    throw ConfigError("TransmissionTable: need matching k and T arrays of length >= 2");
  }
  if (!std::is_sorted(k_.begin(), k_.end())) {
    throw ConfigError("TransmissionTable: k grid must be ascending");
  }
}

double TransmissionTable::operator()(double k) const {
  if (k <= k_.front()) return t_.front();
  if (k >= k_.back()) return t_.back();
  const auto hi = std::upper_bound(k_.begin(), k_.end(), k);
  const std::size_t j = static_cast<std::size_t>(hi - k_.begin());
  const double w = (k - k_[j - 1]) / (k_[j] - k_[j - 1]);
  return (1.0 - w) * t_[j - 1] + w * t_[j];
}

namespace {

// Bisection driver around the 61-point Kronrod rule. The error of a panel is
// its difference from the embedded 30-point Gauss rule; the absolute budget
// is split in half at each level.
template <class F>
double adaptive_kronrod(const F& f, double a, double b, double tol, int depth, double* error) {
  using boost::math::quadrature::gauss;
  using boost::math::quadrature::gauss_kronrod;
  const double v = gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0);
  const double e = std::abs(v - gauss<double, 30>::integrate(f, a, b));
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::abs(v);
  if (e <= tol || e <= floor || depth == 0) {
    *error += e;
    return v;
  }
  const double m = 0.5 * (a + b);
  return adaptive_kronrod(f, a, m, 0.5 * tol, depth - 1, error) +
         adaptive_kronrod(f, m, b, 0.5 * tol, depth - 1, error);
}

double weighted_integral(double theta, double sigma_k,
                         const std::function<double(double)>& transmission,
                         std::span<const double> breaks) {
  if (!(sigma_k > 0.0)) throw ConfigError("gaussian_transmission: sigma_k must be > 0");
  if (!(theta > -kPi && theta < 0.0)) {
    throw std::domain_error("gaussian_transmission: theta must lie in (-pi, 0)");
  }
  constexpr double kTolerance = 1e-10;
  const double norm = 1.0 / (std::sqrt(2.0 * kPi) * sigma_k);
  auto integrand = [&](double k) {
    const double z = (k - theta) / sigma_k;
    return norm * std::exp(-0.5 * z * z) * transmission(k);
  };
  // beyond 40 sigma the Gaussian is below 1e-340
  const double lo = std::max(-kPi, theta - 40.0 * sigma_k);
  const double hi = std::min(0.0, theta + 40.0 * sigma_k);
  std::vector<double> cuts = {lo, theta, hi};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    const double share = kTolerance * (cuts[i + 1] - cuts[i]) / (hi - lo);
    total += adaptive_kronrod(integrand, cuts[i], cuts[i + 1], 0.5 * share, 30, &error);
  }
  if (!(error <= kTolerance)) {
    throw NumericalError("gaussian_transmission: quadrature error estimate " +
                             std::to_string(error) + " exceeds 1e-10",
                         error);
  }
  return total;
}

}  // namespace

double gaussian_transmission(double theta, double sigma_k,
                             const std::function<double(double)>& transmission) {
  return weighted_integral(theta, sigma_k, transmission, {});
}

double gaussian_transmission(double theta, double sigma_k) {
  return gaussian_transmission(theta, sigma_k, [](double k) { return transmission_b(k); });
}

double gaussian_transmission(double theta, double sigma_k, const TransmissionTable& table) {
  return weighted_integral(theta, sigma_k, [&table](double k) { return table(k); }, table.k());
}

}  // namespace qslide
