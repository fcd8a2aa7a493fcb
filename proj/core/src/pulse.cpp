// Copyright 2026 The rudd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rudd/pulse.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace rudd {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_angle(double a, double b) { return std::abs(a - b) <= 1e-12 * b; }

// Bracket of the amplitude, i.e. τ_p·v at normalized time s.
double bracket(double theta, const PulseCoefficients& k, double s) {
  const double w = 2.0 * kPi * s;
  return 0.5 * theta + (k.a - 0.5 * theta) * std::cos(w) + (k.b - k.a) * std::cos(2.0 * w) +
         (k.c - k.b) * std::cos(3.0 * w) - k.c * std::cos(4.0 * w);
}

double peak_bracket(const PulseShape& shape) {
  if (shape.waveform() == PulseShape::Waveform::constant) return 0.5 * shape.theta();
  double peak = 0.0;
  for (int i = 0; i <= 2000; ++i) {
    peak = std::max(peak, std::abs(bracket(shape.theta(), shape.coefficients(), i / 2000.0)));
  }
  return peak;
}

struct Normalized {
  double e11, e12, e21, e22, e23;
};

EtaVector scaled(const Normalized& n, double tau) {
  return {tau * n.e11, tau * n.e12, tau * tau * n.e21, tau * tau * n.e22, tau * tau * n.e23};
}

// --- adaptive route -------------------------------------------------------------

// Running integrals S(s) = ∫₀ˢ sinψ, C(s) = ∫₀ˢ cosψ from panel prefix sums plus
// one Kronrod rule on the partial panel.
class RunningIntegrals {
 public:
  RunningIntegrals(const PulseShape& shape, int panels) : shape_(shape), panels_(panels) {
    sin_prefix_.assign(panels + 1, 0.0);
    cos_prefix_.assign(panels + 1, 0.0);
    for (int k = 0; k < panels; ++k) {
      const double a = static_cast<double>(k) / panels;
      const double b = static_cast<double>(k + 1) / panels;
      sin_prefix_[k + 1] = sin_prefix_[k] + kronrod15([this](double s) { return std::sin(shape_.psi_normalized(s)); }, a, b);
      cos_prefix_[k + 1] = cos_prefix_[k] + kronrod15([this](double s) { return std::cos(shape_.psi_normalized(s)); }, a, b);
    }
  }

  std::pair<double, double> at(double s) const {
    const int k = std::clamp(static_cast<int>(s * panels_), 0, panels_ - 1);
    const double a = static_cast<double>(k) / panels_;
    double sv = sin_prefix_[k];
    double cv = cos_prefix_[k];
    if (s > a) {
      sv += kronrod15([this](double u) { return std::sin(shape_.psi_normalized(u)); }, a, s);
      cv += kronrod15([this](double u) { return std::cos(shape_.psi_normalized(u)); }, a, s);
    }
    return {sv, cv};
  }

 private:
  const PulseShape& shape_;
  int panels_;
  std::vector<double> sin_prefix_, cos_prefix_;
};

Normalized adaptive_normalized(const PulseShape& shape, double tol) {
  const auto psi = [&shape](double s) { return shape.psi_normalized(s); };
  const double part = 0.2 * tol;
  Normalized n{};
  n.e11 = quad([&](double s) { return std::sin(psi(s)); }, 0.0, 1.0, part).value;
  n.e12 = quad([&](double s) { return std::cos(psi(s)); }, 0.0, 1.0, part).value;
  n.e21 = quad([&](double s) { return s * std::sin(psi(s)); }, 0.0, 1.0, part).value;
  n.e22 = quad([&](double s) { return s * std::cos(psi(s)); }, 0.0, 1.0, part).value;
  // ψ' = 2·bracket; keep the phase advance per panel well below one radian.
  const int panels = std::clamp(static_cast<int>(std::ceil(8.0 * peak_bracket(shape))), 128, 16384);
  const RunningIntegrals running(shape, panels);
  n.e23 = 2.0 * quad(
                    [&](double s) {
                      const auto [sv, cv] = running.at(s);
                      const double p = psi(s);
                      return std::sin(p) * cv - std::cos(p) * sv;
                    },
                    0.0, 1.0, 0.5 * part)
                    .value;
  return n;
}

// --- fixed-rule route -------------------------------------------------------------

constexpr int kNodes = 16;
constexpr int kPanels = 64;

struct GaussRule {
  std::array<double, kNodes> x{};
  std::array<double, kNodes> w{};
  // q[i][j] = ∫_{-1}^{x_i} L_j, with L_j the Lagrange basis on the nodes.
  std::array<std::array<double, kNodes>, kNodes> q{};
};

GaussRule make_gauss_rule() {
  GaussRule r;
  for (int i = 0; i < kNodes; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (kNodes + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= kNodes; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = kNodes * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    r.x[i] = x;
    r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  auto lagrange = [&r](int j, double y) {
    double v = 1.0;
    for (int m = 0; m < kNodes; ++m) {
      if (m != j) v *= (y - r.x[m]) / (r.x[j] - r.x[m]);
    }
    return v;
  };
  for (int i = 0; i < kNodes; ++i) {
    const double half = 0.5 * (r.x[i] + 1.0);
    for (int j = 0; j < kNodes; ++j) {
      double sum = 0.0;
      for (int m = 0; m < kNodes; ++m) sum += r.w[m] * lagrange(j, -1.0 + half * (r.x[m] + 1.0));
      r.q[i][j] = half * sum;
    }
  }
  return r;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

Normalized fast_normalized(const PulseShape& shape) {
  const GaussRule& g = gauss_rule();
  const double h = 1.0 / kPanels;
  Normalized n{};
  double s_run = 0.0, c_run = 0.0;
  std::array<double, kNodes> sv{}, cv{};
  for (int p = 0; p < kPanels; ++p) {
    const double a = p * h;
    for (int i = 0; i < kNodes; ++i) {
      const double ps = shape.psi_normalized(a + 0.5 * h * (g.x[i] + 1.0));
      sv[i] = std::sin(ps);
      cv[i] = std::cos(ps);
    }
    double ps_sum = 0.0, pc_sum = 0.0;
    for (int i = 0; i < kNodes; ++i) {
      const double s = a + 0.5 * h * (g.x[i] + 1.0);
      const double wi = 0.5 * h * g.w[i];
      double si = s_run, ci = c_run;
      for (int j = 0; j < kNodes; ++j) {
        si += 0.5 * h * g.q[i][j] * sv[j];
        ci += 0.5 * h * g.q[i][j] * cv[j];
      }
      n.e11 += wi * sv[i];
      n.e12 += wi * cv[i];
      n.e21 += wi * s * sv[i];
      n.e22 += wi * s * cv[i];
      n.e23 += wi * (sv[i] * ci - cv[i] * si);
      ps_sum += wi * sv[i];
      pc_sum += wi * cv[i];
    }
    s_run += ps_sum;
    c_run += pc_sum;
  }
  n.e23 *= 2.0;
  return n;
}

}  // namespace

// --- PulseShape -----------------------------------------------------------------------

PulseShape::PulseShape(double theta, double tau, PulseCoefficients coeffs, Axis axis, Waveform waveform)
    : theta_(theta), tau_(tau), coeffs_(coeffs), axis_(axis), waveform_(waveform) {
  if (!(theta > 0.0) || !std::isfinite(theta)) throw InvalidArgument("PulseShape: theta must be positive");
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("PulseShape: tau_p must be positive");
  if (!std::isfinite(coeffs.a) || !std::isfinite(coeffs.b) || !std::isfinite(coeffs.c)) {
    throw InvalidArgument("PulseShape: coefficients must be finite");
  }
}

PulseShape PulseShape::shaped(double theta, double tau_p, PulseCoefficients coeffs, Axis axis) {
  return PulseShape(theta, tau_p, coeffs, axis, Waveform::shaped);
}

PulseShape PulseShape::constant(double theta, double tau_p, Axis axis) {
  return PulseShape(theta, tau_p, {}, axis, Waveform::constant);
}

PulseShape PulseShape::with_duration(double tau_p) const {
  return PulseShape(theta_, tau_p, coeffs_, axis_, waveform_);
}

PulseShape PulseShape::with_axis(Axis axis) const { return PulseShape(theta_, tau_, coeffs_, axis, waveform_); }

double PulseShape::psi_normalized(double s) const {
  if (waveform_ == Waveform::constant) return theta_ * s;
  const double w = 2.0 * kPi * s;
  const auto& k = coeffs_;
  return theta_ * s + (k.a - 0.5 * theta_) / kPi * std::sin(w) + (k.b - k.a) / (2.0 * kPi) * std::sin(2.0 * w) +
         (k.c - k.b) / (3.0 * kPi) * std::sin(3.0 * w) - k.c / (4.0 * kPi) * std::sin(4.0 * w);
}

namespace {
double normalized_time(double t, double tau) {
  if (!(t >= -1e-12 * tau) || !(t <= tau * (1.0 + 1e-12))) {
    std::ostringstream os;
    os << "pulse time " << t << " outside [0, " << tau << "]";
    throw InvalidArgument(os.str());
  }
  return std::clamp(t / tau, 0.0, 1.0);
}
}  // namespace

double PulseShape::amplitude(double t) const {
  const double s = normalized_time(t, tau_);
  if (waveform_ == Waveform::constant) return 0.5 * theta_ / tau_;
  return bracket(theta_, coeffs_, s) / tau_;
}

double PulseShape::psi(double t) const {
  const double s = normalized_time(t, tau_);
  if (s == 1.0) return theta_;
  return psi_normalized(s);
}

double PulseShape::peak_amplitude() const { return peak_bracket(*this) / tau_; }

PulseShape naive_pulse(double theta, double tau_p, Axis axis) { return PulseShape::constant(theta, tau_p, axis); }

PulseShape tabulated_pulse(double theta, double tau_p, Axis axis) {
  if (is_angle(theta, kPi)) return PulseShape::shaped(theta, tau_p, kTabulatedPi, axis);
  if (is_angle(theta, 2.0 * kPi)) return PulseShape::shaped(theta, tau_p, kTabulatedTwoPi, axis);
  throw InvalidArgument("tabulated_pulse: only pi and 2pi shapes are tabulated");
}

// --- η integrals ----------------------------------------------------------------------

double EtaVector::max_normalized(double tau_p) const {
  return std::max({std::abs(eta11) / tau_p, std::abs(eta12) / tau_p, std::abs(eta21) / (tau_p * tau_p),
                   std::abs(eta22) / (tau_p * tau_p), std::abs(eta23) / (tau_p * tau_p)});
}

EtaVector eta_integrals(const PulseShape& shape, double tol) {
  if (!(tol > 0.0)) throw InvalidArgument("eta_integrals: tolerance must be positive");
  return scaled(adaptive_normalized(shape, tol), shape.tau_p());
}

EtaVector eta_integrals_fast(const PulseShape& shape) { return scaled(fast_normalized(shape), shape.tau_p()); }

// --- solve_shape -----------------------------------------------------------------------

ShapeSolution solve_shape(double theta, double tau_p, Axis axis, const ShapeSolveOptions& opts) {
  const bool pi = is_angle(theta, kPi);
  if (!pi && !is_angle(theta, 2.0 * kPi)) throw InvalidArgument("solve_shape: theta must be pi or 2pi");
  if (!(tau_p > 0.0)) throw InvalidArgument("solve_shape: tau_p must be positive");

  const VectorFunction system = [theta, pi](const RealVector& x) {
    const Normalized n = fast_normalized(PulseShape::shaped(theta, 1.0, {x(0), x(1), x(2)}));
    RealVector r(3);
    if (pi) {
      r << n.e11, n.e22, n.e23;
    } else {
      r << n.e12, n.e21, n.e23;
    }
    return r;
  };

  RootOptions ro;
  ro.tol = 1e-2 * opts.tol;
  ro.max_iterations = 40;
  ro.divergence_bound = 100.0;
  const std::vector<RealVector> starts = grid_starts(3, opts.grid_lo, opts.grid_hi, opts.grid_step);

  ShapeSolution out{PulseShape::shaped(theta, tau_p, {}, axis), {}, {}};
  out.trace = solve_roots_multistart(system, starts, ro);

  std::vector<RealVector> distinct;
  for (const RootAttempt& a : out.trace) {
    if (!(a.residual <= opts.tol)) continue;
    const bool seen = std::any_of(distinct.begin(), distinct.end(), [&](const RealVector& d) {
      return (d - a.x).lpNorm<Eigen::Infinity>() <= opts.merge_distance;
    });
    if (!seen) distinct.push_back(a.x);
  }

  double best_peak = std::numeric_limits<double>::infinity();
  for (const RealVector& x : distinct) {
    PulseShape shape = PulseShape::shaped(theta, tau_p, {x(0), x(1), x(2)}, axis);
    if (eta_integrals(shape, 1e-2 * opts.tol).max_normalized(tau_p) > opts.tol) continue;
    const double peak = shape.peak_amplitude();
    if (peak < best_peak) {
      best_peak = peak;
      out.best = shape;
    }
    out.roots.push_back(std::move(shape));
  }

  if (out.roots.empty()) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : out.trace) best = std::min(best, a.residual);
    std::ostringstream os;
    os << "solve_shape: no root verified from " << out.trace.size() << " starts; best residual " << best;
    throw RootFindingError(os.str(), best, std::move(out.trace));
  }
  return out;
}

}  // namespace rudd
