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

#include "rudd/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

namespace rudd {

namespace {

bool all_finite(const ComplexMatrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    }
  }
  return true;
}

void require_square(const ComplexMatrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
    throw InvalidArgument(os.str());
  }
}

}  // namespace

// --- HermitianOperator -------------------------------------------------------

HermitianOperator HermitianOperator::from_matrix(ComplexMatrix m) {
  require_square(m, "HermitianOperator");
  if (m.size() == 0) throw InvalidArgument("HermitianOperator: empty matrix");
  if (!all_finite(m)) throw InvalidArgument("HermitianOperator: non-finite entry");
  // Frobenius bounds the spectral norm from above, so only fall back to the
  // SVD when the cheap test is inconclusive.
  ComplexMatrix skew = m - m.adjoint();
  double scale = spectral_norm(m);
  double bound = 1e-12 * scale;
  if (skew.norm() > bound && spectral_norm(skew) > bound) {
    std::ostringstream os;
    os << "HermitianOperator: ‖M − M†‖ = " << spectral_norm(skew) << " exceeds 1e-12·‖M‖ = " << bound;
    throw InvalidArgument(os.str());
  }
  return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::symmetrized(const ComplexMatrix& m) {
  require_square(m, "HermitianOperator::symmetrized");
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  return HermitianOperator(std::move(h));
}

HermitianOperator HermitianOperator::zero(Index dim) {
  if (dim <= 0) throw InvalidArgument("HermitianOperator::zero: dimension must be positive");
  return HermitianOperator(ComplexMatrix::Zero(dim, dim));
}

HermitianOperator HermitianOperator::identity(Index dim, double scale) {
  if (dim <= 0) throw InvalidArgument("HermitianOperator::identity: dimension must be positive");
  return HermitianOperator(scale * ComplexMatrix::Identity(dim, dim));
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw InvalidArgument("HermitianOperator: dimension mismatch in +");
  return HermitianOperator(m_ + o.m_);
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
  if (dim() != o.dim()) throw InvalidArgument("HermitianOperator: dimension mismatch in -");
  return HermitianOperator(m_ - o.m_);
}

HermitianOperator HermitianOperator::operator*(double s) const { return HermitianOperator(s * m_); }

// --- UnitaryMatrix -----------------------------------------------------------

UnitaryMatrix UnitaryMatrix::from_matrix(ComplexMatrix m) {
  require_square(m, "UnitaryMatrix");
  if (m.size() == 0) throw InvalidArgument("UnitaryMatrix: empty matrix");
  if (!all_finite(m)) throw InvalidArgument("UnitaryMatrix: non-finite entry");
  UnitaryMatrix u(std::move(m));
  double defect = u.unitarity_defect();
  if (defect > 1e-10) {
    std::ostringstream os;
    os << "UnitaryMatrix: ‖U†U − 1‖ = " << defect << " exceeds 1e-10";
    throw InvalidArgument(os.str());
  }
  return u;
}

UnitaryMatrix UnitaryMatrix::identity(Index dim) {
  if (dim <= 0) throw InvalidArgument("UnitaryMatrix::identity: dimension must be positive");
  return UnitaryMatrix(ComplexMatrix::Identity(dim, dim));
}

double UnitaryMatrix::unitarity_defect() const {
  ComplexMatrix d = m_.adjoint() * m_ - ComplexMatrix::Identity(m_.rows(), m_.cols());
  return spectral_norm(d);
}

// --- matrix functions ----------------------------------------------------------

SpectralPropagator::SpectralPropagator(const HermitianOperator& h) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(h.matrix());
  if (solver.info() != Eigen::Success) throw Error("SpectralPropagator: eigensolver failed");
  values_ = solver.eigenvalues();
  vectors_ = solver.eigenvectors();
}

ComplexMatrix SpectralPropagator::evolve(double t) const {
  Eigen::VectorXcd phases(values_.size());
  for (Index k = 0; k < values_.size(); ++k) {
    phases(k) = std::polar(1.0, -t * values_(k));
  }
  return vectors_ * phases.asDiagonal() * vectors_.adjoint();
}

UnitaryMatrix expm(const HermitianOperator& h, double t) {
  if (!std::isfinite(t)) throw InvalidArgument("expm: non-finite duration");
  if (h.dim() == 0) throw InvalidArgument("expm: empty operator");
  return UnitaryMatrix::assume_unitary(SpectralPropagator(h).evolve(t));
}

UnitaryMatrix expm(const ComplexMatrix& h, double t) {
  return expm(HermitianOperator::from_matrix(h), t);
}

double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) throw InvalidArgument("spectral_norm: empty matrix");
  if (!all_finite(m)) throw InvalidArgument("spectral_norm: non-finite entry");
  if (m.rows() == 1 || m.cols() == 1) return m.norm();
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues()(0);
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// --- quadrature ----------------------------------------------------------------

namespace {

// Kronrod abscissae on [-1, 1] (positive half, descending) and weights;
// odd indices are the embedded 7-point Gauss nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a, b, value, error;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double sum = f(center - dx) + f(center + dx);
    kronrod += kWgk[j] * sum;
    if (j % 2 == 1) gauss += kWg[j / 2] * sum;
  }
  kronrod *= half;
  gauss *= half;
  return {a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

double kronrod15(const std::function<double(double)>& f, double a, double b) {
  return gk15(f, a, b).value;
}

QuadResult quad(const std::function<double(double)>& f, double a, double b, double tol,
                int max_intervals) {
  if (!(tol > 0.0)) throw InvalidArgument("quad: tolerance must be positive");
  if (!std::isfinite(a) || !std::isfinite(b)) throw InvalidArgument("quad: non-finite limits");
  if (a == b) return {0.0, 0.0, 0};

  std::priority_queue<Panel> heap;
  Panel first = gk15(f, a, b);
  double total = first.value;
  double error = first.error;
  heap.push(first);
  int intervals = 1;
  while (error > tol) {
    if (intervals >= max_intervals) {
      std::ostringstream os;
      os << "quad: tolerance " << tol << " not reached after " << intervals
         << " intervals (error estimate " << error << ")";
      throw ConvergenceError(os.str(), total, error);
    }
    Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      std::ostringstream os;
      os << "quad: interval [" << worst.a << ", " << worst.b << "] cannot be bisected further";
      throw ConvergenceError(os.str(), total, error);
    }
    heap.pop();
    Panel left = gk15(f, worst.a, mid);
    Panel right = gk15(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
    ++intervals;
    // Running sums drift; recompute once the estimate is close to done.
    if (error <= tol) {
      std::priority_queue<Panel> copy = heap;
      total = 0.0;
      error = 0.0;
      while (!copy.empty()) {
        total += copy.top().value;
        error += copy.top().error;
        copy.pop();
      }
    }
  }
  return {total, error, intervals};
}

// --- root finding --------------------------------------------------------------

namespace {

Eigen::MatrixXd fd_jacobian(const VectorFunction& f, const RealVector& x, Index m, double rel_step) {
  Eigen::MatrixXd jac(m, x.size());
  RealVector probe = x;
  for (Index j = 0; j < x.size(); ++j) {
    const double h = rel_step * std::max(1.0, std::abs(x(j)));
    probe(j) = x(j) + h;
    RealVector fp = f(probe);
    probe(j) = x(j) - h;
    RealVector fm = f(probe);
    probe(j) = x(j);
    jac.col(j) = (fp - fm) / (2.0 * h);
  }
  return jac;
}

}  // namespace

RootAttempt newton_attempt(const VectorFunction& f, const RealVector& x0, const RootOptions& opts) {
  RootAttempt attempt;
  attempt.start = x0;
  RealVector x = x0;
  RealVector fx = f(x);
  if (fx.size() != x.size()) {
    throw InvalidArgument("solve_roots: f must map R^k to R^k");
  }
  double res = fx.lpNorm<Eigen::Infinity>();
  int it = 0;
  while (res > opts.tol && it < opts.max_iterations && std::isfinite(res)) {
    ++it;
    Eigen::MatrixXd jac = fd_jacobian(f, x, fx.size(), opts.fd_step);
    RealVector step = jac.colPivHouseholderQr().solve(-fx);
    if (!step.allFinite()) break;
    const double norm0 = fx.norm();
    double lambda = 1.0;
    bool accepted = false;
    while (lambda > 1e-6) {
      RealVector trial = x + lambda * step;
      RealVector ft = f(trial);
      if (ft.allFinite() && ft.norm() < (1.0 - 1e-4 * lambda) * norm0) {
        x = trial;
        fx = ft;
        accepted = true;
        break;
      }
      lambda *= 0.5;
    }
    if (!accepted) break;
    res = fx.lpNorm<Eigen::Infinity>();
    if (x.lpNorm<Eigen::Infinity>() > opts.divergence_bound) break;
  }
  attempt.x = x;
  attempt.residual = res;
  attempt.iterations = it;
  attempt.converged = std::isfinite(res) && res <= opts.tol;
  return attempt;
}

RootResult solve_roots(const VectorFunction& f, const RealVector& x0, const RootOptions& opts,
                       std::span<const RealVector> fallback_starts) {
  std::vector<RootAttempt> trace;
  trace.push_back(newton_attempt(f, x0, opts));
  if (!trace.back().converged) {
    for (const RealVector& s : fallback_starts) {
      trace.push_back(newton_attempt(f, s, opts));
      if (trace.back().converged) break;
    }
  }
  const RootAttempt& last = trace.back();
  if (last.converged) {
    return {last.x, last.residual, last.iterations, std::move(trace)};
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& a : trace) best = std::min(best, a.residual);
  std::ostringstream os;
  os << "solve_roots: no convergence from " << trace.size() << " start(s); best residual " << best;
  throw RootFindingError(os.str(), best, std::move(trace));
}

std::vector<RootAttempt> solve_roots_multistart(const VectorFunction& f,
                                                std::span<const RealVector> starts,
                                                const RootOptions& opts) {
  std::vector<RootAttempt> out;
  out.reserve(starts.size());
  for (const RealVector& s : starts) out.push_back(newton_attempt(f, s, opts));
  return out;
}

std::vector<RealVector> grid_starts(int dim, double lo, double hi, double step) {
  if (dim <= 0 || !(step > 0.0) || hi < lo) throw InvalidArgument("grid_starts: bad box");
  const int per_axis = static_cast<int>(std::floor((hi - lo) / step + 1e-9)) + 1;
  std::vector<RealVector> out;
  std::vector<int> idx(dim, 0);
  while (true) {
    RealVector p(dim);
    for (int d = 0; d < dim; ++d) p(d) = lo + step * idx[d];
    out.push_back(p);
    int d = dim - 1;
    while (d >= 0 && ++idx[d] == per_axis) idx[d--] = 0;
    if (d < 0) break;
  }
  return out;
}

// --- fitting -------------------------------------------------------------------

LogLogFit fit_loglog(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw InvalidArgument("fit_loglog: need at least 3 points");
  for (std::size_t i = 0; i < points.size(); ++i) {
    const auto [x, y] = points[i];
    if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
      throw InvalidArgument("fit_loglog: coordinates must be positive and finite");
    }
    if (i > 0 && !(x > points[i - 1].first)) {
      throw InvalidArgument("fit_loglog: x must be strictly increasing");
    }
  }
  const double n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : points) {
    mx += std::log(x);
    my += std::log(y);
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (const auto& [x, y] : points) {
    const double dx = std::log(x) - mx;
    const double dy = std::log(y) - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  LogLogFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0.0;
  for (const auto& [x, y] : points) {
    const double r = std::log(y) - (fit.intercept + fit.slope * std::log(x));
    ss_res += r * r;
  }
  fit.r2 = syy > 0.0 ? 1.0 - ss_res / syy : 1.0;
  return fit;
}

}  // namespace rudd
