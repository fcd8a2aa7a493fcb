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

#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "rudd/error.hpp"

namespace rudd {

using Complex = std::complex<double>;
using Index = Eigen::Index;

/// Dense complex matrix, column-major (Eigen default storage order).
using ComplexMatrix = Eigen::MatrixXcd;
using RealVector = Eigen::VectorXd;

/// Square matrix with ‖M − M†‖ ≤ 1e-12·‖M‖ in spectral norm.
class HermitianOperator {
 public:
  HermitianOperator() = default;

  /// Validates shape, finiteness and Hermiticity.
  static HermitianOperator from_matrix(ComplexMatrix m);
  /// Returns (m + m†)/2 without checking; for generators that are Hermitian by
  /// construction up to rounding.
  static HermitianOperator symmetrized(const ComplexMatrix& m);
  static HermitianOperator zero(Index dim);
  static HermitianOperator identity(Index dim, double scale = 1.0);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

  HermitianOperator operator+(const HermitianOperator& o) const;
  HermitianOperator operator-(const HermitianOperator& o) const;
  HermitianOperator operator*(double s) const;

 private:
  explicit HermitianOperator(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

inline HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

/// Square matrix with ‖U†U − 1‖ ≤ 1e-10.
class UnitaryMatrix {
 public:
  UnitaryMatrix() = default;

  static UnitaryMatrix from_matrix(ComplexMatrix m);
  /// Skips the unitarity check. Only for products and exponentials of
  /// matrices that are unitary by construction.
  static UnitaryMatrix assume_unitary(ComplexMatrix m) { return UnitaryMatrix(std::move(m)); }
  static UnitaryMatrix identity(Index dim);

  Index dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }
  UnitaryMatrix adjoint() const { return UnitaryMatrix(m_.adjoint()); }
  /// ‖U†U − 1‖ in spectral norm.
  double unitarity_defect() const;

  UnitaryMatrix operator*(const UnitaryMatrix& o) const { return UnitaryMatrix(m_ * o.m_); }

 private:
  explicit UnitaryMatrix(ComplexMatrix m) : m_(std::move(m)) {}
  ComplexMatrix m_;
};

// ---------------------------------------------------------------------------
// Matrix functions
// ---------------------------------------------------------------------------

/// exp(−i t H) via Hermitian eigendecomposition. Relative error is at the
/// level of the eigensolver, well below 1e-12 for the dimensions used here.
UnitaryMatrix expm(const HermitianOperator& h, double t);
/// Same, for a raw matrix; rejects non-square or non-Hermitian input.
UnitaryMatrix expm(const ComplexMatrix& h, double t);

/// Eigendecomposition of a Hermitian generator, reusable for many durations.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const HermitianOperator& h);
  /// exp(−i t H).
  ComplexMatrix evolve(double t) const;
  Index dim() const { return vectors_.rows(); }

 private:
  RealVector values_;
  ComplexMatrix vectors_;
};

/// Largest singular value. Rejects empty and non-finite matrices.
double spectral_norm(const ComplexMatrix& m);

/// Kronecker product a ⊗ b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

struct QuadResult {
  double value = 0.0;
  double abs_error = 0.0;
  int intervals = 0;
};

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
/// Throws ConvergenceError (carrying the best estimate) when `tol` cannot be
/// met within `max_intervals` subdivisions.
QuadResult quad(const std::function<double(double)>& f, double a, double b, double tol,
                int max_intervals = 4000);

/// Single 15-point Kronrod rule over [a, b]; no error control.
double kronrod15(const std::function<double(double)>& f, double a, double b);

// ---------------------------------------------------------------------------
// Root finding
// ---------------------------------------------------------------------------

using VectorFunction = std::function<RealVector(const RealVector&)>;

struct RootOptions {
  double tol = 1e-10;          ///< on ‖f(x)‖∞
  int max_iterations = 60;
  double fd_step = 1e-7;       ///< relative central-difference step
  double divergence_bound = 1e6;  ///< abandon a start once ‖x‖∞ exceeds this
};

struct RootAttempt {
  RealVector start;
  RealVector x;
  double residual = 0.0;
  int iterations = 0;
  bool converged = false;
};

struct RootResult {
  RealVector x;
  double residual = 0.0;
  int iterations = 0;
  std::vector<RootAttempt> trace;
};

/// Thrown when no start converges. Carries the best residual seen and every
/// attempt made.
class RootFindingError : public ConvergenceError {
 public:
  RootFindingError(const std::string& what, double best_residual, std::vector<RootAttempt> trace)
      : ConvergenceError(what, best_residual, best_residual), trace_(std::move(trace)) {}
  const std::vector<RootAttempt>& trace() const { return trace_; }

 private:
  std::vector<RootAttempt> trace_;
};

/// Damped Newton iteration with a central finite-difference Jacobian and
/// backtracking on ‖f‖₂, started from a single point.
RootAttempt newton_attempt(const VectorFunction& f, const RealVector& x0, const RootOptions& opts);

/// Newton from x0; when that fails, tries each point of `fallback_starts` in
/// order and returns the first converged root.
RootResult solve_roots(const VectorFunction& f, const RealVector& x0, const RootOptions& opts = {},
                       std::span<const RealVector> fallback_starts = {});

/// Runs Newton from every start and returns all attempts (converged or not).
std::vector<RootAttempt> solve_roots_multistart(const VectorFunction& f,
                                                std::span<const RealVector> starts,
                                                const RootOptions& opts = {});

/// Regular grid over the box [lo, hi]^dim with the given step.
std::vector<RealVector> grid_starts(int dim, double lo, double hi, double step);

// ---------------------------------------------------------------------------
// Power-law fitting
// ---------------------------------------------------------------------------

struct LogLogFit {
  double slope = 0.0;
  double intercept = 0.0;  ///< natural log of the prefactor
  double r2 = 0.0;
};

/// Least-squares line through (log x, log y). Needs ≥ 3 points, strictly
/// increasing positive x and positive y.
LogLogFit fit_loglog(std::span<const std::pair<double, double>> points);

}  // namespace rudd
