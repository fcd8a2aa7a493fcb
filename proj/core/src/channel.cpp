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

#include "rudd/channel.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <random>

namespace rudd {

namespace {

std::array<ComplexMatrix, 6> cardinal_states() {
  const double h = 1.0 / std::sqrt(2.0);
  const std::array<Eigen::Vector2cd, 6> kets = {
      Eigen::Vector2cd(1.0, 0.0),
      Eigen::Vector2cd(0.0, 1.0),
      Eigen::Vector2cd(h, h),
      Eigen::Vector2cd(h, -h),
      Eigen::Vector2cd(Complex(h, 0.0), Complex(0.0, h)),
      Eigen::Vector2cd(Complex(h, 0.0), Complex(0.0, -h)),
  };
  std::array<ComplexMatrix, 6> out;
  for (std::size_t i = 0; i < kets.size(); ++i) out[i] = kets[i] * kets[i].adjoint();
  return out;
}

// ½‖A‖₁ for a Hermitian 2×2 matrix.
double half_trace_norm(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (a + a.adjoint()), Eigen::EigenvaluesOnly);
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace

ComplexMatrix maximally_mixed_state(Index dim) {
  if (dim < 1) throw InvalidArgument("maximally_mixed_state: dimension must be positive");
  return ComplexMatrix::Identity(dim, dim) / static_cast<double>(dim);
}

ComplexMatrix random_pure_state(Index dim, std::uint64_t seed) {
  if (dim < 1) throw InvalidArgument("random_pure_state: dimension must be positive");
  std::mt19937_64 engine(seed);
  const auto uniform = [&engine] { return (static_cast<double>(engine() >> 11) + 0.5) * 0x1.0p-53; };
  Eigen::VectorXcd v(dim);
  for (Index i = 0; i < dim; ++i) {
    const double r = std::sqrt(-2.0 * std::log(uniform()));
    const double phi = 2.0 * std::numbers::pi * uniform();
    v(i) = Complex(r * std::cos(phi), r * std::sin(phi));
  }
  v.normalize();
  return v * v.adjoint();
}

ComplexMatrix reduced_spin_state(const UnitaryMatrix& u, const ComplexMatrix& rho_s, const ComplexMatrix& rho_b) {
  const Index d = rho_b.rows();
  if (u.dim() != 2 * d || rho_s.rows() != 2 || rho_s.cols() != 2 || rho_b.cols() != d) {
    throw InvalidArgument("reduced_spin_state: dimensions of U, rho_S and rho_B do not match");
  }
  const ComplexMatrix out = u.matrix() * kron(rho_s, rho_b) * u.matrix().adjoint();
  ComplexMatrix red(2, 2);
  for (Index i = 0; i < 2; ++i) {
    for (Index j = 0; j < 2; ++j) red(i, j) = out.block(i * d, j * d, d, d).trace();
  }
  return red;
}

ChannelError spin_channel_error(const UnitaryMatrix& u, const ComplexMatrix& target, const ComplexMatrix& rho_b) {
  if (target.rows() != 2 || target.cols() != 2) throw InvalidArgument("spin_channel_error: target must be 2x2");
  double eps = 0.0;
  for (const ComplexMatrix& rho : cardinal_states()) {
    const ComplexMatrix diff = reduced_spin_state(u, rho, rho_b) - target * rho * target.adjoint();
    eps = std::max(eps, half_trace_norm(diff));
  }
  return {eps, target};
}

ChannelError spin_channel_error(const UnitaryMatrix& u, int n, Axis axis) {
  if (n < 0) throw InvalidArgument("spin_channel_error: N must be non-negative");
  if (u.dim() % 2 != 0) throw InvalidArgument("spin_channel_error: expected a spin ⊗ bath unitary");
  ComplexMatrix target = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix r = rotation(axis, std::numbers::pi);
  for (int i = 0; i < n; ++i) target = r * target;
  return spin_channel_error(u, target, maximally_mixed_state(u.dim() / 2));
}

}  // namespace rudd
