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

#include "rudd/bath.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace rudd {

std::string_view to_string(BathKind kind) {
  switch (kind) {
    case BathKind::dephasing: return "dephasing";
    case BathKind::general: return "general";
    case BathKind::static_scalar: return "static-scalar";
  }
  return "?";
}

BathKind parse_bath_kind(std::string_view name) {
  if (name == "dephasing") return BathKind::dephasing;
  if (name == "general") return BathKind::general;
  if (name == "static-scalar") return BathKind::static_scalar;
  throw InvalidArgument("unknown bath kind '" + std::string(name) + "'");
}

namespace {

// ‖A0‖ + ‖A1‖ + … ≤ γ, with slack for the rescaling round-off.
void check_budget(std::initializer_list<const HermitianOperator*> ops, double gamma) {
  if (!(gamma >= 0.0) || !std::isfinite(gamma)) {
    throw InvalidArgument("bath: gamma must be finite and non-negative");
  }
  const Index dim = (*ops.begin())->dim();
  double total = 0.0;
  for (const HermitianOperator* op : ops) {
    if (op->dim() != dim) throw InvalidArgument("bath: operator dimensions differ");
    total += spectral_norm(op->matrix());
  }
  if (total > gamma * (1.0 + 1e-12) + 1e-300) {
    std::ostringstream os;
    os << "bath: operator norms sum to " << total << " which exceeds gamma = " << gamma;
    throw InvalidArgument(os.str());
  }
}

class NormalSource {
 public:
  explicit NormalSource(std::uint64_t seed) : engine_(seed) {}

  double next() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    do {
      u1 = uniform();
    } while (u1 == 0.0);
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
  }

 private:
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

HermitianOperator random_hermitian(NormalSource& rng, Index dim, double target_norm) {
  ComplexMatrix g(dim, dim);
  for (Index j = 0; j < dim; ++j) {
    for (Index i = 0; i < dim; ++i) {
      const double re = rng.next();
      const double im = rng.next();
      g(i, j) = Complex(re, im);
    }
  }
  ComplexMatrix h = 0.5 * (g + g.adjoint());
  if (target_norm == 0.0) return HermitianOperator::zero(dim);
  h *= target_norm / spectral_norm(h);
  return HermitianOperator::symmetrized(h);
}

std::vector<double> resolve_weights(const BathSpec& spec, std::size_t count) {
  if (spec.weights.empty()) return std::vector<double>(count, 1.0 / static_cast<double>(count));
  if (spec.weights.size() != count) {
    std::ostringstream os;
    os << "bath: " << to_string(spec.kind) << " needs " << count << " weights, got "
       << spec.weights.size();
    throw InvalidArgument(os.str());
  }
  double sum = 0.0;
  for (double w : spec.weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidArgument("bath: weights must be non-negative");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "bath: weights must sum to 1, got " << sum;
    throw InvalidArgument(os.str());
  }
  return spec.weights;
}

void check_spec(const BathSpec& spec) {
  if (spec.dim_b < 1) throw InvalidArgument("bath: dim_B must be at least 1");
  if (!(spec.gamma >= 0.0) || !std::isfinite(spec.gamma)) {
    throw InvalidArgument("bath: gamma must be finite and non-negative");
  }
}

}  // namespace

DephasingBath::DephasingBath(HermitianOperator a0, HermitianOperator a1, double gamma)
    : a0_(std::move(a0)), a1_(std::move(a1)), gamma_(gamma) {
  check_budget({&a0_, &a1_}, gamma_);
}

GeneralBath::GeneralBath(HermitianOperator a0, HermitianOperator ax, HermitianOperator ay,
                         HermitianOperator az, double gamma)
    : a0_(std::move(a0)), ax_(std::move(ax)), ay_(std::move(ay)), az_(std::move(az)), gamma_(gamma) {
  check_budget({&a0_, &ax_, &ay_, &az_}, gamma_);
}

DephasingBath generate_dephasing(const BathSpec& spec) {
  check_spec(spec);
  if (spec.kind == BathKind::general) throw InvalidArgument("bath: spec describes a general bath");
  const std::vector<double> w = resolve_weights(spec, 2);
  if (spec.kind == BathKind::static_scalar) {
    return DephasingBath(HermitianOperator::identity(spec.dim_b, w[0] * spec.gamma),
                         HermitianOperator::identity(spec.dim_b, w[1] * spec.gamma), spec.gamma);
  }
  NormalSource rng(spec.seed);
  HermitianOperator a0 = random_hermitian(rng, spec.dim_b, w[0] * spec.gamma);
  HermitianOperator a1 = random_hermitian(rng, spec.dim_b, w[1] * spec.gamma);
  return DephasingBath(std::move(a0), std::move(a1), spec.gamma);
}

GeneralBath generate_general(const BathSpec& spec) {
  check_spec(spec);
  if (spec.kind != BathKind::general) throw InvalidArgument("bath: spec does not describe a general bath");
  const std::vector<double> w = resolve_weights(spec, 4);
  NormalSource rng(spec.seed);
  HermitianOperator a0 = random_hermitian(rng, spec.dim_b, w[0] * spec.gamma);
  HermitianOperator ax = random_hermitian(rng, spec.dim_b, w[1] * spec.gamma);
  HermitianOperator ay = random_hermitian(rng, spec.dim_b, w[2] * spec.gamma);
  HermitianOperator az = random_hermitian(rng, spec.dim_b, w[3] * spec.gamma);
  return GeneralBath(std::move(a0), std::move(ax), std::move(ay), std::move(az), spec.gamma);
}

Bath generate(const BathSpec& spec) {
  if (spec.kind == BathKind::general) return generate_general(spec);
  return generate_dephasing(spec);
}

DephasingBath scale(const DephasingBath& bath, double factor) {
  if (!(factor >= 0.0) || !std::isfinite(factor)) throw InvalidArgument("scale: factor must be non-negative");
  return DephasingBath(bath.a0() * factor, bath.a1() * factor, bath.gamma() * factor);
}

GeneralBath scale(const GeneralBath& bath, double factor) {
  if (!(factor >= 0.0) || !std::isfinite(factor)) throw InvalidArgument("scale: factor must be non-negative");
  return GeneralBath(bath.a0() * factor, bath.ax() * factor, bath.ay() * factor, bath.az() * factor,
                     bath.gamma() * factor);
}

Bath scale(const Bath& bath, double factor) {
  return std::visit([factor](const auto& b) -> Bath { return scale(b, factor); }, bath);
}

GeneralBath as_general(const DephasingBath& bath) {
  const Index d = bath.dim_b();
  return GeneralBath(bath.a0(), HermitianOperator::zero(d), HermitianOperator::zero(d), bath.a1(),
                     bath.gamma());
}

Index dim_b(const Bath& bath) {
  return std::visit([](const auto& b) { return b.dim_b(); }, bath);
}

double gamma(const Bath& bath) {
  return std::visit([](const auto& b) { return b.gamma(); }, bath);
}

const ComplexMatrix& pauli_i() {
  static const ComplexMatrix m = ComplexMatrix::Identity(2, 2);
  return m;
}

const ComplexMatrix& pauli_x() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(0, 1) = 1.0;
    s(1, 0) = 1.0;
    return s;
  }();
  return m;
}

const ComplexMatrix& pauli_y() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(0, 1) = Complex(0.0, -1.0);
    s(1, 0) = Complex(0.0, 1.0);
    return s;
  }();
  return m;
}

const ComplexMatrix& pauli_z() {
  static const ComplexMatrix m = [] {
    ComplexMatrix s = ComplexMatrix::Zero(2, 2);
    s(0, 0) = 1.0;
    s(1, 1) = -1.0;
    return s;
  }();
  return m;
}

HermitianOperator hamiltonian(const DephasingBath& bath) {
  return HermitianOperator::symmetrized(kron(pauli_i(), bath.a0().matrix()) +
                                        kron(pauli_z(), bath.a1().matrix()));
}

HermitianOperator hamiltonian(const GeneralBath& bath) {
  return HermitianOperator::symmetrized(
      kron(pauli_i(), bath.a0().matrix()) + kron(pauli_x(), bath.ax().matrix()) +
      kron(pauli_y(), bath.ay().matrix()) + kron(pauli_z(), bath.az().matrix()));
}

HermitianOperator hamiltonian(const Bath& bath) {
  return std::visit([](const auto& b) { return hamiltonian(b); }, bath);
}

}  // namespace rudd
