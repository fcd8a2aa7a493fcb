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

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rudd/numerics.hpp"

namespace rudd {

enum class BathKind { dephasing, general, static_scalar };

std::string_view to_string(BathKind kind);
BathKind parse_bath_kind(std::string_view name);

/// Recipe for a random bounded bath. `weights` are the spectral-norm shares of
/// γ per operator, in the order (A0, A1) for dephasing and static-scalar, or
/// (A0, Ax, Ay, Az) for general. Empty means an equal split.
struct BathSpec {
  BathKind kind = BathKind::dephasing;
  Index dim_b = 4;
  double gamma = 1.0;
  std::vector<double> weights;
  std::uint64_t seed = 0;
};

/// Pure dephasing bath: H = 1⊗A0 + σz⊗A1 with ‖A0‖ + ‖A1‖ ≤ γ.
class DephasingBath {
 public:
  DephasingBath(HermitianOperator a0, HermitianOperator a1, double gamma);

  Index dim_b() const { return a0_.dim(); }
  const HermitianOperator& a0() const { return a0_; }
  const HermitianOperator& a1() const { return a1_; }
  double gamma() const { return gamma_; }

 private:
  HermitianOperator a0_, a1_;
  double gamma_;
};

/// General decoherence: H = 1⊗A0 + σx⊗Ax + σy⊗Ay + σz⊗Az.
class GeneralBath {
 public:
  GeneralBath(HermitianOperator a0, HermitianOperator ax, HermitianOperator ay,
              HermitianOperator az, double gamma);

  Index dim_b() const { return a0_.dim(); }
  const HermitianOperator& a0() const { return a0_; }
  const HermitianOperator& ax() const { return ax_; }
  const HermitianOperator& ay() const { return ay_; }
  const HermitianOperator& az() const { return az_; }
  double gamma() const { return gamma_; }

 private:
  HermitianOperator a0_, ax_, ay_, az_;
  double gamma_;
};

using Bath = std::variant<DephasingBath, GeneralBath>;

/// Draws the bath described by `spec`. Each operator is (G + G†)/2 for a
/// complex Gaussian matrix G, rescaled to spectral norm weight·γ. Deviates
/// come from std::mt19937_64 seeded with `spec.seed` through a Box-Muller
/// transform on 53-bit uniforms, so results are bit-identical across
/// platforms. Static-scalar baths are multiples of the identity.
Bath generate(const BathSpec& spec);
DephasingBath generate_dephasing(const BathSpec& spec);
GeneralBath generate_general(const BathSpec& spec);

/// Multiplies every operator and γ by `factor` ≥ 0.
DephasingBath scale(const DephasingBath& bath, double factor);
GeneralBath scale(const GeneralBath& bath, double factor);
Bath scale(const Bath& bath, double factor);

/// Embeds a dephasing bath with Ax = Ay = 0, Az = A1.
GeneralBath as_general(const DephasingBath& bath);

Index dim_b(const Bath& bath);
double gamma(const Bath& bath);

/// Spin ⊗ bath Hamiltonian on the 2·dim_B space (spin index major).
HermitianOperator hamiltonian(const DephasingBath& bath);
HermitianOperator hamiltonian(const GeneralBath& bath);
HermitianOperator hamiltonian(const Bath& bath);

/// Pauli matrices and the 2×2 identity.
const ComplexMatrix& pauli_i();
const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();

}  // namespace rudd
