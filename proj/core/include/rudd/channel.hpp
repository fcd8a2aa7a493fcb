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

#include "rudd/numerics.hpp"
#include "rudd/schedule.hpp"

namespace rudd {

struct ChannelError {
  double epsilon = 0.0;
  ComplexMatrix target;  ///< 2×2 ideal rotation the channel is compared with
};

/// 1/dim on the diagonal.
ComplexMatrix maximally_mixed_state(Index dim);
/// |v⟩⟨v| for a Haar-random v drawn from `seed`.
ComplexMatrix random_pure_state(Index dim, std::uint64_t seed);

/// E(ρ_S) = Tr_B[U(ρ_S ⊗ ρ_B)U†] for U on spin ⊗ bath (spin index major).
ComplexMatrix reduced_spin_state(const UnitaryMatrix& u, const ComplexMatrix& rho_s, const ComplexMatrix& rho_b);

/// max over the six cardinal spin states of ½‖E(ρ) − RρR†‖₁.
ChannelError spin_channel_error(const UnitaryMatrix& u, const ComplexMatrix& target, const ComplexMatrix& rho_b);

/// Target (π rotation about `axis`)^N with a maximally mixed bath.
ChannelError spin_channel_error(const UnitaryMatrix& u, int n, Axis axis);

}  // namespace rudd
