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

#include <numbers>

#include <benchmark/benchmark.h>

#include "rudd/bath.hpp"
#include "rudd/channel.hpp"
#include "rudd/propagation.hpp"
#include "rudd/pulse.hpp"
#include "rudd/schedule.hpp"

using namespace rudd;

namespace {

constexpr double kPi = std::numbers::pi;

Bath bath_of(Index dim, BathKind kind = BathKind::dephasing, double gamma = 0.3) {
  BathSpec spec;
  spec.kind = kind;
  spec.dim_b = dim;
  spec.gamma = gamma;
  spec.seed = 1;
  return generate(spec);
}

void BM_Expm(benchmark::State& state) {
  const HermitianOperator h = hamiltonian(bath_of(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(expm(h, 0.7));
}
BENCHMARK(BM_Expm)->Arg(2)->Arg(4)->Arg(8)->Arg(16);

void BM_SpectralNorm(benchmark::State& state) {
  const ComplexMatrix m = hamiltonian(bath_of(state.range(0))).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(spectral_norm(m));
}
BENCHMARK(BM_SpectralNorm)->Arg(4)->Arg(16);

void BM_EtaAdaptive(benchmark::State& state) {
  const PulseShape p = tabulated_pulse(kPi, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(eta_integrals(p));
}
BENCHMARK(BM_EtaAdaptive);

void BM_EtaFast(benchmark::State& state) {
  const PulseShape p = tabulated_pulse(kPi, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(eta_integrals_fast(p));
}
BENCHMARK(BM_EtaFast);

void BM_PulsePropagator(benchmark::State& state) {
  const PulseShape p = tabulated_pulse(kPi, 0.1);
  const HermitianOperator h = hamiltonian(bath_of(4, BathKind::general));
  PropagateOptions opts;
  opts.tol = state.range(0) == 0 ? 1e-12 : 1e-14;
  for (auto _ : state) benchmark::DoNotOptimize(pulse_propagator(p, h, opts));
}
BENCHMARK(BM_PulsePropagator)->Arg(0)->Arg(1);

void BM_ShapedRuddChannelError(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Schedule s = rudd_schedule(n, 1.0, ThetaPulseWidth::fraction_of_bound(0.5, n));
  const Bath b = bath_of(4);
  const auto shapes = pulse_train(s, PulseFamily::shaped);
  const ComplexMatrix target = ideal_rotation(s);
  for (auto _ : state) {
    const UnitaryMatrix u = full_propagator(s, shapes, b);
    benchmark::DoNotOptimize(spin_channel_error(u, target, maximally_mixed_state(4)));
  }
}
BENCHMARK(BM_ShapedRuddChannelError)->Arg(1)->Arg(3)->Arg(6)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
