/*
 * Copyright 2026 The polar3d Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>
#include <Eigen/Core>

#include "polar3d/assignment.h"
#include "polar3d/camera.h"
#include "polar3d/geometry.h"
#include "polar3d/sampling.h"

namespace polar3d {
namespace {

CostMatrix RandomCosts(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(0.0, 10.0);
  CostMatrix costs(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) costs(i, j) = dist(rng);
  }
  return costs;
}

void BM_Hungarian(benchmark::State& state) {
  const CostMatrix costs = RandomCosts(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(Hungarian(costs));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_Hungarian)->RangeMultiplier(2)->Range(4, 256)->Complexity();

void BM_BruteForceAssign(benchmark::State& state) {
  const CostMatrix costs = RandomCosts(static_cast<int>(state.range(0)), 2);
  for (auto _ : state) benchmark::DoNotOptimize(BruteForceAssign(costs));
}
BENCHMARK(BM_BruteForceAssign)->DenseRange(2, 7);

void BM_DecodeBox(benchmark::State& state) {
  const RangeConfig range;
  BoxEncoding enc;
  enc.r = 0.3;
  enc.sin_a = 0.4;
  enc.cos_a = -1.2;
  enc.z = -0.2;
  enc.l = 1.4;
  enc.w = 0.6;
  enc.h = 0.5;
  enc.sin_t = 2.0;
  enc.cos_t = 0.1;
  for (auto _ : state) benchmark::DoNotOptimize(DecodeBoxEncoding(enc, range));
}
BENCHMARK(BM_DecodeBox);

void BM_ProjectAllViews(benchmark::State& state) {
  const Rig rig = MakeDefaultRig();
  const Eigen::Vector3d point(12.0, 7.5, 0.9);
  for (auto _ : state) {
    for (int k = 0; k < rig.size(); ++k) {
      benchmark::DoNotOptimize(ProjectToView(point, rig.cameras[k], k));
    }
  }
}
BENCHMARK(BM_ProjectAllViews);

void BM_SampleCenterFeatures(benchmark::State& state) {
  const Rig rig = MakeDefaultRig();
  std::vector<FeatureMap> maps;
  for (int k = 0; k < rig.size(); ++k) {
    maps.push_back(FeatureMap::CoveringImage(rig.cameras[k].image_size,
                                             static_cast<int>(state.range(0)),
                                             16.0));
  }
  const Eigen::Vector3d point(12.0, 7.5, 0.9);
  for (auto _ : state) {
    benchmark::DoNotOptimize(SampleCenterFeatures(point, rig, maps));
  }
}
BENCHMARK(BM_SampleCenterFeatures)->Arg(64)->Arg(256);

}  // namespace
}  // namespace polar3d

BENCHMARK_MAIN();
