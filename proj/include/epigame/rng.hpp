// Copyright 2026 The epigame Authors
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

#ifndef EPIGAME_RNG_HPP
#define EPIGAME_RNG_HPP

#include <cmath>
#include <cstdint>
#include <vector>

namespace epigame {

// splitmix64: tiny deterministic generator with identical output on every
// platform. Solver restarts and tests derive independent streams from
// (seed, stream index), so results do not depend on scheduling or on the
// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  static Rng stream(std::uint64_t seed, std::uint64_t index) {
    // decorrelate the per-index streams before use
    Rng r(seed ^ (0x9e3779b97f4a7c15ULL * (index + 1)));
    r.next_u64();
    r.next_u64();
    return r;
  }

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // uniform in [0, 1)
  double next_double() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  // uniform in [lo, hi)
  double next_double(double lo, double hi) {
    return lo + (hi - lo) * next_double();
  }

  // uniform integer in [0, n)
  std::uint64_t next_below(std::uint64_t n) { return next_u64() % n; }

  // Uniform point on the (m-1)-simplex (normalized exponentials).
  std::vector<double> next_simplex(int m) {
    std::vector<double> x(static_cast<std::size_t>(m));
    double sum = 0.0;
    for (double& xi : x) {
      double u = next_double();
      if (u < 1e-300) u = 1e-300;
      xi = -std::log(u);
      sum += xi;
    }
    for (double& xi : x) xi /= sum;
    return x;
  }

 private:
  std::uint64_t state_;
};

}  // namespace epigame

#endif  // EPIGAME_RNG_HPP
