// vlcsee - energy-efficient artificial-noise design for VLC physical-layer security
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VLCSEE_RNG_HPP
#define VLCSEE_RNG_HPP

#include <cstdint>
#include <random>

namespace vlcsee {

/// splitmix64 step, used to derive independent per-realization seeds.
inline uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline uint64_t mix_seed(uint64_t base, uint64_t a, uint64_t b) {
    uint64_t s = base;
    splitmix64(s);
    s ^= 0x632be59bd9b4e019ULL * (a + 1);
    splitmix64(s);
    s ^= 0x9e3779b97f4a7c15ULL * (b + 1);
    return splitmix64(s);
}

/// mt19937_64 with an explicit bits-to-double mapping, so streams replay
/// bit-exactly regardless of the standard library's distribution choices.
class Rng {
  public:
    explicit Rng(uint64_t seed) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  private:
    std::mt19937_64 gen_;
};

}  // namespace vlcsee

#endif  // VLCSEE_RNG_HPP
