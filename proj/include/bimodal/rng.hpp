#pragma once
//------------------------------------------------------------------------------
//
//   Copyright 2026 The bimodal-auctions Authors
//
//   Licensed under the Apache License, Version 2.0 (the "License");
//   you may not use this file except in compliance with the License.
//   You may obtain a copy of the License at
//
//       http://www.apache.org/licenses/LICENSE-2.0
//
//   Unless required by applicable law or agreed to in writing, software
//   distributed under the License is distributed on an "AS IS" BASIS,
//   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
//   See the License for the specific language governing permissions and
//   limitations under the License.
//
//------------------------------------------------------------------------------

#include <cstdint>

namespace bimodal::rng {

/// splitmix64 finalizer; full-avalanche 64-bit mixer.
constexpr std::uint64_t mix_bits(std::uint64_t z) noexcept {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Counter-based generator: every word is a pure function of
/// (seed, stream, index), so any draw can be addressed directly and
/// concurrent use needs no shared state.
constexpr std::uint64_t word_at(std::uint64_t seed, std::uint64_t stream,
                                std::uint64_t index) noexcept {
  std::uint64_t z = mix_bits(seed + 0x9e3779b97f4a7c15ULL);
  z = mix_bits(z ^ (stream + 0xd1b54a32d192ed03ULL));
  z = mix_bits(z ^ (index + 0x8cb92ba72f3d8dd7ULL));
  return z;
}

/// Uniform on [0,1) with 53-bit resolution.
constexpr double uniform01(std::uint64_t seed, std::uint64_t stream,
                           std::uint64_t index) noexcept {
  return static_cast<double>(word_at(seed, stream, index) >> 11) * 0x1.0p-53;
}

/// Derives an independent sub-seed (grid cells, tuning phases, scenarios).
constexpr std::uint64_t derive(std::uint64_t seed, std::uint64_t salt) noexcept {
  return word_at(seed, 0x5eedf00dULL, salt);
}

}  // namespace bimodal::rng
