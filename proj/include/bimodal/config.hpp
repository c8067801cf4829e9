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
#include <iosfwd>
#include <map>
#include <string>

#include "bimodal/prior.hpp"

namespace bimodal {

/// Flat key-value configuration file: one `key = value` per line, `#`
/// comments, intervals written as "lo,hi".
class KeyValueConfig {
 public:
  KeyValueConfig() = default;

  static KeyValueConfig load(const std::string& path);
  static KeyValueConfig parse(std::istream& in);

  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;

  double get_real(const std::string& key) const;
  double get_real(const std::string& key, double fallback) const;
  std::int64_t get_int(const std::string& key) const;
  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  std::uint64_t get_uint(const std::string& key) const;
  std::uint64_t get_uint(const std::string& key, std::uint64_t fallback) const;
  Interval get_interval(const std::string& key) const;

  void set(const std::string& key, const std::string& value);
  void set_real(const std::string& key, double value);
  void set_int(const std::string& key, std::int64_t value);
  void set_uint(const std::string& key, std::uint64_t value);
  void set_interval(const std::string& key, const Interval& value);

  void write(std::ostream& out) const;
  void save(const std::string& path) const;

 private:
  std::map<std::string, std::string> entries_;
};

/// Prior from keys a, b, eps, p1, p2.
BimodalSpec spec_from_config(const KeyValueConfig& cfg);
void spec_to_config(const BimodalSpec& spec, KeyValueConfig& cfg);

/// Sampler from keys n, p, low, high, seed.
MixtureSampler sampler_from_config(const KeyValueConfig& cfg);
void sampler_to_config(const MixtureSampler& sampler, KeyValueConfig& cfg);

}  // namespace bimodal
