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

#include "bimodal/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace bimodal {
namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r\n");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r\n");
  return s.substr(begin, end - begin + 1);
}

}  // namespace

KeyValueConfig KeyValueConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  return parse(in);
}

KeyValueConfig KeyValueConfig::parse(std::istream& in) {
  KeyValueConfig cfg;
  std::string line;
  while (std::getline(in, line)) {
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config line without '=': " + line);
    }
    cfg.entries_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return cfg;
}

bool KeyValueConfig::has(const std::string& key) const {
  return entries_.count(key) > 0;
}

const std::string& KeyValueConfig::get(const std::string& key) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) {
    throw std::runtime_error("missing config key: " + key);
  }
  return it->second;
}

double KeyValueConfig::get_real(const std::string& key) const {
  return std::stod(get(key));
}
double KeyValueConfig::get_real(const std::string& key, double fallback) const {
  return has(key) ? get_real(key) : fallback;
}
std::int64_t KeyValueConfig::get_int(const std::string& key) const {
  return std::stoll(get(key));
}
std::int64_t KeyValueConfig::get_int(const std::string& key,
                                     std::int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}
std::uint64_t KeyValueConfig::get_uint(const std::string& key) const {
  return std::stoull(get(key));
}
std::uint64_t KeyValueConfig::get_uint(const std::string& key,
                                       std::uint64_t fallback) const {
  return has(key) ? get_uint(key) : fallback;
}

Interval KeyValueConfig::get_interval(const std::string& key) const {
  const std::string& raw = get(key);
  const auto comma = raw.find(',');
  if (comma == std::string::npos) {
    throw std::runtime_error("interval value must be \"lo,hi\": " + raw);
  }
  return Interval{std::stod(trim(raw.substr(0, comma))),
                  std::stod(trim(raw.substr(comma + 1)))};
}

void KeyValueConfig::set(const std::string& key, const std::string& value) {
  entries_[key] = value;
}
void KeyValueConfig::set_real(const std::string& key, double value) {
  std::ostringstream os;
  os.precision(17);
  os << value;
  entries_[key] = os.str();
}
void KeyValueConfig::set_int(const std::string& key, std::int64_t value) {
  entries_[key] = std::to_string(value);
}
void KeyValueConfig::set_uint(const std::string& key, std::uint64_t value) {
  entries_[key] = std::to_string(value);
}
void KeyValueConfig::set_interval(const std::string& key,
                                  const Interval& value) {
  std::ostringstream os;
  os.precision(17);
  os << value.lo << ',' << value.hi;
  entries_[key] = os.str();
}

void KeyValueConfig::write(std::ostream& out) const {
  for (const auto& [key, value] : entries_) {
    out << key << " = " << value << '\n';
  }
}

void KeyValueConfig::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write config file: " + path);
  write(out);
}

BimodalSpec spec_from_config(const KeyValueConfig& cfg) {
  return BimodalSpec(cfg.get_real("a"), cfg.get_real("b"),
                     cfg.get_real("eps"), cfg.get_real("p1"),
                     cfg.get_real("p2"));
}

void spec_to_config(const BimodalSpec& spec, KeyValueConfig& cfg) {
  cfg.set_real("a", spec.a);
  cfg.set_real("b", spec.b);
  cfg.set_real("eps", spec.eps);
  cfg.set_real("p1", spec.p1);
  cfg.set_real("p2", spec.p2);
}

MixtureSampler sampler_from_config(const KeyValueConfig& cfg) {
  return MixtureSampler(static_cast<int>(cfg.get_int("n")), cfg.get_real("p"),
                        cfg.get_interval("low"), cfg.get_interval("high"),
                        cfg.get_uint("seed"));
}

void sampler_to_config(const MixtureSampler& sampler, KeyValueConfig& cfg) {
  cfg.set_int("n", sampler.n);
  cfg.set_real("p", sampler.p);
  cfg.set_interval("low", sampler.low);
  cfg.set_interval("high", sampler.high);
  cfg.set_uint("seed", sampler.seed);
}

}  // namespace bimodal
