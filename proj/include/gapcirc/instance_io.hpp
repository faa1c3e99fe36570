// Copyright 2026 The gapcirc Authors
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

#pragma once

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "gapcirc/instances.hpp"

namespace gapcirc {

inline constexpr const char* kInstanceSchema = "gapcirc-instance/1";

/// Uniform integer in [0, bound) from a 64-bit engine. Rejection sampling keeps the
/// sequence identical across standard libraries, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

inline std::int64_t uniform_in(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(uniform_below(rng, static_cast<std::uint64_t>(hi - lo) + 1));
}

inline OVInstance generate_ov(std::size_t n, std::size_t d, std::mt19937_64& rng) {
  if (n == 0 || d == 0) throw InstanceError("gen ov: n and d must be positive");
  OVInstance inst{n, d, {}, {}};
  for (auto* side : {&inst.u, &inst.v}) {
    for (std::size_t i = 0; i < n; ++i) {
      BitString b(d);
      for (std::size_t k = 0; k < d; ++k) b.set(k, uniform_below(rng, 2) != 0);
      side->push_back(b);
    }
  }
  return inst;
}

/// n distinct values drawn uniformly from [-U, U] (partial Fisher-Yates).
inline ThreeSumInstance generate_threesum(std::size_t n, std::int64_t U, std::mt19937_64& rng) {
  if (n == 0 || U < 1) throw InstanceError("gen threesum: need n >= 1 and U >= 1");
  const auto span = static_cast<std::uint64_t>(2 * U + 1);
  if (n > span) {
    throw InstanceError("gen threesum: " + std::to_string(n) + " distinct values cannot fit in [-" + std::to_string(U) +
                        ", " + std::to_string(U) + "]");
  }
  std::vector<std::int64_t> pool(span);
  for (std::uint64_t k = 0; k < span; ++k) pool[k] = static_cast<std::int64_t>(k) - U;
  ThreeSumInstance inst{n, U, {}};
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = i + uniform_below(rng, span - i);
    std::swap(pool[i], pool[j]);
    inst.S.push_back(pool[i]);
  }
  return inst;
}

/// Each edge present with probability 1/2, weight uniform in [-M, M].
inline NwtInstance generate_nwt(std::size_t n, std::int64_t M, std::mt19937_64& rng) {
  if (n == 0 || M < 0) throw InstanceError("gen nwt: need n >= 1 and M >= 0");
  NwtInstance inst{n, M, {}};
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t j = i + 1; j <= n; ++j) {
      if (uniform_below(rng, 2) == 0) continue;
      inst.edges.push_back({i, j, uniform_in(rng, -M, M)});
    }
  }
  return inst;
}

inline nlohmann::ordered_json instance_to_json(const Instance& inst, std::optional<std::uint64_t> seed = std::nullopt) {
  nlohmann::ordered_json j;
  j["schema"] = kInstanceSchema;
  j["problem"] = problem_name(problem_of(inst));
  std::visit(
      [&](const auto& i) {
        using T = std::decay_t<decltype(i)>;
        j["n"] = i.n;
        if constexpr (std::is_same_v<T, OVInstance>) {
          j["d"] = i.d;
          for (const char* key : {"u", "v"}) {
            const auto& side = std::string(key) == "u" ? i.u : i.v;
            auto arr = nlohmann::ordered_json::array();
            for (const auto& b : side) {
              auto bits = nlohmann::ordered_json::array();
              for (std::size_t k = 0; k < b.width(); ++k) bits.push_back(b[k] ? 1 : 0);
              arr.push_back(bits);
            }
            j[key] = arr;
          }
        } else if constexpr (std::is_same_v<T, ThreeSumInstance>) {
          j["U"] = i.U;
          j["S"] = i.S;
        } else {
          j["M"] = i.M;
          auto arr = nlohmann::ordered_json::array();
          for (const auto& e : i.edges) arr.push_back({e.i, e.j, e.w});
          j["edges"] = arr;
        }
      },
      inst);
  if (seed) j["seed"] = *seed;
  return j;
}

inline std::string instance_to_string(const Instance& inst, std::optional<std::uint64_t> seed = std::nullopt) {
  return instance_to_json(inst, seed).dump(2) + "\n";
}

namespace detail {

template <class T>
T field(const nlohmann::json& j, const char* key) {
  if (!j.contains(key)) throw InstanceError(std::string("instance file: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InstanceError(std::string("instance file: field '") + key + "' has the wrong type");
  }
}

}  // namespace detail

/// Parses and validates an instance document. Throws InstanceError on any schema or content problem.
inline Instance instance_from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw InstanceError("instance file: top level must be an object");
  const auto schema = detail::field<std::string>(j, "schema");
  if (schema != kInstanceSchema) throw InstanceError("instance file: unsupported schema '" + schema + "'");
  const Problem p = parse_problem(detail::field<std::string>(j, "problem"));
  Instance out;
  switch (p) {
    case Problem::ov: {
      OVInstance inst;
      inst.n = detail::field<std::size_t>(j, "n");
      inst.d = detail::field<std::size_t>(j, "d");
      for (const char* key : {"u", "v"}) {
        auto rows = detail::field<std::vector<std::vector<int>>>(j, key);
        auto& side = std::string(key) == "u" ? inst.u : inst.v;
        for (const auto& row : rows) {
          BitString b(row.size());
          for (std::size_t k = 0; k < row.size(); ++k) {
            if (row[k] != 0 && row[k] != 1) throw InstanceError("instance file: vector entries must be 0 or 1");
            b.set(k, row[k] == 1);
          }
          side.push_back(b);
        }
      }
      out = inst;
      break;
    }
    case Problem::threesum:
      out = ThreeSumInstance{detail::field<std::size_t>(j, "n"), detail::field<std::int64_t>(j, "U"),
                             detail::field<std::vector<std::int64_t>>(j, "S")};
      break;
    case Problem::nwt: {
      NwtInstance inst{detail::field<std::size_t>(j, "n"), detail::field<std::int64_t>(j, "M"), {}};
      for (const auto& e : detail::field<std::vector<std::vector<std::int64_t>>>(j, "edges")) {
        if (e.size() != 3 || e[0] < 1 || e[1] < 1) throw InstanceError("instance file: edges are [i, j, w] with i, j >= 1");
        inst.edges.push_back({static_cast<std::size_t>(e[0]), static_cast<std::size_t>(e[1]), e[2]});
      }
      out = inst;
      break;
    }
  }
  validate(out);
  return out;
}

inline Instance parse_instance(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InstanceError(std::string("instance file: malformed JSON: ") + e.what());
  }
  return instance_from_json(j);
}

inline Instance read_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InstanceError("cannot open instance file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_instance(buf.str());
}

}  // namespace gapcirc
