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
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

#include "gapcirc/bitstring.hpp"

namespace gapcirc {

/// Classical memory addressed by a QramLoad gate. Absent addresses read as all-zero.
class DataTable {
 public:
  DataTable() = default;
  DataTable(std::string table_id, std::size_t address_width, std::size_t data_width)
      : table_id_(std::move(table_id)), address_width_(address_width), data_width_(data_width) {
    if (table_id_.empty()) throw std::invalid_argument("DataTable: empty table id");
    if (address_width_ == 0 || address_width_ > 32) {
      throw std::invalid_argument("DataTable: address width must be in [1, 32]");
    }
    if (data_width_ == 0 || data_width_ > 64) {
      throw std::invalid_argument("DataTable: data width must be in [1, 64]");
    }
  }

  void store(std::uint64_t address, BitString value) {
    if ((address >> address_width_) != 0) {
      throw std::invalid_argument("DataTable '" + table_id_ + "': address " + std::to_string(address) +
                                  " out of range");
    }
    if (value.width() != data_width_) {
      throw std::invalid_argument("DataTable '" + table_id_ + "': entry width " + std::to_string(value.width()) +
                                  " != data width " + std::to_string(data_width_));
    }
    entries_[address] = std::move(value);
  }

  /// Stored word at `address`, or 0^d when nothing is stored there.
  BitString lookup(std::uint64_t address) const {
    auto it = entries_.find(address);
    return it == entries_.end() ? BitString(data_width_) : it->second;
  }

  std::uint64_t lookup_word(std::uint64_t address) const {
    auto it = entries_.find(address);
    return it == entries_.end() ? 0 : it->second.to_integer();
  }

  const std::string& table_id() const { return table_id_; }
  std::size_t address_width() const { return address_width_; }
  std::size_t data_width() const { return data_width_; }
  const std::map<std::uint64_t, BitString>& entries() const { return entries_; }

  friend bool operator==(const DataTable&, const DataTable&) = default;

 private:
  std::string table_id_;
  std::size_t address_width_ = 0;
  std::size_t data_width_ = 0;
  std::map<std::uint64_t, BitString> entries_;
};

}  // namespace gapcirc
