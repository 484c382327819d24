// Copyright 2026 The wsub Authors.
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

#include <algorithm>
#include <compare>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "wsub/common.hpp"

namespace wsub {

/// A set of feature indices, stored strictly increasing.
class Support {
 public:
  Support() = default;
  Support(std::initializer_list<Index> indices)
      : Support(from_unordered(std::vector<Index>(indices))) {}

  /// Requires strictly increasing, nonnegative indices.
  static Support from_sorted(std::vector<Index> indices) {
    for (std::size_t i = 0; i < indices.size(); ++i) {
      if (indices[i] < 0) throw ValidationError("negative support index");
      if (i > 0 && indices[i] <= indices[i - 1]) {
        throw ValidationError("support indices not strictly increasing");
      }
    }
    Support s;
    s.indices_ = std::move(indices);
    return s;
  }

  /// Sorts; duplicate indices are an error.
  static Support from_unordered(std::vector<Index> indices) {
    std::sort(indices.begin(), indices.end());
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end()) {
      throw ValidationError("duplicate support index");
    }
    return from_sorted(std::move(indices));
  }

  /// {begin, ..., end - 1}
  static Support range(Index begin, Index end) {
    Support s;
    for (Index i = begin; i < end; ++i) s.indices_.push_back(i);
    return s;
  }

  static Support from_mask(std::uint64_t mask) {
    Support s;
    for (Index i = 0; mask != 0; ++i, mask >>= 1) {
      if (mask & 1u) s.indices_.push_back(i);
    }
    return s;
  }

  Index size() const { return static_cast<Index>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  Index operator[](Index i) const { return indices_[static_cast<std::size_t>(i)]; }
  auto begin() const { return indices_.begin(); }
  auto end() const { return indices_.end(); }
  const std::vector<Index>& indices() const { return indices_; }

  bool contains(Index j) const {
    return std::binary_search(indices_.begin(), indices_.end(), j);
  }

  /// Position of j within the support, or -1.
  Index position(Index j) const {
    auto it = std::lower_bound(indices_.begin(), indices_.end(), j);
    if (it == indices_.end() || *it != j) return -1;
    return static_cast<Index>(it - indices_.begin());
  }

  Support with(Index j) const {
    Support s = *this;
    auto it = std::lower_bound(s.indices_.begin(), s.indices_.end(), j);
    if (it == s.indices_.end() || *it != j) s.indices_.insert(it, j);
    return s;
  }

  Support without(Index j) const {
    Support s = *this;
    auto it = std::lower_bound(s.indices_.begin(), s.indices_.end(), j);
    if (it != s.indices_.end() && *it == j) s.indices_.erase(it);
    return s;
  }

  Support unite(const Support& other) const {
    Support s;
    std::set_union(begin(), end(), other.begin(), other.end(),
                   std::back_inserter(s.indices_));
    return s;
  }

  Support minus(const Support& other) const {
    Support s;
    std::set_difference(begin(), end(), other.begin(), other.end(),
                        std::back_inserter(s.indices_));
    return s;
  }

  Support intersect(const Support& other) const {
    Support s;
    std::set_intersection(begin(), end(), other.begin(), other.end(),
                          std::back_inserter(s.indices_));
    return s;
  }

  bool disjoint(const Support& other) const { return intersect(other).empty(); }

  /// Every index < p.
  void validate_for(Index p) const {
    if (!indices_.empty() && indices_.back() >= p) {
      throw ValidationError("support index " + std::to_string(indices_.back()) +
                            " out of range for p=" + std::to_string(p));
    }
  }

  std::uint64_t mask() const {
    std::uint64_t m = 0;
    for (Index j : indices_) {
      if (j >= 64) throw GuardExceeded("support mask requires indices < 64");
      m |= std::uint64_t{1} << j;
    }
    return m;
  }

  std::string to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < indices_.size(); ++i) {
      if (i > 0) out += ",";
      out += std::to_string(indices_[i]);
    }
    return out + "}";
  }

  friend bool operator==(const Support&, const Support&) = default;
  friend auto operator<=>(const Support& a, const Support& b) {
    return a.indices_ <=> b.indices_;
  }

 private:
  std::vector<Index> indices_;
};

}  // namespace wsub
