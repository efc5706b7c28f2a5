#pragma once

#include <algorithm>
#include <compare>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "traceinv/errors.hpp"

namespace traceinv {

// Weakly decreasing sequence of positive integers; the empty partition is ().
class Partition {
 public:
  Partition() = default;

  explicit Partition(std::vector<int> rows) : rows_(std::move(rows)) {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (rows_[i] <= 0) throw domain_error("partition rows must be positive");
      if (i > 0 && rows_[i] > rows_[i - 1]) throw domain_error("partition rows must be weakly decreasing");
    }
  }

  // Sorts and drops zeros, for callers assembling multisets of cycle lengths.
  static Partition from_unsorted(std::vector<int> rows) {
    std::erase(rows, 0);
    std::sort(rows.begin(), rows.end(), std::greater<>());
    return Partition(std::move(rows));
  }

  const std::vector<int>& rows() const { return rows_; }
  int size() const { return std::accumulate(rows_.begin(), rows_.end(), 0); }
  int row_count() const { return static_cast<int>(rows_.size()); }
  bool empty() const { return rows_.empty(); }
  int row(int i) const { return i < row_count() ? rows_[i] : 0; }

  Partition transpose() const {
    std::vector<int> cols;
    if (!rows_.empty()) {
      cols.resize(rows_[0]);
      for (int c = 0; c < rows_[0]; ++c)
        for (int r : rows_) cols[c] += (r > c) ? 1 : 0;
    }
    return Partition(std::move(cols));
  }

  friend auto operator<=>(const Partition&, const Partition&) = default;

 private:
  std::vector<int> rows_;
};

// All partitions of n, first part descending then recursively so:
// (n), (n-1,1), ..., (1^n). Deterministic order used throughout.
inline std::vector<Partition> list_partitions(int n, std::optional<int> max_rows = std::nullopt) {
  if (n < 0) throw domain_error("list_partitions: n must be >= 0");
  std::vector<Partition> out;
  std::vector<int> cur;
  auto recurse = [&](auto&& self, int rest, int max_part) -> void {
    if (rest == 0) {
      out.emplace_back(Partition(cur));
      return;
    }
    if (max_rows && static_cast<int>(cur.size()) >= *max_rows) return;
    for (int part = std::min(rest, max_part); part >= 1; --part) {
      cur.push_back(part);
      self(self, rest - part, part);
      cur.pop_back();
    }
  };
  recurse(recurse, n, n);
  return out;
}

// Order of the centralizer of a permutation with this cycle type:
// prod_k k^{m_k} m_k! over multiplicities m_k of cycle length k.
inline long long partition_centralizer_order(const Partition& cycle_type) {
  long long z = 1;
  int run = 1;
  const auto& rows = cycle_type.rows();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    z *= rows[i];
    if (i + 1 < rows.size() && rows[i + 1] == rows[i]) {
      ++run;
      z *= run;
    } else {
      run = 1;
    }
  }
  return z;
}

}  // namespace traceinv
