#pragma once

#include <compare>
#include <vector>

#include "traceinv/errors.hpp"

namespace traceinv {

// The fixed list ((p_1,q_1),...,(p_r,q_r)) of tensor arities: slot i of a
// structure holds a tensor with p_i outputs and q_i inputs.
class TypeSignature {
 public:
  TypeSignature() = default;

  explicit TypeSignature(std::vector<std::pair<int, int>> pairs) : pairs_(std::move(pairs)) {
    if (pairs_.empty()) throw domain_error("signature needs at least one slot");
    bool all_zero = true;
    for (auto [p, q] : pairs_) {
      if (p < 0 || q < 0) throw domain_error("signature arities must be >= 0");
      if (p != 0 || q != 0) all_zero = false;
    }
    if (all_zero) throw domain_error("signature cannot be all (0,0)");
  }

  int arity() const { return static_cast<int>(pairs_.size()); }
  int out_arity(int i) const { return pairs_[i].first; }
  int in_arity(int i) const { return pairs_[i].second; }
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

  friend auto operator<=>(const TypeSignature&, const TypeSignature&) = default;

 private:
  std::vector<std::pair<int, int>> pairs_;
};

}  // namespace traceinv
