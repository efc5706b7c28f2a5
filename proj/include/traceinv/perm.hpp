#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <vector>

#include "traceinv/errors.hpp"
#include "traceinv/partition.hpp"

namespace traceinv {

// Permutation of {0,...,n-1} in one-line notation: word()[i] = image of i.
// Textual I/O uses 1-based points; everything internal is 0-based.
class Perm {
 public:
  Perm() = default;

  explicit Perm(std::vector<int> word) : img_(std::move(word)) {
    std::vector<char> seen(img_.size(), 0);
    for (int v : img_) {
      if (v < 0 || v >= static_cast<int>(img_.size()) || seen[v]) throw domain_error("not a permutation word");
      seen[v] = 1;
    }
  }

  static Perm identity(int n) {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 0);
    return Perm(std::move(w));
  }

  int degree() const { return static_cast<int>(img_.size()); }
  int operator()(int i) const { return img_[i]; }
  const std::vector<int>& word() const { return img_; }
  bool is_identity() const {
    for (int i = 0; i < degree(); ++i)
      if (img_[i] != i) return false;
    return true;
  }

  Perm inverse() const {
    std::vector<int> w(img_.size());
    for (int i = 0; i < degree(); ++i) w[img_[i]] = i;
    return Perm(std::move(w));
  }

  friend auto operator<=>(const Perm&, const Perm&) = default;

 private:
  std::vector<int> img_;
};

// (a*b)(x) = a(b(x)).
inline Perm compose(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw domain_error("compose: degree mismatch");
  std::vector<int> w(a.degree());
  for (int i = 0; i < a.degree(); ++i) w[i] = a(b(i));
  return Perm(std::move(w));
}

inline Partition cycle_type(const Perm& a) {
  std::vector<char> seen(a.degree(), 0);
  std::vector<int> lengths;
  for (int i = 0; i < a.degree(); ++i) {
    if (seen[i]) continue;
    int len = 0;
    for (int j = i; !seen[j]; j = a(j)) {
      seen[j] = 1;
      ++len;
    }
    lengths.push_back(len);
  }
  return Partition::from_unsorted(std::move(lengths));
}

inline long long centralizer_order(const Perm& a) { return partition_centralizer_order(cycle_type(a)); }

// Sequence of non-negative block sizes (n_1,...,n_k); blocks tile [0, total).
class Composition {
 public:
  Composition() = default;

  explicit Composition(std::vector<int> parts) : parts_(std::move(parts)) {
    offsets_.reserve(parts_.size() + 1);
    offsets_.push_back(0);
    for (int p : parts_) {
      if (p < 0) throw domain_error("composition parts must be >= 0");
      offsets_.push_back(offsets_.back() + p);
    }
  }

  static Composition repeated(int part, int times) { return Composition(std::vector<int>(times, part)); }

  const std::vector<int>& parts() const { return parts_; }
  int count() const { return static_cast<int>(parts_.size()); }
  int part(int i) const { return parts_[i]; }
  int offset(int i) const { return offsets_[i]; }
  int total() const { return offsets_.back(); }

 private:
  std::vector<int> parts_;
  std::vector<int> offsets_;
};

// Embeds S_{n_1} x ... x S_{n_k} into S_n, factor i acting on block i.
inline Perm pi_embed(const Composition& blocks, const std::vector<Perm>& elems) {
  if (static_cast<int>(elems.size()) != blocks.count()) throw domain_error("pi_embed: arity mismatch");
  std::vector<int> w(blocks.total());
  for (int i = 0; i < blocks.count(); ++i) {
    if (elems[i].degree() != blocks.part(i)) throw domain_error("pi_embed: block degree mismatch");
    const int off = blocks.offset(i);
    for (int x = 0; x < blocks.part(i); ++x) w[off + x] = off + elems[i](x);
  }
  return Perm(std::move(w));
}

// The block shuffle: the unique permutation sending block contents to new
// positions so that blocks are ordered by s while the inner order of each
// block is preserved.  omega_block(x) = rank of x under the key
// (s(block of x), x).  A group homomorphism iff all parts are equal.
inline Perm omega_block(const Composition& blocks, const Perm& s) {
  if (s.degree() != blocks.count()) throw domain_error("omega_block: need s in S_{#blocks}");
  const int n = blocks.total();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<int> block_of(n);
  for (int i = 0; i < blocks.count(); ++i)
    for (int x = blocks.offset(i); x < blocks.offset(i) + blocks.part(i); ++x) block_of[x] = i;
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return s(block_of[x]) < s(block_of[y]); });
  std::vector<int> w(n);
  for (int rank = 0; rank < n; ++rank) w[order[rank]] = rank;
  return Perm(std::move(w));
}

// Composite embedding S_{(n_i)} -> S_n, n = sum n_i w_i: each factor first
// block-shuffles its w_i-wide slots, then the shuffles are placed side by
// side.  A group homomorphism in each slot.
inline Perm alpha_embed(const std::vector<int>& weights, const std::vector<int>& multidegree,
                        const std::vector<Perm>& elems) {
  if (weights.size() != multidegree.size() || weights.size() != elems.size())
    throw domain_error("alpha_embed: arity mismatch");
  std::vector<Perm> shuffled;
  std::vector<int> big_parts;
  shuffled.reserve(elems.size());
  big_parts.reserve(elems.size());
  for (std::size_t i = 0; i < elems.size(); ++i) {
    if (elems[i].degree() != multidegree[i]) throw domain_error("alpha_embed: factor degree mismatch");
    shuffled.push_back(omega_block(Composition::repeated(weights[i], multidegree[i]), elems[i]));
    big_parts.push_back(multidegree[i] * weights[i]);
  }
  return pi_embed(Composition(std::move(big_parts)), shuffled);
}

inline unsigned long long young_subgroup_order(const std::vector<int>& multidegree,
                                               unsigned long long cap) {
  unsigned long long order = 1;
  for (int n : multidegree)
    for (int k = 2; k <= n; ++k) {
      order *= static_cast<unsigned long long>(k);
      if (order > cap) return cap + 1;
    }
  return order;
}

// Enumerates S_{n_1} x ... x S_{n_r} lexicographically, each element once.
class YoungSubgroup {
 public:
  explicit YoungSubgroup(std::vector<int> multidegree, const Limits& limits = default_limits())
      : multidegree_(std::move(multidegree)) {
    if (young_subgroup_order(multidegree_, limits.enumeration) > limits.enumeration)
      throw limit_error("young subgroup too large to enumerate");
  }

  const std::vector<int>& multidegree() const { return multidegree_; }
  unsigned long long order() const { return young_subgroup_order(multidegree_, ~0ull); }

  class iterator {
   public:
    using value_type = std::vector<Perm>;
    using difference_type = std::ptrdiff_t;

    iterator() = default;  // end
    explicit iterator(const std::vector<int>& multidegree) {
      words_.reserve(multidegree.size());
      for (int n : multidegree) {
        std::vector<int> w(n);
        std::iota(w.begin(), w.end(), 0);
        words_.push_back(std::move(w));
      }
      done_ = false;
    }

    value_type operator*() const {
      value_type tuple;
      tuple.reserve(words_.size());
      for (const auto& w : words_) tuple.emplace_back(Perm(w));
      return tuple;
    }

    iterator& operator++() {
      for (auto it = words_.rbegin(); it != words_.rend(); ++it) {
        if (std::next_permutation(it->begin(), it->end())) return *this;
      }
      done_ = true;
      return *this;
    }

    bool operator==(const iterator& other) const {
      if (done_ != other.done_) return false;
      return done_ || words_ == other.words_;
    }

   private:
    std::vector<std::vector<int>> words_;
    bool done_ = true;
  };

  iterator begin() const { return iterator(multidegree_); }
  iterator end() const { return iterator(); }

 private:
  std::vector<int> multidegree_;
};

}  // namespace traceinv
