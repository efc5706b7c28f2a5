#pragma once

#include <cctype>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "traceinv/perm.hpp"
#include "traceinv/rational.hpp"
#include "traceinv/rng.hpp"
#include "traceinv/signature.hpp"

namespace traceinv {

// Dense tensor with `out_arity` upper and `in_arity` lower slots over a
// d-dimensional space; entries row-major, output slots first, all exact
// rationals.
class RationalTensor {
 public:
  RationalTensor() = default;

  RationalTensor(int out_arity, int in_arity, int dim, const Limits& limits = default_limits())
      : out_(out_arity), in_(in_arity), dim_(dim) {
    if (out_ < 0 || in_ < 0 || dim_ < 0) throw domain_error("tensor arities and dimension must be >= 0");
    unsigned long long count = 1;
    for (int s = 0; s < out_ + in_; ++s) {
      count *= static_cast<unsigned long long>(dim_);
      if (count > limits.tensor_entries) throw limit_error("tensor entry count exceeds limit");
    }
    entries_.assign(static_cast<std::size_t>(count), Rat(0));
  }

  static RationalTensor identity(int dim) {
    RationalTensor t(1, 1, dim);
    for (int i = 0; i < dim; ++i) t.entries_[static_cast<std::size_t>(i) * dim + i] = 1;
    return t;
  }

  static RationalTensor scalar(const Rat& value) {
    RationalTensor t(0, 0, 1);
    t.entries_[0] = value;
    return t;
  }

  int out_arity() const { return out_; }
  int in_arity() const { return in_; }
  int dim() const { return dim_; }
  std::size_t entry_count() const { return entries_.size(); }
  const Rat& entry(std::size_t linear) const { return entries_[linear]; }
  Rat& entry(std::size_t linear) { return entries_[linear]; }

  std::size_t linear_index(std::span<const int> out_idx, std::span<const int> in_idx) const {
    std::size_t lin = 0;
    for (int v : out_idx) lin = lin * dim_ + static_cast<std::size_t>(v);
    for (int v : in_idx) lin = lin * dim_ + static_cast<std::size_t>(v);
    return lin;
  }

  const Rat& at(std::span<const int> out_idx, std::span<const int> in_idx) const {
    return entries_[linear_index(out_idx, in_idx)];
  }
  Rat& at(std::span<const int> out_idx, std::span<const int> in_idx) {
    return entries_[linear_index(out_idx, in_idx)];
  }

  bool is_zero() const {
    for (const Rat& e : entries_)
      if (e != 0) return false;
    return true;
  }

  friend bool operator==(const RationalTensor& a, const RationalTensor& b) {
    return a.out_ == b.out_ && a.in_ == b.in_ && a.dim_ == b.dim_ && a.entries_ == b.entries_;
  }

 private:
  int out_ = 0, in_ = 0, dim_ = 0;
  std::vector<Rat> entries_;
};

namespace detail {

// Odometer over [0,dim)^slots; returns false when exhausted.
inline bool advance_multi_index(std::vector<int>& idx, int dim) {
  for (int pos = static_cast<int>(idx.size()) - 1; pos >= 0; --pos) {
    if (++idx[pos] < dim) return true;
    idx[pos] = 0;
  }
  return false;
}

}  // namespace detail

inline RationalTensor tensor_product(const RationalTensor& a, const RationalTensor& b,
                                     const Limits& limits = default_limits()) {
  if (a.dim() != b.dim()) throw domain_error("tensor_product: dimension mismatch");
  RationalTensor out(a.out_arity() + b.out_arity(), a.in_arity() + b.in_arity(), a.dim(), limits);
  if (a.dim() == 0) return out;
  std::vector<int> oa(a.out_arity(), 0), ob(b.out_arity(), 0), ia(a.in_arity(), 0), ib(b.in_arity(), 0);
  std::vector<int> full_out(out.out_arity()), full_in(out.in_arity());
  // Iterate all index tuples of the product; slots concatenate a-first.
  std::vector<int> idx(out.out_arity() + out.in_arity(), 0);
  do {
    for (int s = 0; s < a.out_arity(); ++s) oa[s] = idx[s];
    for (int s = 0; s < b.out_arity(); ++s) ob[s] = idx[a.out_arity() + s];
    for (int s = 0; s < a.in_arity(); ++s) ia[s] = idx[out.out_arity() + s];
    for (int s = 0; s < b.in_arity(); ++s) ib[s] = idx[out.out_arity() + a.in_arity() + s];
    for (int s = 0; s < out.out_arity(); ++s) full_out[s] = idx[s];
    for (int s = 0; s < out.in_arity(); ++s) full_in[s] = idx[out.out_arity() + s];
    out.at(full_out, full_in) = a.at(oa, ia) * b.at(ob, ib);
  } while (detail::advance_multi_index(idx, a.dim()));
  return out;
}

enum class Side { Out, In };

// Slot permutation: composing with the permutation operator on the chosen
// side.  On outputs the result reads entry [A o sigma; B]; on inputs it reads
// [A; B o sigma^{-1}], matching operator composition on either side.
inline RationalTensor apply_perm(const RationalTensor& t, const Perm& sigma, Side side,
                                 const Limits& limits = default_limits()) {
  if (side == Side::Out && sigma.degree() != t.out_arity())
    throw domain_error("apply_perm: degree != out arity");
  if (side == Side::In && sigma.degree() != t.in_arity()) throw domain_error("apply_perm: degree != in arity");
  RationalTensor out(t.out_arity(), t.in_arity(), t.dim(), limits);
  if (t.dim() == 0) return out;
  std::vector<int> o(t.out_arity(), 0), i(t.in_arity(), 0), src_o(t.out_arity()), src_i(t.in_arity());
  std::vector<int> idx(t.out_arity() + t.in_arity(), 0);
  const Perm sigma_inv = sigma.inverse();
  do {
    for (int s = 0; s < t.out_arity(); ++s) o[s] = idx[s];
    for (int s = 0; s < t.in_arity(); ++s) i[s] = idx[t.out_arity() + s];
    if (side == Side::Out) {
      for (int s = 0; s < t.out_arity(); ++s) src_o[s] = o[sigma(s)];
      out.at(o, i) = t.at(src_o, i);
    } else {
      for (int s = 0; s < t.in_arity(); ++s) src_i[s] = i[sigma_inv(s)];
      out.at(o, i) = t.at(o, src_i);
    }
  } while (detail::advance_multi_index(idx, t.dim()));
  return out;
}

// Contracts the last j output slots against the last j input slots.
inline RationalTensor partial_trace(const RationalTensor& t, int j, const Limits& limits = default_limits()) {
  if (j < 0 || j > t.out_arity() || j > t.in_arity()) throw domain_error("partial_trace: j out of range");
  RationalTensor out(t.out_arity() - j, t.in_arity() - j, t.dim(), limits);
  if (t.dim() == 0) {
    if (j == 0) return t;
    return out;  // empty contraction over no values
  }
  std::vector<int> o(t.out_arity()), i(t.in_arity());
  std::vector<int> idx(out.out_arity() + out.in_arity(), 0);
  std::vector<int> contracted(j, 0);
  std::vector<int> out_o(out.out_arity()), out_i(out.in_arity());
  do {
    for (int s = 0; s < out.out_arity(); ++s) out_o[s] = idx[s];
    for (int s = 0; s < out.in_arity(); ++s) out_i[s] = idx[out.out_arity() + s];
    Rat sum = 0;
    std::fill(contracted.begin(), contracted.end(), 0);
    do {
      for (int s = 0; s < out.out_arity(); ++s) o[s] = out_o[s];
      for (int s = 0; s < j; ++s) o[out.out_arity() + s] = contracted[s];
      for (int s = 0; s < out.in_arity(); ++s) i[s] = out_i[s];
      for (int s = 0; s < j; ++s) i[out.in_arity() + s] = contracted[s];
      sum += t.at(o, i);
    } while (detail::advance_multi_index(contracted, t.dim()));
    out.at(out_o, out_i) = sum;
  } while (!idx.empty() && detail::advance_multi_index(idx, t.dim()));
  return out;
}

// A concrete model: a dimension and one tensor per signature slot.
struct Structure {
  TypeSignature signature;
  int dim = 0;
  std::vector<RationalTensor> tensors;

  Structure(TypeSignature sig, int d, std::vector<RationalTensor> ts)
      : signature(std::move(sig)), dim(d), tensors(std::move(ts)) {
    if (static_cast<int>(tensors.size()) != signature.arity())
      throw domain_error("structure: tensor count != signature arity");
    for (int i = 0; i < signature.arity(); ++i) {
      if (tensors[i].dim() != dim) throw domain_error("structure: tensor dimension mismatch");
      if (tensors[i].out_arity() != signature.out_arity(i) || tensors[i].in_arity() != signature.in_arity(i))
        throw domain_error("structure: tensor arity mismatch");
    }
  }
};

inline Structure zero_structure(const TypeSignature& sig, int dim, const Limits& limits = default_limits()) {
  std::vector<RationalTensor> ts;
  for (int i = 0; i < sig.arity(); ++i) ts.emplace_back(sig.out_arity(i), sig.in_arity(i), dim, limits);
  return Structure(sig, dim, std::move(ts));
}

// The one-dimensional structure with every tensor equal to 1.
inline Structure unit_structure(const TypeSignature& sig) {
  Structure s = zero_structure(sig, 1);
  for (auto& t : s.tensors) t.entry(0) = 1;
  return s;
}

inline Structure random_structure(const TypeSignature& sig, int dim, SeededRng& rng,
                                  const Limits& limits = default_limits()) {
  Structure s = zero_structure(sig, dim, limits);
  for (auto& t : s.tensors)
    for (std::size_t e = 0; e < t.entry_count(); ++e) t.entry(e) = make_rat(rng.uniform(-5, 5));
  return s;
}

// Block direct sum: each tensor lands in W1^{p,q} + W2^{p,q}; mixed index
// blocks vanish.
inline Structure direct_sum(const Structure& s1, const Structure& s2, const Limits& limits = default_limits()) {
  if (s1.signature != s2.signature) throw domain_error("direct_sum: signature mismatch");
  const int d = s1.dim + s2.dim;
  Structure out = zero_structure(s1.signature, d, limits);
  for (int i = 0; i < s1.signature.arity(); ++i) {
    const int p = s1.signature.out_arity(i), q = s1.signature.in_arity(i);
    if (p + q == 0) {  // scalar slots add
      out.tensors[i].entry(0) = s1.tensors[i].entry(0) + s2.tensors[i].entry(0);
      continue;
    }
    std::vector<int> idx(p + q, 0);
    std::vector<int> o(p), in(q), local(p + q);
    if (d == 0) continue;
    do {
      bool all_first = true, all_second = true;
      for (int s = 0; s < p + q; ++s) {
        if (idx[s] < s1.dim) all_second = false;
        else all_first = false;
      }
      for (int s = 0; s < p; ++s) o[s] = idx[s];
      for (int s = 0; s < q; ++s) in[s] = idx[p + s];
      if (all_first && s1.dim > 0) {
        for (int s = 0; s < p + q; ++s) local[s] = idx[s];
        out.tensors[i].at(o, in) =
            s1.tensors[i].at(std::span<const int>(local.data(), p), std::span<const int>(local.data() + p, q));
      } else if (all_second && s2.dim > 0) {
        for (int s = 0; s < p + q; ++s) local[s] = idx[s] - s1.dim;
        out.tensors[i].at(o, in) =
            s2.tensors[i].at(std::span<const int>(local.data(), p), std::span<const int>(local.data() + p, q));
      }
    } while (detail::advance_multi_index(idx, d));
  }
  return out;
}

// Slotwise Kronecker product; composite index u*d2 + v per slot.
inline Structure tensor_structures(const Structure& s1, const Structure& s2,
                                   const Limits& limits = default_limits()) {
  if (s1.signature != s2.signature) throw domain_error("tensor_structures: signature mismatch");
  const int d = s1.dim * s2.dim;
  Structure out = zero_structure(s1.signature, d, limits);
  for (int i = 0; i < s1.signature.arity(); ++i) {
    const int p = s1.signature.out_arity(i), q = s1.signature.in_arity(i);
    if (d == 0) continue;
    std::vector<int> idx(p + q, 0);
    std::vector<int> o(p), in(q), u(p + q), v(p + q);
    do {
      for (int s = 0; s < p + q; ++s) {
        u[s] = idx[s] / s2.dim;
        v[s] = idx[s] % s2.dim;
      }
      for (int s = 0; s < p; ++s) o[s] = idx[s];
      for (int s = 0; s < q; ++s) in[s] = idx[p + s];
      out.tensors[i].at(o, in) =
          s1.tensors[i].at(std::span<const int>(u.data(), p), std::span<const int>(u.data() + p, q)) *
          s2.tensors[i].at(std::span<const int>(v.data(), p), std::span<const int>(v.data() + p, q));
    } while (detail::advance_multi_index(idx, d));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Structure files: line oriented,
//   signature p1 q1 p2 q2 ...
//   dim d
//   tensor i            (1-based slot)
//   o1 ... op i1 ... iq value     (1-based indices; omitted entries are zero)
// ---------------------------------------------------------------------------

inline Structure read_structure(std::istream& is, const Limits& limits = default_limits()) {
  std::string line;
  std::vector<std::pair<int, int>> pairs;
  int dim = -1;
  std::vector<RationalTensor> tensors;
  std::vector<std::vector<bool>> seen;
  int current = -1;

  auto next_line = [&](std::string& out) {
    while (std::getline(is, out)) {
      const auto pos = out.find('#');
      if (pos != std::string::npos) out.erase(pos);
      bool blank = true;
      for (char c : out)
        if (!isspace(static_cast<unsigned char>(c))) blank = false;
      if (!blank) return true;
    }
    return false;
  };

  while (next_line(line)) {
    std::istringstream ss(line);
    std::string head;
    ss >> head;
    if (head == "signature") {
      int p, q;
      while (ss >> p) {
        if (!(ss >> q)) throw parse_error("signature line needs pairs of integers");
        pairs.emplace_back(p, q);
      }
      if (pairs.empty()) throw parse_error("empty signature");
    } else if (head == "dim") {
      if (!(ss >> dim) || dim < 0) throw parse_error("bad dim line");
      TypeSignature sig{pairs};
      for (int i = 0; i < sig.arity(); ++i) {
        tensors.emplace_back(sig.out_arity(i), sig.in_arity(i), dim, limits);
        seen.emplace_back(tensors.back().entry_count(), false);
      }
    } else if (head == "tensor") {
      int i;
      if (!(ss >> i) || i < 1 || i > static_cast<int>(tensors.size())) throw parse_error("bad tensor index");
      current = i - 1;
    } else {
      if (current < 0 || dim < 0) throw parse_error("entry before tensor/dim header");
      const int p = pairs[current].first, q = pairs[current].second;
      std::vector<int> o(p), in(q);
      std::istringstream entry(line);
      for (int s = 0; s < p; ++s) {
        if (!(entry >> o[s]) || o[s] < 1 || o[s] > dim) throw parse_error("bad output index");
        --o[s];
      }
      for (int s = 0; s < q; ++s) {
        if (!(entry >> in[s]) || in[s] < 1 || in[s] > dim) throw parse_error("bad input index");
        --in[s];
      }
      std::string value;
      if (!(entry >> value)) throw parse_error("missing entry value");
      const std::size_t lin = tensors[current].linear_index(o, in);
      if (seen[current][lin]) throw parse_error("duplicate tensor entry");
      seen[current][lin] = true;
      tensors[current].entry(lin) = rat_from_string(value);
    }
  }
  if (pairs.empty() || dim < 0) throw parse_error("structure file missing signature or dim");
  return Structure(TypeSignature{pairs}, dim, std::move(tensors));
}

inline void write_structure(std::ostream& os, const Structure& s) {
  os << "signature";
  for (auto [p, q] : s.signature.pairs()) os << ' ' << p << ' ' << q;
  os << "\ndim " << s.dim << "\n";
  for (int i = 0; i < s.signature.arity(); ++i) {
    os << "tensor " << (i + 1) << "\n";
    const int p = s.signature.out_arity(i), q = s.signature.in_arity(i);
    if (s.dim == 0) continue;
    std::vector<int> idx(p + q, 0);
    do {
      std::span<const int> o(idx.data(), p), in(idx.data() + p, q);
      const Rat& v = s.tensors[i].at(o, in);
      if (v != 0) {
        for (int x : idx) os << (x + 1) << ' ';
        os << rat_to_string(v) << "\n";
      }
    } while (detail::advance_multi_index(idx, s.dim));
  }
}

}  // namespace traceinv
