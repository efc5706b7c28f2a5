#pragma once

#include <set>
#include <vector>

#include "traceinv/element.hpp"
#include "traceinv/tensor.hpp"

namespace traceinv {

namespace detail {

// Per-box access plan for a diagram over a concrete structure.
struct EvalPlan {
  struct Box {
    const RationalTensor* tensor;  // null for an identity box
    int out_start, out_width;
    int in_start, in_width;
  };
  std::vector<Box> boxes;
};

inline EvalPlan make_plan(const TypeSignature& sig, const std::vector<int>& nd, int m, const Structure& s) {
  if (s.signature != sig) throw domain_error("evaluate: structure signature mismatch");
  const Layout lay = make_layout(sig, nd, m);
  EvalPlan plan;
  for (std::size_t b = 0; b < lay.box_type.size(); ++b) {
    const int type = lay.box_type[b];
    EvalPlan::Box box;
    box.tensor = (type == sig.arity()) ? nullptr : &s.tensors[type];
    box.out_start = lay.box_out_start[b];
    box.out_width = out_width(sig, type);
    box.in_start = lay.box_in_start[b];
    box.in_width = in_width(sig, type);
    plan.boxes.push_back(box);
  }
  return plan;
}

// Product of box entries under a full slot assignment.  `out_value(slot)` and
// `in_value(slot)` give the index carried by each output/input slot.
template <class OutF, class InF>
Rat plan_factor(const EvalPlan& plan, int dim, OutF&& out_value, InF&& in_value) {
  Rat product = 1;
  std::vector<int> idx;
  for (const auto& box : plan.boxes) {
    if (!box.tensor) {
      if (out_value(box.out_start) != in_value(box.in_start)) return Rat(0);
      continue;
    }
    idx.clear();
    std::size_t lin = 0;
    for (int s = 0; s < box.out_width; ++s) lin = lin * dim + out_value(box.out_start + s);
    for (int s = 0; s < box.in_width; ++s) lin = lin * dim + in_value(box.in_start + s);
    const Rat& e = box.tensor->entry(lin);
    if (e == 0) return Rat(0);
    product *= e;
  }
  return product;
}

}  // namespace detail

// Exact value of a closed diagram on a structure: sum over all assignments of
// the n strings, output slot o carrying the value of string sigma(o).
inline Rat evaluate_closed(const ClosedDiagram& d, const Structure& s, const Limits& limits = default_limits()) {
  const int n = d.n();
  if (n == 0) return Rat(1);
  if (s.dim == 0) return Rat(0);
  unsigned long long count = 1;
  for (int i = 0; i < n; ++i) {
    count *= static_cast<unsigned long long>(s.dim);
    if (count > limits.tensor_entries) throw limit_error("evaluation loop exceeds entry limit");
  }
  const auto plan = detail::make_plan(d.signature(), d.multidegree(), d.id_boxes(), s);
  const Perm& sigma = d.sigma();
  std::vector<int> wires(n, 0);
  Rat sum = 0;
  do {
    sum += detail::plan_factor(plan, s.dim, [&](int o) { return wires[sigma(o)]; },
                               [&](int i) { return wires[i]; });
  } while (detail::advance_multi_index(wires, s.dim));
  return sum;
}

inline Rat evaluate_key(const TypeSignature& sig, const DiagramKey& key, const Structure& s,
                        const Limits& limits = default_limits()) {
  const ClosedDiagram d = canonicalize_closed(sig, key.multidegree, 0, Perm(std::vector<int>(key.word)), limits);
  Rat value = evaluate_closed(d, s, limits);
  for (int i = 0; i < key.d_power; ++i) value *= s.dim;
  return value;
}

// Linear extension; for a fixed structure this is a ring homomorphism.
inline Rat evaluate_element(const DiagramSum& a, const Structure& s, const Limits& limits = default_limits()) {
  Rat sum = 0;
  for (const auto& [key, coeff] : a.terms()) sum += coeff * evaluate_key(a.signature(), key, s, limits);
  return sum;
}

// Realization of an open diagram: the tensor of its degree, with free outputs
// indexed first.  Free strings keep their indices; wires are summed out.
inline RationalTensor realize_open(const OpenDiagram& dg, const Structure& s,
                                   const Limits& limits = default_limits()) {
  if (s.signature != dg.signature()) throw domain_error("realize: structure signature mismatch");
  const int p = dg.out_degree(), q = dg.in_degree(), j = dg.wires();
  RationalTensor out(p, q, s.dim, limits);
  if (s.dim == 0) return out;
  const auto plan = detail::make_plan(dg.signature(), dg.multidegree(), dg.id_boxes(), s);
  const Perm& sigma = dg.sigma();
  const Perm tau_inv = dg.tau().inverse();

  std::vector<int> free_idx(p + q, 0);
  std::vector<int> wires(j, 0);
  do {
    std::span<const int> o_idx(free_idx.data(), p), i_idx(free_idx.data() + p, q);
    Rat sum = 0;
    std::fill(wires.begin(), wires.end(), 0);
    auto t_out_value = [&](int t) { return t < p ? free_idx[t] : wires[t - p]; };
    auto t_in_value = [&](int t) { return t < q ? free_idx[p + t] : wires[t - q]; };
    do {
      sum += detail::plan_factor(plan, s.dim, [&](int o) { return t_out_value(sigma(o)); },
                                 [&](int i) { return t_in_value(tau_inv(i)); });
    } while (detail::advance_multi_index(wires, s.dim));
    out.at(o_idx, i_idx) = sum;
  } while (!free_idx.empty() && detail::advance_multi_index(free_idx, s.dim));
  return out;
}

// All canonical identity-free diagrams of one box-degree, in key order: the
// monomial basis of the graded piece.
inline std::vector<ClosedDiagram> graded_basis(const TypeSignature& sig, const std::vector<int>& nd,
                                               const Limits& limits = default_limits()) {
  const auto lay = detail::make_layout(sig, nd, 0);
  if (lay.total_out != lay.total_in) return {};
  const int n = lay.total_out;
  unsigned long long perms = 1;
  for (int k = 2; k <= n; ++k) {
    perms *= static_cast<unsigned long long>(k);
    if (perms > limits.enumeration) throw limit_error("graded basis enumeration too large");
  }
  std::set<ClosedDiagram> basis;
  std::vector<int> word(n);
  std::iota(word.begin(), word.end(), 0);
  do {
    basis.insert(canonicalize_closed(sig, nd, 0, Perm(std::vector<int>(word)), limits));
  } while (std::next_permutation(word.begin(), word.end()));
  return {basis.begin(), basis.end()};
}

// Exact rank over the rationals of the evaluation matrix of the graded basis
// against `samples` seeded random structures of dimension d.  A certified
// lower bound for the graded dimension of the image; generically equal to it.
inline int evaluation_rank(const TypeSignature& sig, const std::vector<int>& nd, int d, int samples,
                           std::uint64_t seed, const Limits& limits = default_limits()) {
  const auto basis = graded_basis(sig, nd, limits);
  if (basis.empty()) return 0;
  SeededRng rng(seed);
  std::vector<std::vector<Rat>> matrix(basis.size(), std::vector<Rat>(samples));
  for (int col = 0; col < samples; ++col) {
    const Structure s = random_structure(sig, d, rng, limits);
    for (std::size_t row = 0; row < basis.size(); ++row) matrix[row][col] = evaluate_closed(basis[row], s, limits);
  }
  // Gaussian elimination, exact.
  int rank = 0;
  int lead = 0;
  for (std::size_t row = 0; row < matrix.size() && lead < samples; ++lead) {
    std::size_t pivot = row;
    while (pivot < matrix.size() && matrix[pivot][lead] == 0) ++pivot;
    if (pivot == matrix.size()) continue;
    std::swap(matrix[row], matrix[pivot]);
    const Rat inv = 1 / matrix[row][lead];
    for (int c = lead; c < samples; ++c) matrix[row][c] *= inv;
    for (std::size_t r = 0; r < matrix.size(); ++r) {
      if (r == row || matrix[r][lead] == 0) continue;
      const Rat f = matrix[r][lead];
      for (int c = lead; c < samples; ++c) matrix[r][c] -= f * matrix[row][c];
    }
    ++row;
    ++rank;
  }
  return rank;
}

}  // namespace traceinv
