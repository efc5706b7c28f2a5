#pragma once

#include <optional>
#include <vector>

#include "traceinv/characters.hpp"
#include "traceinv/element.hpp"

namespace traceinv {

namespace detail {

inline bool balanced_degree(const TypeSignature& sig, const std::vector<int>& nd, int* n_out = nullptr) {
  if (static_cast<int>(nd.size()) != sig.arity()) throw domain_error("multidegree length != signature arity");
  int n = 0, n_in = 0;
  for (int i = 0; i < sig.arity(); ++i) {
    n += nd[i] * sig.out_arity(i);
    n_in += nd[i] * sig.in_arity(i);
  }
  if (n_out) *n_out = n;
  return n == n_in;
}

}  // namespace detail

// Graded dimension by orbit counting: the number of orbits of the relabeling
// action on wirings, via the averaged fixed-point count.  A wiring is fixed
// by g exactly when it conjugates A1(g) to A2(g), so the fixed count is the
// centralizer order when the two embeddings are conjugate and zero otherwise.
inline long long dim_burnside(const TypeSignature& sig, const std::vector<int>& nd,
                              const Limits& limits = default_limits()) {
  int n = 0;
  if (!detail::balanced_degree(sig, nd, &n)) return 0;
  if (n == 0) return 1;
  const auto& pairs = detail::action_pairs(sig, nd, 0, limits);
  Int total = 0;
  for (const auto& ap : pairs) {
    const Partition c1 = cycle_type(ap.a1);
    if (c1 == cycle_type(ap.a2)) total += static_cast<long>(partition_centralizer_order(c1));
  }
  const Int order(static_cast<unsigned long>(pairs.size()));
  if (total % order != 0) throw domain_error("orbit count is not integral");
  return Int(total / order).get_si();
}

namespace detail {

// Multiplicity vector over tuples rho of the pullback of S_lambda along the
// weighted embedding: sum over tuples (mu_{ij}), j up to the weight of slot i,
// of the iterated restriction coefficient times the closing Kronecker factor
// per slot.
inline long long side_multiplicity(const Partition& lambda, const std::vector<int>& weights,
                                   const std::vector<int>& nd, const std::vector<Partition>& rho) {
  const int r = static_cast<int>(nd.size());
  std::vector<std::vector<Partition>> choices;  // partitions of nd[i], reused per slot copy
  for (int i = 0; i < r; ++i) choices.push_back(list_partitions(nd[i]));

  // Odometer over all (mu_{ij}).
  std::vector<std::pair<int, int>> slots;  // (i, j)
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < weights[i]; ++j) slots.emplace_back(i, j);
  std::vector<int> idx(slots.size(), 0);

  long long total = 0;
  while (true) {
    std::vector<Partition> flat;
    flat.reserve(slots.size());
    for (std::size_t s = 0; s < slots.size(); ++s) flat.push_back(choices[slots[s].first][idx[s]]);
    long long term = iterated_lr(lambda, flat);
    if (term != 0) {
      for (int i = 0; i < r && term != 0; ++i) {
        std::vector<Partition> kron_args;
        for (std::size_t s = 0; s < slots.size(); ++s)
          if (slots[s].first == i) kron_args.push_back(flat[s]);
        kron_args.push_back(rho[i]);
        term *= kronecker(kron_args);
      }
      total += term;
    }
    std::size_t pos = 0;
    while (pos < slots.size()) {
      if (++idx[pos] < static_cast<int>(choices[slots[pos].first].size())) break;
      idx[pos] = 0;
      ++pos;
    }
    if (pos == slots.size()) break;
  }
  return total;
}

}  // namespace detail

// Graded dimension from the character-theoretic formula: a sum over
// partitions lambda of n (rows capped by max_rows when given) of products of
// iterated restriction coefficients and Kronecker coefficients, paired over a
// shared tuple rho of partitions of the multidegree entries.
inline long long dim_formula(const TypeSignature& sig, const std::vector<int>& nd,
                             std::optional<int> max_rows = std::nullopt) {
  int n = 0;
  if (!detail::balanced_degree(sig, nd, &n)) return 0;
  const int r = sig.arity();
  std::vector<int> wp(r), wq(r);
  for (int i = 0; i < r; ++i) {
    wp[i] = sig.out_arity(i);
    wq[i] = sig.in_arity(i);
  }

  std::vector<std::vector<Partition>> rho_choices;
  for (int i = 0; i < r; ++i) rho_choices.push_back(list_partitions(nd[i]));

  long long total = 0;
  for (const auto& lambda : list_partitions(n, max_rows)) {
    std::vector<int> idx(r, 0);
    while (true) {
      std::vector<Partition> rho;
      rho.reserve(r);
      for (int i = 0; i < r; ++i) rho.push_back(rho_choices[i][idx[i]]);
      const long long left = detail::side_multiplicity(lambda, wp, nd, rho);
      if (left != 0) total += left * detail::side_multiplicity(lambda, wq, nd, rho);
      int pos = 0;
      while (pos < r) {
        if (++idx[pos] < static_cast<int>(rho_choices[pos].size())) break;
        idx[pos] = 0;
        ++pos;
      }
      if (pos == r) break;
    }
  }
  return total;
}

// Graded dimension of the quotient by the kernel of evaluation in dimension
// d: the formula restricted to partitions with at most d rows.
inline long long quotient_dim(const TypeSignature& sig, const std::vector<int>& nd, int d) {
  return dim_formula(sig, nd, d);
}

// Spanning alternating-sum relations in one graded piece: for every pair of
// outer wirings, the signed sum over the embedded S_{d+1}.  Every element
// evaluates to zero on structures of dimension <= d.  Empty when n <= d.
inline std::vector<DiagramSum> id_generators(int d, const TypeSignature& sig, const std::vector<int>& nd,
                                             const Limits& limits = default_limits()) {
  int n = 0;
  if (!detail::balanced_degree(sig, nd, &n)) throw domain_error("id_generators: unbalanced multidegree");
  std::vector<DiagramSum> out;
  if (n <= d) return out;

  unsigned long long count = 1;
  for (int k = 2; k <= n; ++k) {
    count *= static_cast<unsigned long long>(k);
    if (count > limits.enumeration) throw limit_error("id_generators: S_n too large");
  }

  std::vector<Perm> sn;
  {
    std::vector<int> w(n);
    std::iota(w.begin(), w.end(), 0);
    do {
      sn.emplace_back(Perm(w));
    } while (std::next_permutation(w.begin(), w.end()));
  }
  // S_{d+1} embedded on the first d+1 points.
  std::vector<std::pair<Perm, int>> small;  // (embedded sigma, sign)
  {
    std::vector<int> w(d + 1);
    std::iota(w.begin(), w.end(), 0);
    do {
      std::vector<int> full(w.begin(), w.end());
      for (int i = d + 1; i < n; ++i) full.push_back(i);
      Perm sigma(std::move(full));
      const int sign = ((d + 1) - cycle_type(Perm(std::vector<int>(w))).row_count()) % 2 == 0 ? 1 : -1;
      small.emplace_back(std::move(sigma), sign);
    } while (std::next_permutation(w.begin(), w.end()));
  }

  std::set<std::vector<std::pair<DiagramKey, Rat>>> seen;
  for (const Perm& tau1 : sn)
    for (const Perm& tau2 : sn) {
      DiagramSum gen(sig);
      for (const auto& [sigma, sign] : small) {
        const ClosedDiagram term = canonicalize_closed(sig, nd, 0, compose(tau1, compose(sigma, tau2)), limits);
        gen.add_term(DiagramKey{term.multidegree(), term.sigma().word(), 0}, make_rat(sign));
      }
      if (gen.is_zero()) continue;
      // Sign-normalize on the leading key, then deduplicate.
      std::vector<std::pair<DiagramKey, Rat>> flat(gen.terms().begin(), gen.terms().end());
      if (flat.front().second < 0)
        for (auto& [k, c] : flat) c = -c;
      if (seen.insert(flat).second) {
        DiagramSum normalized(sig);
        for (const auto& [k, c] : flat) normalized.add_term(k, c);
        out.push_back(std::move(normalized));
      }
    }
  return out;
}

}  // namespace traceinv
