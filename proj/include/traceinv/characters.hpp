#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "traceinv/partition.hpp"
#include "traceinv/rational.hpp"

namespace traceinv {

// Number of standard Young tableaux of shape lambda (hook length formula).
inline long long specht_dimension(const Partition& lambda) {
  const int n = lambda.size();
  if (n == 0) return 1;
  const Partition t = lambda.transpose();
  Int num = factorial(n);
  Int den = 1;
  for (int i = 0; i < lambda.row_count(); ++i)
    for (int j = 0; j < lambda.rows()[i]; ++j) den *= lambda.rows()[i] - j + t.rows()[j] - i - 1;
  Int d = num / den;
  return d.get_si();
}

namespace detail {

// Murnaghan-Nakayama on beta-sets: a rim hook of length k is the move
// b -> b-k on one beta number, legal when the target is free; its sign is
// (-1)^(number of beta numbers jumped over).
inline long long mn_character(const std::vector<int>& betas, const Partition& mu, int mu_from,
                              std::map<std::pair<std::vector<int>, std::vector<int>>, long long>& memo) {
  if (mu_from == mu.row_count()) return 1;
  std::vector<int> mu_rest(mu.rows().begin() + mu_from, mu.rows().end());
  const auto key = std::make_pair(betas, mu_rest);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const int k = mu.rows()[mu_from];
  long long total = 0;
  for (std::size_t i = 0; i < betas.size(); ++i) {
    const int target = betas[i] - k;
    if (target < 0) continue;
    bool occupied = false;
    int crossings = 0;
    for (std::size_t j = 0; j < betas.size(); ++j) {
      if (j == i) continue;
      if (betas[j] == target) occupied = true;
      if (betas[j] > target && betas[j] < betas[i]) ++crossings;
    }
    if (occupied) continue;
    std::vector<int> next = betas;
    next[i] = target;
    std::sort(next.begin(), next.end());
    const long long sub = mn_character(next, mu, mu_from + 1, memo);
    total += (crossings % 2 == 0) ? sub : -sub;
  }
  memo[key] = total;
  return total;
}

inline std::vector<int> beta_set(const Partition& lambda) {
  const int rows = lambda.row_count();
  std::vector<int> betas(rows);
  for (int i = 0; i < rows; ++i) betas[i] = lambda.rows()[i] + (rows - 1 - i);
  std::sort(betas.begin(), betas.end());
  return betas;
}

}  // namespace detail

// Irreducible character of S_n at shape lambda, evaluated on cycle type mu.
inline long long character(const Partition& lambda, const Partition& mu) {
  if (lambda.size() != mu.size()) throw domain_error("character: |lambda| != |mu|");
  static std::map<std::pair<std::vector<int>, std::vector<int>>, long long> memo;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  return detail::mn_character(detail::beta_set(lambda), mu, 0, memo);
}

// Character table of S_n over the canonical partition order; built once per n.
struct CharacterTable {
  std::vector<Partition> partitions;        // row/column labels
  std::vector<long long> centralizer;      // z_mu per column
  std::vector<std::vector<long long>> chi;  // chi[lambda][mu]

  int index_of(const Partition& p) const {
    const auto it = std::lower_bound(partitions.begin(), partitions.end(), p,
                                     [](const Partition& a, const Partition& b) { return a < b; });
    if (it == partitions.end() || *it != p) throw domain_error("partition not of this size");
    return static_cast<int>(it - partitions.begin());
  }
};

inline const CharacterTable& character_table(int n) {
  static std::map<int, CharacterTable> tables;
  static std::mutex mutex;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = tables.find(n);
  if (it != tables.end()) return it->second;
  CharacterTable table;
  table.partitions = list_partitions(n);
  std::sort(table.partitions.begin(), table.partitions.end());
  table.centralizer.reserve(table.partitions.size());
  for (const auto& mu : table.partitions) table.centralizer.push_back(partition_centralizer_order(mu));
  table.chi.resize(table.partitions.size());
  for (std::size_t l = 0; l < table.partitions.size(); ++l) {
    table.chi[l].resize(table.partitions.size());
    for (std::size_t m = 0; m < table.partitions.size(); ++m)
      table.chi[l][m] = character(table.partitions[l], table.partitions[m]);
  }
  return tables.emplace(n, std::move(table)).first->second;
}

// Multiplicity of the outer tensor product of `parts` in the restriction of
// S_lambda to the block subgroup with block sizes |parts[i]|.  Computed as a
// class-function inner product over tuples of cycle types.
inline long long iterated_lr(const Partition& lambda, const std::vector<Partition>& parts) {
  int total = 0;
  for (const auto& p : parts) total += p.size();
  if (total != lambda.size()) throw domain_error("iterated_lr: sizes of parts must sum to |lambda|");

  static std::map<std::pair<Partition, std::vector<Partition>>, long long> memo;
  static std::mutex mutex;
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto sorted_parts = parts;
    std::sort(sorted_parts.begin(), sorted_parts.end());
    if (auto it = memo.find({lambda, sorted_parts}); it != memo.end()) return it->second;
  }

  const int k = static_cast<int>(parts.size());
  Rat sum = 0;
  std::vector<int> idx(k, 0);
  std::vector<const CharacterTable*> tabs;
  tabs.reserve(k);
  for (const auto& p : parts) tabs.push_back(&character_table(p.size()));
  while (true) {
    Rat term = 1;
    std::vector<int> merged;
    for (int i = 0; i < k; ++i) {
      const auto& tab = *tabs[i];
      const auto& ct = tab.partitions[idx[i]];
      term *= make_rat(character(parts[i], ct), tab.centralizer[idx[i]]);
      merged.insert(merged.end(), ct.rows().begin(), ct.rows().end());
    }
    if (term != 0) {
      term *= make_rat(character(lambda, Partition::from_unsorted(std::move(merged))));
      sum += term;
    }
    int pos = k - 1;
    while (pos >= 0) {
      if (++idx[pos] < static_cast<int>(tabs[pos]->partitions.size())) break;
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  const long long value = rat_to_ll(sum);
  {
    std::lock_guard<std::mutex> lock(mutex);
    auto sorted_parts = parts;
    std::sort(sorted_parts.begin(), sorted_parts.end());
    memo[{lambda, sorted_parts}] = value;
  }
  return value;
}

inline long long lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu) {
  if (mu.size() + nu.size() != lambda.size()) throw domain_error("lr_coefficient: |mu|+|nu| != |lambda|");
  return iterated_lr(lambda, {mu, nu});
}

// dim Hom(tensor of the Specht modules, trivial) = sum over cycle types of
// prod_i chi_{lambda_i} / z.  Fully symmetric in its arguments.
inline long long kronecker(const std::vector<Partition>& lambdas) {
  if (lambdas.empty()) throw domain_error("kronecker: need at least one partition");
  const int n = lambdas[0].size();
  for (const auto& l : lambdas)
    if (l.size() != n) throw domain_error("kronecker: size mismatch");

  static std::map<std::vector<Partition>, long long> memo;
  static std::mutex mutex;
  auto sorted = lambdas;
  std::sort(sorted.begin(), sorted.end());
  {
    std::lock_guard<std::mutex> lock(mutex);
    if (auto it = memo.find(sorted); it != memo.end()) return it->second;
  }

  const auto& tab = character_table(n);
  Rat sum = 0;
  for (std::size_t m = 0; m < tab.partitions.size(); ++m) {
    Rat term = make_rat(1, tab.centralizer[m]);
    for (const auto& l : lambdas) term *= make_rat(tab.chi[tab.index_of(l)][m]);
    sum += term;
  }
  const long long value = rat_to_ll(sum);
  std::lock_guard<std::mutex> lock(mutex);
  memo[sorted] = value;
  return value;
}

}  // namespace traceinv
