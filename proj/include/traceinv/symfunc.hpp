#pragma once

#include <map>

#include "traceinv/characters.hpp"
#include "traceinv/element.hpp"

namespace traceinv {

enum class SymBasis { PowerSum, Schur };

// Symmetric-function element in one of two bases: power sums indexed by cycle
// types (the diagram basis for a single endomorphism) or the orthonormal
// Schur-type basis.  Mixed degrees allowed.
class SymFunc {
 public:
  explicit SymFunc(SymBasis basis) : basis_(basis) {}

  static SymFunc zero(SymBasis basis) { return SymFunc(basis); }

  static SymFunc one(SymBasis basis) {
    SymFunc f(basis);
    f.add_term(Partition(), 1);
    return f;
  }

  static SymFunc power_sum(const Partition& mu) {
    SymFunc f(SymBasis::PowerSum);
    f.add_term(mu, 1);
    return f;
  }

  static SymFunc schur(const Partition& lambda) {
    SymFunc f(SymBasis::Schur);
    f.add_term(lambda, 1);
    return f;
  }

  SymBasis basis() const { return basis_; }
  const std::map<Partition, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const Partition& p, const Rat& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(p, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  SymFunc& operator+=(const SymFunc& other) {
    if (basis_ != other.basis_) throw domain_error("SymFunc: basis mismatch in addition");
    for (const auto& [p, c] : other.terms_) add_term(p, c);
    return *this;
  }
  SymFunc& operator-=(const SymFunc& other) {
    if (basis_ != other.basis_) throw domain_error("SymFunc: basis mismatch in subtraction");
    for (const auto& [p, c] : other.terms_) add_term(p, -c);
    return *this;
  }
  SymFunc& operator*=(const Rat& s) {
    if (s == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [p, c] : terms_) c *= s;
    return *this;
  }
  friend SymFunc operator+(SymFunc a, const SymFunc& b) { return a += b; }
  friend SymFunc operator-(SymFunc a, const SymFunc& b) { return a -= b; }
  friend SymFunc operator*(const Rat& s, SymFunc a) { return a *= s; }
  friend bool operator==(const SymFunc& a, const SymFunc& b) {
    return a.basis_ == b.basis_ && a.terms_ == b.terms_;
  }

 private:
  SymBasis basis_;
  std::map<Partition, Rat> terms_;
};

// {lambda} = sum_mu chi_lambda(mu)/z_mu p_mu.
inline SymFunc schur_to_powersum(const Partition& lambda) {
  SymFunc out(SymBasis::PowerSum);
  const auto& tab = character_table(lambda.size());
  const int l = tab.index_of(lambda);
  for (std::size_t m = 0; m < tab.partitions.size(); ++m)
    out.add_term(tab.partitions[m], make_rat(tab.chi[l][m], tab.centralizer[m]));
  return out;
}

// p_mu = sum_lambda chi_lambda(mu) {lambda}.
inline SymFunc powersum_to_schur(const Partition& mu) {
  SymFunc out(SymBasis::Schur);
  const auto& tab = character_table(mu.size());
  const int m = tab.index_of(mu);
  for (std::size_t l = 0; l < tab.partitions.size(); ++l)
    out.add_term(tab.partitions[l], make_rat(tab.chi[l][m]));
  return out;
}

inline SymFunc to_powersum(const SymFunc& f) {
  if (f.basis() == SymBasis::PowerSum) return f;
  SymFunc out(SymBasis::PowerSum);
  for (const auto& [lambda, coeff] : f.terms()) {
    SymFunc part = schur_to_powersum(lambda);
    part *= coeff;
    out += part;
  }
  return out;
}

inline SymFunc to_schur(const SymFunc& f) {
  if (f.basis() == SymBasis::Schur) return f;
  SymFunc out(SymBasis::Schur);
  for (const auto& [mu, coeff] : f.terms()) {
    SymFunc part = powersum_to_schur(mu);
    part *= coeff;
    out += part;
  }
  return out;
}

// Power sums multiply by concatenating cycle types.
inline SymFunc sym_multiply(const SymFunc& a, const SymFunc& b) {
  const SymFunc pa = to_powersum(a), pb = to_powersum(b);
  SymFunc out(SymBasis::PowerSum);
  for (const auto& [mu, ca] : pa.terms())
    for (const auto& [nu, cb] : pb.terms()) {
      std::vector<int> rows = mu.rows();
      rows.insert(rows.end(), nu.rows().begin(), nu.rows().end());
      out.add_term(Partition::from_unsorted(std::move(rows)), ca * cb);
    }
  return out;
}

// {lambda}{mu} expanded in the Schur-type basis; the coefficients are the
// Littlewood-Richardson numbers.
inline SymFunc schur_product(const Partition& lambda, const Partition& mu) {
  SymFunc out(SymBasis::Schur);
  for (const auto& nu : list_partitions(lambda.size() + mu.size()))
    out.add_term(nu, make_rat(lr_coefficient(nu, lambda, mu)));
  return out;
}

// Complete-homogeneous generator X_k = {(k)} in the power-sum basis.
inline SymFunc complete_homogeneous(int k) {
  if (k < 0) return SymFunc::zero(SymBasis::PowerSum);
  if (k == 0) return SymFunc::one(SymBasis::PowerSum);
  return schur_to_powersum(Partition({k}));
}

// Determinant expansion det(X_{lambda_i + j - i}) over permutations of the
// rows; equals {lambda} after conversion.
inline SymFunc jacobi_trudi(const Partition& lambda) {
  const int t = lambda.row_count();
  if (t == 0) return SymFunc::one(SymBasis::Schur);
  SymFunc acc(SymBasis::PowerSum);
  std::vector<int> word(t);
  std::iota(word.begin(), word.end(), 0);
  do {
    const Perm sigma{std::vector<int>(word)};
    SymFunc term = SymFunc::one(SymBasis::PowerSum);
    bool zero = false;
    for (int i = 0; i < t && !zero; ++i) {
      const int k = lambda.rows()[i] + sigma(i) - i;
      if (k < 0) {
        zero = true;
        break;
      }
      term = sym_multiply(term, complete_homogeneous(k));
    }
    if (zero) continue;
    const int sign = (t - cycle_type(sigma).row_count()) % 2 == 0 ? 1 : -1;
    term *= make_rat(sign);
    acc += term;
  } while (std::next_permutation(word.begin(), word.end()));
  return to_schur(acc);
}

// The algebra involution sending {lambda} to {lambda^t}; on power sums it
// rescales p_mu by the sign of a permutation of cycle type mu.
inline SymFunc transpose_map(const SymFunc& f) {
  SymFunc out(f.basis());
  if (f.basis() == SymBasis::Schur) {
    for (const auto& [lambda, coeff] : f.terms()) out.add_term(lambda.transpose(), coeff);
  } else {
    for (const auto& [mu, coeff] : f.terms()) {
      const int sign = (mu.size() - mu.row_count()) % 2 == 0 ? 1 : -1;
      out.add_term(mu, make_rat(sign) * coeff);
    }
  }
  return out;
}

// Membership in the kernel of evaluation at dimension d: every Schur-basis
// coefficient on a partition with at most d rows must vanish.
inline bool in_ideal_id(const SymFunc& f, int d) {
  const SymFunc s = to_schur(f);
  for (const auto& [lambda, coeff] : s.terms())
    if (lambda.row_count() <= d && coeff != 0) return false;
  return true;
}

// <p_mu, p_nu> = z_mu [mu = nu]; the Schur-type basis is orthonormal.
inline Rat sym_inner_product(const SymFunc& a, const SymFunc& b) {
  const SymFunc pa = to_powersum(a), pb = to_powersum(b);
  Rat sum = 0;
  for (const auto& [mu, ca] : pa.terms()) {
    auto it = pb.terms().find(mu);
    if (it != pb.terms().end()) sum += ca * it->second * make_rat(partition_centralizer_order(mu));
  }
  return sum;
}

// ---------------------------------------------------------------------------
// Bridge to the diagram algebra for the single-endomorphism signature: the
// diagram with wiring of cycle type mu is the power sum p_mu.
// ---------------------------------------------------------------------------

inline TypeSignature endo_signature() { return TypeSignature({{1, 1}}); }

inline Perm perm_of_cycle_type(const Partition& mu) {
  std::vector<int> word(mu.size());
  int start = 0;
  for (int len : mu.rows()) {
    for (int i = 0; i < len; ++i) word[start + i] = start + (i + 1) % len;
    start += len;
  }
  return Perm(std::move(word));
}

inline DiagramSum diagram_sum_from_sym(const SymFunc& f, const Limits& limits = default_limits()) {
  const SymFunc p = to_powersum(f);
  DiagramSum out(endo_signature());
  for (const auto& [mu, coeff] : p.terms()) {
    const ClosedDiagram d = canonicalize_closed(endo_signature(), {mu.size()}, 0, perm_of_cycle_type(mu), limits);
    out.add_term(DiagramKey{d.multidegree(), d.sigma().word(), 0}, coeff);
  }
  return out;
}

inline SymFunc sym_from_diagram_sum(const DiagramSum& e) {
  if (e.signature() != endo_signature()) throw domain_error("sym_from_diagram_sum: wrong signature");
  SymFunc out(SymBasis::PowerSum);
  for (const auto& [key, coeff] : e.terms()) {
    if (key.d_power != 0) throw domain_error("sym_from_diagram_sum: dimension powers not representable");
    out.add_term(cycle_type(Perm(std::vector<int>(key.word))), coeff);
  }
  return out;
}

}  // namespace traceinv
