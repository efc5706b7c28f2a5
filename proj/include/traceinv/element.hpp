#pragma once

#include <map>
#include <mutex>
#include <utility>
#include <vector>

#include "traceinv/diagram.hpp"
#include "traceinv/rational.hpp"

namespace traceinv {

// Monomial key: an identity-free canonical diagram together with a power of
// the dimension invariant.
struct DiagramKey {
  std::vector<int> multidegree;
  std::vector<int> word;  // canonical wiring, m = 0
  int d_power = 0;

  friend auto operator<=>(const DiagramKey&, const DiagramKey&) = default;
};

namespace detail {

inline std::vector<int> signature_serial(const TypeSignature& sig) {
  std::vector<int> s;
  for (auto [p, q] : sig.pairs()) {
    s.push_back(p);
    s.push_back(q);
  }
  return s;
}

struct KeyFacts {
  unsigned long long aut = 1;
  // Connected components of the identity-free diagram with multiplicities.
  std::vector<std::pair<DiagramKey, int>> components;
};

inline const KeyFacts& key_facts(const TypeSignature& sig, const DiagramKey& key, const Limits& limits) {
  static std::map<std::tuple<std::vector<int>, std::vector<int>, std::vector<int>>, KeyFacts> cache;
  static std::mutex mutex;
  auto cache_key = std::make_tuple(signature_serial(sig), key.multidegree, key.word);
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(cache_key); it != cache.end()) return it->second;

  const ClosedDiagram d =
      canonicalize_closed(sig, key.multidegree, 0, Perm(std::vector<int>(key.word)), limits);
  KeyFacts facts;
  facts.aut = d.aut_order();
  for (const auto& comp : connected_components(d, limits)) {
    DiagramKey ck{comp.multidegree(), comp.sigma().word(), 0};
    if (!facts.components.empty() && facts.components.back().first == ck)
      ++facts.components.back().second;
    else
      facts.components.emplace_back(std::move(ck), 1);
  }
  return cache.emplace(std::move(cache_key), std::move(facts)).first->second;
}

}  // namespace detail

class TensorSquareSum;

// Finitely supported rational combination of canonical identity-free closed
// diagrams times powers of the dimension invariant.  The monomial basis is
// orthogonal for the inner product, with squared norms the automorphism
// counts.
class DiagramSum {
 public:
  explicit DiagramSum(TypeSignature sig) : sig_(std::move(sig)) {}

  static DiagramSum zero(const TypeSignature& sig) { return DiagramSum(sig); }

  static DiagramSum unit(const TypeSignature& sig) {
    DiagramSum e(sig);
    e.add_term(DiagramKey{std::vector<int>(sig.arity(), 0), {}, 0}, 1);
    return e;
  }

  // The dimension invariant D (trace of the identity map).
  static DiagramSum dimension(const TypeSignature& sig) {
    DiagramSum e(sig);
    e.add_term(DiagramKey{std::vector<int>(sig.arity(), 0), {}, 1}, 1);
    return e;
  }

  // Identity boxes are reduced away; loops become dimension powers.
  static DiagramSum from_closed(const ClosedDiagram& d, const Limits& limits = default_limits()) {
    auto [reduced, d_power] = identity_reduce(d, limits);
    DiagramSum e(d.signature());
    e.add_term(DiagramKey{reduced.multidegree(), reduced.sigma().word(), d_power}, 1);
    return e;
  }

  const TypeSignature& signature() const { return sig_; }
  const std::map<DiagramKey, Rat>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  void add_term(const DiagramKey& key, const Rat& coeff) {
    if (coeff == 0) return;
    auto [it, inserted] = terms_.emplace(key, coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  DiagramSum& operator+=(const DiagramSum& other) {
    check_same_signature(other);
    for (const auto& [key, coeff] : other.terms_) add_term(key, coeff);
    return *this;
  }
  DiagramSum& operator-=(const DiagramSum& other) {
    check_same_signature(other);
    for (const auto& [key, coeff] : other.terms_) add_term(key, -coeff);
    return *this;
  }
  DiagramSum& operator*=(const Rat& scalar) {
    if (scalar == 0) {
      terms_.clear();
      return *this;
    }
    for (auto& [key, coeff] : terms_) coeff *= scalar;
    return *this;
  }
  friend DiagramSum operator+(DiagramSum a, const DiagramSum& b) { return a += b; }
  friend DiagramSum operator-(DiagramSum a, const DiagramSum& b) { return a -= b; }
  friend DiagramSum operator*(const Rat& s, DiagramSum a) { return a *= s; }
  friend bool operator==(const DiagramSum& a, const DiagramSum& b) {
    return a.sig_ == b.sig_ && a.terms_ == b.terms_;
  }

  void check_same_signature(const DiagramSum& other) const {
    if (sig_ != other.sig_) throw domain_error("element signature mismatch");
  }

  // Sum of the terms of exactly this box-degree (dimension powers carry
  // box-degree zero and are kept).
  DiagramSum grade_project(const std::vector<int>& multidegree) const {
    DiagramSum out(sig_);
    for (const auto& [key, coeff] : terms_)
      if (key.multidegree == multidegree) out.add_term(key, coeff);
    return out;
  }

 private:
  TypeSignature sig_;
  std::map<DiagramKey, Rat> terms_;
};

// Element of the tensor square, supported on pairs of monomial keys.
class TensorSquareSum {
 public:
  explicit TensorSquareSum(TypeSignature sig) : sig_(std::move(sig)) {}

  const TypeSignature& signature() const { return sig_; }
  const std::map<std::pair<DiagramKey, DiagramKey>, Rat>& terms() const { return terms_; }

  void add_term(const DiagramKey& left, const DiagramKey& right, const Rat& coeff) {
    if (coeff == 0) return;
    auto key = std::make_pair(left, right);
    auto [it, inserted] = terms_.emplace(std::move(key), coeff);
    if (!inserted) {
      it->second += coeff;
      if (it->second == 0) terms_.erase(it);
    }
  }

  TensorSquareSum& operator+=(const TensorSquareSum& other) {
    for (const auto& [key, coeff] : other.terms_) add_term(key.first, key.second, coeff);
    return *this;
  }

 private:
  TypeSignature sig_;
  std::map<std::pair<DiagramKey, DiagramKey>, Rat> terms_;
};

namespace detail {

inline DiagramKey key_star(const TypeSignature& sig, const DiagramKey& a, const DiagramKey& b,
                           const Limits& limits) {
  const ClosedDiagram da = canonicalize_closed(sig, a.multidegree, 0, Perm(std::vector<int>(a.word)), limits);
  const ClosedDiagram db = canonicalize_closed(sig, b.multidegree, 0, Perm(std::vector<int>(b.word)), limits);
  const ClosedDiagram prod = star_product(da, db, limits);
  return DiagramKey{prod.multidegree(), prod.sigma().word(), a.d_power + b.d_power};
}

inline Int binomial(int n, int k) {
  Int b = 1;
  for (int i = 0; i < k; ++i) {
    b *= n - i;
    b /= i + 1;
  }
  return b;
}

}  // namespace detail

// Bilinear extension of the disjoint-union product.
inline DiagramSum multiply(const DiagramSum& a, const DiagramSum& b, const Limits& limits = default_limits()) {
  a.check_same_signature(b);
  DiagramSum out(a.signature());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      out.add_term(detail::key_star(a.signature(), ka, kb, limits), ca * cb);
  return out;
}

// Coproduct induced by direct sums of structures: connected diagrams (and the
// dimension invariant) are primitive, so a monomial expands binomially over
// splittings of its connected components.
inline TensorSquareSum coproduct_sum(const DiagramSum& a, const Limits& limits = default_limits()) {
  const TypeSignature& sig = a.signature();
  TensorSquareSum out(sig);
  const DiagramKey unit_key{std::vector<int>(sig.arity(), 0), {}, 0};
  for (const auto& [key, coeff] : a.terms()) {
    const auto& facts = detail::key_facts(sig, key, limits);
    // Components plus the dimension power, each split left/right.
    std::vector<std::pair<DiagramKey, int>> parts = facts.components;
    if (key.d_power > 0) parts.emplace_back(DiagramKey{unit_key.multidegree, {}, 1}, key.d_power);
    std::vector<int> take(parts.size(), 0);
    while (true) {
      Rat weight = coeff;
      DiagramKey left = unit_key, right = unit_key;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        weight *= Rat(detail::binomial(parts[i].second, take[i]));
        for (int rep = 0; rep < take[i]; ++rep) left = detail::key_star(sig, left, parts[i].first, limits);
        for (int rep = 0; rep < parts[i].second - take[i]; ++rep)
          right = detail::key_star(sig, right, parts[i].first, limits);
      }
      out.add_term(left, right, weight);
      std::size_t pos = 0;
      while (pos < parts.size()) {
        if (++take[pos] <= parts[pos].second) break;
        take[pos] = 0;
        ++pos;
      }
      if (pos == parts.size()) break;
    }
  }
  return out;
}

// Coproduct induced by tensor products of structures: every monomial is
// group-like.
inline TensorSquareSum coproduct_tensor(const DiagramSum& a) {
  TensorSquareSum out(a.signature());
  for (const auto& [key, coeff] : a.terms()) out.add_term(key, key, coeff);
  return out;
}

// Counit for the direct-sum coproduct: coefficient of the empty diagram.
inline Rat counit_sum(const DiagramSum& a) {
  const DiagramKey unit_key{std::vector<int>(a.signature().arity(), 0), {}, 0};
  auto it = a.terms().find(unit_key);
  return it == a.terms().end() ? Rat(0) : it->second;
}

// Counit for the tensor coproduct: evaluation at the one-dimensional
// structure (K,(1)), i.e. the sum of all coefficients.
inline Rat counit_tensor(const DiagramSum& a) {
  Rat sum = 0;
  for (const auto& [key, coeff] : a.terms()) sum += coeff;
  return sum;
}

// Antipode: (-1)^(number of connected components, dimension loops included).
inline DiagramSum antipode(const DiagramSum& a, const Limits& limits = default_limits()) {
  DiagramSum out(a.signature());
  for (const auto& [key, coeff] : a.terms()) {
    const auto& facts = detail::key_facts(a.signature(), key, limits);
    int t = key.d_power;
    for (const auto& [comp, mult] : facts.components) t += mult;
    out.add_term(key, (t % 2 == 0) ? coeff : -coeff);
  }
  return out;
}

// Monomials are orthogonal; the squared norm of a monomial is the order of
// its automorphism group (dimension loops permute freely).
inline Rat inner_product(const DiagramSum& a, const DiagramSum& b, const Limits& limits = default_limits()) {
  a.check_same_signature(b);
  Rat sum = 0;
  for (const auto& [key, ca] : a.terms()) {
    auto it = b.terms().find(key);
    if (it == b.terms().end()) continue;
    const auto& facts = detail::key_facts(a.signature(), key, limits);
    sum += ca * it->second * Rat(Int(static_cast<unsigned long>(facts.aut)) * factorial(key.d_power));
  }
  return sum;
}

inline Rat inner_product(const DiagramSum& a, const DiagramSum& b, const TensorSquareSum& delta,
                         const Limits& limits = default_limits()) {
  Rat sum = 0;
  for (const auto& [pair_key, coeff] : delta.terms()) {
    auto ita = a.terms().find(pair_key.first);
    if (ita == a.terms().end()) continue;
    auto itb = b.terms().find(pair_key.second);
    if (itb == b.terms().end()) continue;
    const auto& fa = detail::key_facts(a.signature(), pair_key.first, limits);
    const auto& fb = detail::key_facts(b.signature(), pair_key.second, limits);
    sum += coeff * ita->second * itb->second * Rat(Int(static_cast<unsigned long>(fa.aut)) * factorial(pair_key.first.d_power)) *
           Rat(Int(static_cast<unsigned long>(fb.aut)) * factorial(pair_key.second.d_power));
  }
  return sum;
}

// Componentwise product on the tensor square (used by the bialgebra checks).
inline TensorSquareSum multiply(const TensorSquareSum& a, const TensorSquareSum& b,
                                const Limits& limits = default_limits()) {
  TensorSquareSum out(a.signature());
  for (const auto& [ka, ca] : a.terms())
    for (const auto& [kb, cb] : b.terms())
      out.add_term(detail::key_star(a.signature(), ka.first, kb.first, limits),
                   detail::key_star(a.signature(), ka.second, kb.second, limits), ca * cb);
  return out;
}

}  // namespace traceinv
