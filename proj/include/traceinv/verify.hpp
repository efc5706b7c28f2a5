#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "traceinv/evaluate.hpp"
#include "traceinv/hilbert.hpp"
#include "traceinv/symfunc.hpp"
#include "traceinv/theory.hpp"

namespace traceinv {

struct Check {
  std::string name;
  bool pass = true;
  std::string detail;  // first failure, or a summary count
};

namespace detail {

class CheckBuilder {
 public:
  explicit CheckBuilder(std::string name) : check_{std::move(name), true, ""} {}

  void require(bool ok, const std::string& what) {
    ++total_;
    if (ok || !check_.pass) return;
    if (!ok) {
      check_.pass = false;
      check_.detail = what;
    }
  }

  Check finish() {
    if (check_.pass) check_.detail = std::to_string(total_) + " checks";
    return check_;
  }

 private:
  Check check_;
  long long total_ = 0;
};

inline std::vector<std::vector<int>> balanced_multidegrees_up_to(const TypeSignature& sig, int max_n) {
  std::vector<std::vector<int>> out;
  for (const auto& nd : bounded_multidegrees(sig.arity(), max_n)) {
    int n = 0, n_in = 0;
    for (int i = 0; i < sig.arity(); ++i) {
      n += nd[i] * sig.out_arity(i);
      n_in += nd[i] * sig.in_arity(i);
    }
    if (n == n_in && n <= max_n) out.push_back(nd);
  }
  return out;
}

}  // namespace detail

// Graded dimensions of the one-endomorphism ring: orbit count, character
// formula, and the partition numbers agree.
inline Check check_hilbert_endo(int max_n = 6) {
  detail::CheckBuilder b("hilbert: three-way agreement, one endomorphism, n <= " + std::to_string(max_n));
  const std::vector<long long> partition_numbers = {1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42};
  const TypeSignature sig = endo_signature();
  for (int n = 0; n <= max_n; ++n) {
    const long long burnside = dim_burnside(sig, {n});
    const long long formula = dim_formula(sig, {n});
    const long long expected =
        n < static_cast<int>(partition_numbers.size()) ? partition_numbers[n] : static_cast<long long>(list_partitions(n).size());
    std::ostringstream what;
    what << "n=" << n << ": burnside=" << burnside << " formula=" << formula << " partitions=" << expected;
    b.require(burnside == expected && formula == expected, what.str());
  }
  return b.finish();
}

// Quotient dimensions equal capped partition counts and the seeded
// evaluation rank.
inline Check check_quotient_dims(int max_n = 5, int max_d = 3, int samples = 30, std::uint64_t seed = 2024) {
  detail::CheckBuilder b("hilbert: quotient dimensions vs partition counts and evaluation rank");
  const TypeSignature sig = endo_signature();
  for (int n = 0; n <= max_n; ++n)
    for (int d = 0; d <= max_d; ++d) {
      const long long q = quotient_dim(sig, {n}, d);
      const long long capped = static_cast<long long>(list_partitions(n, d).size());
      const long long rank = evaluation_rank(sig, {n}, d, samples, seed + n * 10 + d);
      std::ostringstream what;
      what << "n=" << n << " d=" << d << ": quotient=" << q << " partitions=" << capped << " rank=" << rank;
      b.require(q == capped && q == rank, what.str());
    }
  return b.finish();
}

// Burnside counting equals the character formula for the two-string
// signatures, over every balanced multidegree in range.
inline Check check_hilbert_multitensor(int max_n = 5) {
  detail::CheckBuilder b("hilbert: orbit count vs formula for two-string signatures, n <= " + std::to_string(max_n));
  const std::vector<TypeSignature> sigs = {TypeSignature({{2, 2}}), TypeSignature({{2, 1}, {1, 2}})};
  for (const auto& sig : sigs)
    for (const auto& nd : detail::balanced_multidegrees_up_to(sig, max_n)) {
      const long long burnside = dim_burnside(sig, nd);
      const long long formula = dim_formula(sig, nd);
      std::ostringstream what;
      what << "sig=" << print_signature(sig) << " nd=";
      for (int v : nd) what << v << ",";
      what << " burnside=" << burnside << " formula=" << formula;
      b.require(burnside == formula, what.str());
    }
  return b.finish();
}

// <a ox b, Delta(c)> = <ab, c>, exactly: all degree-matched monomial triples
// at total degree <= max_total for one endomorphism, plus seeded random
// triples for the (2,2) signature.
inline Check check_adjointness(int max_total = 6, int random_triples = 100, std::uint64_t seed = 4242) {
  detail::CheckBuilder b("algebra: multiplication is adjoint to the direct-sum coproduct");
  {
    const TypeSignature sig = endo_signature();
    std::vector<std::pair<int, DiagramSum>> monos;  // (degree, monomial)
    for (int n = 0; n <= max_total; ++n)
      for (const auto& lambda : list_partitions(n)) {
        DiagramSum m = DiagramSum::unit(sig);
        for (int part : lambda.rows())
          m = multiply(m, DiagramSum::from_closed(canonicalize_closed(
                              sig, {part}, 0, perm_of_cycle_type(Partition({part})))));
        monos.emplace_back(n, m);
      }
    std::vector<TensorSquareSum> deltas;
    deltas.reserve(monos.size());
    for (const auto& [dc, c] : monos) deltas.push_back(coproduct_sum(c));
    for (const auto& [da, a] : monos)
      for (const auto& [db, bm] : monos) {
        if (da + db > max_total) continue;
        const DiagramSum ab = multiply(a, bm);
        for (std::size_t ci = 0; ci < monos.size(); ++ci) {
          const bool ok = inner_product(a, bm, deltas[ci]) == inner_product(ab, monos[ci].second);
          b.require(ok, "endomorphism triple failed");
        }
      }
  }
  {
    const TypeSignature sig({{2, 2}});
    std::vector<DiagramSum> gens;
    for (int k = 1; k <= 2; ++k)
      for (const auto& d : graded_basis(sig, {k}))
        if (is_connected(d)) gens.push_back(DiagramSum::from_closed(d));
    SeededRng rng(seed);
    auto random_monomial = [&](int max_factors) {
      DiagramSum m = DiagramSum::unit(sig);
      const int t = static_cast<int>(rng.uniform(0, max_factors));
      for (int i = 0; i < t; ++i) m = multiply(m, gens[rng.uniform(0, static_cast<long long>(gens.size()) - 1)]);
      return m;
    };
    for (int trial = 0; trial < random_triples; ++trial) {
      const DiagramSum a = random_monomial(2), bm = random_monomial(2), c = random_monomial(3);
      const bool ok = inner_product(a, bm, coproduct_sum(c)) == inner_product(multiply(a, bm), c);
      b.require(ok, "random (2,2) triple failed at trial " + std::to_string(trial));
    }
  }
  return b.finish();
}

// Direct sums add on connected diagrams; tensor products multiply on every
// basis diagram.  Seeded structure pairs of dimension <= 3.
inline Check check_sum_tensor_compat(int pairs = 50, int max_n = 4, std::uint64_t seed = 616) {
  detail::CheckBuilder b("evaluation: direct-sum additivity and tensor-product multiplicativity");
  struct SigCase {
    TypeSignature sig;
    std::vector<std::vector<int>> degrees;
  };
  const std::vector<SigCase> cases = {{endo_signature(), {{1}, {2}, {3}, {4}}},
                                      {TypeSignature({{2, 1}, {1, 2}}), {{1, 1}}}};
  SeededRng rng(seed);
  for (int trial = 0; trial < pairs; ++trial) {
    const auto& c = cases[trial % cases.size()];
    const int d1 = static_cast<int>(rng.uniform(1, 3)), d2 = static_cast<int>(rng.uniform(1, 3));
    const Structure s1 = random_structure(c.sig, d1, rng);
    const Structure s2 = random_structure(c.sig, d2, rng);
    const Structure sum = direct_sum(s1, s2);
    const Structure prod = tensor_structures(s1, s2);
    for (const auto& nd : c.degrees)
      for (const auto& dg : graded_basis(c.sig, nd)) {
        if (is_connected(dg)) {
          const bool ok = evaluate_closed(dg, sum) == evaluate_closed(dg, s1) + evaluate_closed(dg, s2);
          b.require(ok, "direct-sum additivity failed at trial " + std::to_string(trial));
        }
        const bool ok = evaluate_closed(dg, prod) == evaluate_closed(dg, s1) * evaluate_closed(dg, s2);
        b.require(ok, "tensor multiplicativity failed at trial " + std::to_string(trial));
      }
  }
  return b.finish();
}

// Alternating-sum generators vanish on every structure of dimension d.
inline Check check_kernel_generators(int max_n = 4, int structures = 20, std::uint64_t seed = 97) {
  detail::CheckBuilder b("ideals: alternating-sum generators vanish below the threshold dimension");
  const TypeSignature sig = endo_signature();
  SeededRng rng(seed);
  for (int d = 1; d + 1 <= max_n; ++d) {
    const int n = d + 1;
    const auto gens = id_generators(d, sig, {n});
    b.require(!gens.empty(), "no generators produced for d=" + std::to_string(d));
    for (int trial = 0; trial < structures; ++trial) {
      const Structure s = random_structure(sig, d, rng);
      for (const auto& g : gens) {
        const bool ok = evaluate_element(g, s) == 0;
        b.require(ok, "nonzero generator value at d=" + std::to_string(d));
      }
    }
  }
  return b.finish();
}

// The one-endomorphism case study: orthonormal basis, products, determinant
// identity, evaluation criterion, quotient dimensions.
inline Check check_endo_suite(std::uint64_t seed = 31337) {
  detail::CheckBuilder b("endomorphism case study");
  // Orthonormality for n <= 7.
  for (int n = 0; n <= 7; ++n)
    for (const auto& lambda : list_partitions(n))
      for (const auto& mu : list_partitions(n)) {
        const bool ok = sym_inner_product(SymFunc::schur(lambda), SymFunc::schur(mu)) == (lambda == mu ? 1 : 0);
        b.require(ok, "orthonormality failed at n=" + std::to_string(n));
      }
  // Product coefficients match the pairwise restriction numbers, |lambda|<=4,
  // |mu|<=3.
  for (int a = 0; a <= 4; ++a)
    for (int c = 0; c <= 3; ++c)
      for (const auto& lambda : list_partitions(a))
        for (const auto& mu : list_partitions(c)) {
          const SymFunc prod = schur_product(lambda, mu);
          bool ok = true;
          for (const auto& nu : list_partitions(a + c)) {
            const auto it = prod.terms().find(nu);
            const Rat coeff = it == prod.terms().end() ? Rat(0) : it->second;
            if (coeff != make_rat(lr_coefficient(nu, lambda, mu))) ok = false;
          }
          b.require(ok, "product coefficients disagree");
        }
  // Determinant identity for n <= 6.
  for (int n = 0; n <= 6; ++n)
    for (const auto& lambda : list_partitions(n))
      b.require(jacobi_trudi(lambda) == SymFunc::schur(lambda), "determinant identity failed");
  // Evaluation: zero exactly above the row bound; nonzero otherwise, on the
  // seeded witness or else on the diagonal one (where the value is a Schur
  // polynomial at distinct positive points, hence positive).
  for (int n = 1; n <= 6; ++n)
    for (int d = 1; d <= 3; ++d) {
      SeededRng rng(seed + n * 10 + d);
      const Structure s = random_structure(endo_signature(), d, rng);
      Structure diag = zero_structure(endo_signature(), d);
      for (int i = 0; i < d; ++i) {
        const int oi[] = {i};
        diag.tensors[0].at(oi, oi) = i + 1;
      }
      for (const auto& lambda : list_partitions(n)) {
        const DiagramSum elem = diagram_sum_from_sym(schur_to_powersum(lambda));
        const Rat value = evaluate_element(elem, s);
        if (lambda.row_count() > d) {
          b.require(value == 0, "ideal element evaluated nonzero");
          b.require(evaluate_element(elem, diag) == 0, "ideal element nonzero on the diagonal witness");
        } else if (value == 0) {
          b.require(evaluate_element(elem, diag) != 0, "basis element vanished on the diagonal witness");
        }
      }
    }
  // Quotient Hilbert function equals the d-variable polynomial ring's.
  for (int n = 0; n <= 10; ++n)
    for (int d = 0; d <= 4; ++d) {
      std::vector<long long> ways(n + 1, 0);
      ways[0] = 1;
      for (int part = 1; part <= d; ++part)
        for (int total = part; total <= n; ++total) ways[total] += ways[total - part];
      b.require(quotient_dim(endo_signature(), {n}, d) == ways[n], "quotient dimension mismatch");
    }
  return b.finish();
}

// Built-in axioms on the 2x2 matrix algebra; ideal generators vanish on the
// model; the pairing-evaluation square commutes on seeded data.
inline Check check_axioms(int triples = 50, std::uint64_t seed = 8088) {
  detail::CheckBuilder b("axioms: models, ideal generators, pairing square");
  const TypeSignature sig = algebra_signature();
  const Theory theory = associative_unital_theory();

  const Structure model = [&sig] {
    // 2x2 matrix algebra with its unit.
    const int k = 2, d = k * k;
    RationalTensor mult(1, 2, d), unit(1, 0, d);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int bb = 0; bb < k; ++bb) {
          const int out[] = {i * k + bb}, in[] = {i * k + j, j * k + bb};
          mult.at(out, in) = 1;
        }
    for (int i = 0; i < k; ++i) {
      const int out[] = {i * k + i};
      unit.at(out, std::span<const int>{}) = 1;
    }
    return Structure(sig, d, {mult, unit});
  }();

  b.require(realize_axiom(associativity_axiom(), model).is_zero(), "associativity fails on the matrix algebra");
  b.require(realize_axiom(left_unit_axiom(), model).is_zero(), "left unit fails on the matrix algebra");

  Structure perturbed = model;
  perturbed.tensors[1].entry(1) += 1;
  b.require(!realize_axiom(left_unit_axiom(), perturbed).is_zero() ||
                !realize_axiom(associativity_axiom(), perturbed).is_zero(),
            "perturbed element still satisfies both axioms");

  const auto gens = ideal_generators_upto(theory, 2);
  b.require(!gens.empty(), "no ideal generators within the box bound");
  for (const auto& g : gens)
    b.require(evaluate_element(g, model) == 0, "ideal generator nonzero on the model");

  // Pairing square on seeded (axiom, complement, structure) triples.
  std::vector<const Axiom*> axioms;
  for (const auto& ax : theory.axioms) axioms.push_back(&ax);
  std::vector<std::vector<OpenDiagram>> complements;
  for (const auto& ax : theory.axioms)
    complements.push_back(enumerate_open_diagrams(sig, ax.in_degree, ax.out_degree, 3));
  SeededRng rng(seed);
  for (int trial = 0; trial < triples; ++trial) {
    const std::size_t which = trial % axioms.size();
    const Axiom& ax = *axioms[which];
    const auto& pool = complements[which];
    if (pool.empty()) continue;
    const OpenDiagram& y = pool[rng.uniform(0, static_cast<long long>(pool.size()) - 1)];
    const Structure s = random_structure(sig, static_cast<int>(rng.uniform(1, 2)), rng);
    const DiagramSum paired = pair_element(sig, ax, y);
    const RationalTensor rx = realize_axiom(ax, s);
    const RationalTensor ry = realize_open(y, s);
    Rat contraction = 0;
    if (s.dim > 0) {
      std::vector<int> idx(ax.out_degree + ax.in_degree, 0);
      do {
        std::span<const int> O(idx.data(), ax.out_degree), I(idx.data() + ax.out_degree, ax.in_degree);
        contraction += rx.at(O, I) * ry.at(I, O);
      } while (detail::advance_multi_index(idx, s.dim));
    }
    b.require(evaluate_element(paired, s) == contraction, "pairing square failed at trial " + std::to_string(trial));
  }
  return b.finish();
}

// Canonical forms are constant on orbits, and evaluation is constant too.
inline Check check_canonicalization(int samples = 200, std::uint64_t seed = 1090) {
  detail::CheckBuilder b("canonicalization: orbit-invariant and evaluation-preserving");
  struct SigCase {
    TypeSignature sig;
    std::vector<std::vector<int>> degrees;
  };
  const std::vector<SigCase> cases = {{endo_signature(), {{2}, {3}, {4}, {5}}},
                                      {TypeSignature({{2, 2}}), {{1}, {2}}},
                                      {TypeSignature({{2, 1}, {1, 2}}), {{1, 1}}}};
  SeededRng rng(seed);
  for (int trial = 0; trial < samples; ++trial) {
    const auto& c = cases[trial % cases.size()];
    const auto& nd = c.degrees[rng.uniform(0, static_cast<long long>(c.degrees.size()) - 1)];
    const auto lay = detail::make_layout(c.sig, nd, 0);
    if (lay.total_out != lay.total_in) continue;
    const int n = lay.total_out;
    auto random_word = [&](int deg) {
      std::vector<int> w(deg);
      std::iota(w.begin(), w.end(), 0);
      for (int i = deg - 1; i > 0; --i) std::swap(w[i], w[rng.uniform(0, i)]);
      return w;
    };
    const Perm sigma{random_word(n)};
    // Random relabeling pair.
    std::vector<int> degrees = nd;
    degrees.push_back(0);
    std::vector<Perm> g;
    for (int deg : degrees) g.emplace_back(Perm(random_word(deg)));
    std::vector<int> wp, wq;
    for (auto [p, q] : c.sig.pairs()) {
      wp.push_back(p);
      wq.push_back(q);
    }
    wp.push_back(1);
    wq.push_back(1);
    const Perm moved =
        compose(alpha_embed(wq, degrees, g), compose(sigma, alpha_embed(wp, degrees, g).inverse()));

    const ClosedDiagram canon = canonicalize_closed(c.sig, nd, 0, sigma);
    const ClosedDiagram canon_moved = canonicalize_closed(c.sig, nd, 0, moved);
    b.require(canon == canon_moved, "canonical forms differ along an orbit");

    const int dim = static_cast<int>(rng.uniform(1, 3));
    const Structure s = random_structure(c.sig, dim, rng);
    const Rat direct = evaluate_closed(canonicalize_closed(c.sig, nd, 0, sigma), s);
    const Rat via_moved = evaluate_closed(canonicalize_closed(c.sig, nd, 0, moved), s);
    const OpenDiagram raw(c.sig, nd, 0, n, sigma, Perm::identity(n));
    const Rat raw_value = realize_open(raw, s).entry(0);
    b.require(direct == via_moved && direct == raw_value, "evaluation changed along an orbit");
  }
  return b.finish();
}

// Extra structural checks exercised by the command-line verifier: bialgebra
// laws, antipode identity, positivity of the basis pairing.
inline Check check_psh_structure(std::uint64_t seed = 2718) {
  detail::CheckBuilder b("algebra: bialgebra laws, antipode, positive pairing");
  const TypeSignature sig = endo_signature();
  std::vector<DiagramSum> samples;
  for (int n = 1; n <= 3; ++n)
    for (const auto& d : graded_basis(sig, {n})) samples.push_back(DiagramSum::from_closed(d));
  samples.push_back(DiagramSum::dimension(sig));
  for (const auto& a : samples)
    for (const auto& bm : samples) {
      const DiagramSum ab = multiply(a, bm);
      b.require(ab == multiply(bm, a), "product not commutative");
      {
        auto lhs = coproduct_sum(ab);
        auto rhs = multiply(coproduct_sum(a), coproduct_sum(bm));
        b.require(lhs.terms() == rhs.terms(), "direct-sum coproduct is not an algebra map");
      }
      {
        auto lhs = coproduct_tensor(ab);
        auto rhs = multiply(coproduct_tensor(a), coproduct_tensor(bm));
        b.require(lhs.terms() == rhs.terms(), "tensor coproduct is not an algebra map");
      }
    }
  for (const auto& a : samples) {
    const auto delta = coproduct_sum(a);
    DiagramSum conv = DiagramSum::zero(sig);
    for (const auto& [pair_key, coeff] : delta.terms()) {
      DiagramSum left(sig);
      left.add_term(pair_key.first, 1);
      DiagramSum right(sig);
      right.add_term(pair_key.second, 1);
      conv += coeff * multiply(antipode(left), right);
    }
    b.require(conv == counit_sum(a) * DiagramSum::unit(sig), "antipode identity failed");
    b.require(inner_product(a, a) > 0, "norm not positive");
  }
  (void)seed;
  return b.finish();
}

inline std::vector<Check> acceptance_checks() {
  return {check_hilbert_endo(),       check_quotient_dims(),  check_hilbert_multitensor(),
          check_adjointness(),        check_sum_tensor_compat(), check_kernel_generators(),
          check_endo_suite(),         check_axioms(),         check_canonicalization()};
}

}  // namespace traceinv
