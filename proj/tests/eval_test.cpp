#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "traceinv/evaluate.hpp"

using namespace traceinv;
using namespace testutil;

namespace {

using Matrix = std::vector<std::vector<Rat>>;

Matrix matrix_multiply(const Matrix& a, const Matrix& b) {
  const int n = static_cast<int>(a.size());
  Matrix c(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k)
      for (int j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

Rat matrix_trace(const Matrix& a) {
  Rat t = 0;
  for (std::size_t i = 0; i < a.size(); ++i) t += a[i][i];
  return t;
}

Rat trace_power(const Matrix& a, int k) {
  Matrix acc = a;
  for (int i = 1; i < k; ++i) acc = matrix_multiply(acc, a);
  return matrix_trace(acc);
}

Matrix random_matrix(int d, SeededRng& rng) {
  Matrix m(d, std::vector<Rat>(d));
  for (auto& row : m)
    for (auto& v : row) v = make_rat(rng.uniform(-5, 5));
  return m;
}

// Gauss-Jordan inverse; returns false if singular.
bool matrix_inverse(Matrix a, Matrix& inv) {
  const int n = static_cast<int>(a.size());
  inv.assign(n, std::vector<Rat>(n, 0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1;
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return false;
    std::swap(a[pivot], a[col]);
    std::swap(inv[pivot], inv[col]);
    const Rat f = 1 / a[col][col];
    for (int j = 0; j < n; ++j) {
      a[col][j] *= f;
      inv[col][j] *= f;
    }
    for (int r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rat g = a[r][col];
      for (int j = 0; j < n; ++j) {
        a[r][j] -= g * a[col][j];
        inv[r][j] -= g * inv[col][j];
      }
    }
  }
  return true;
}

// Basis change g . (x_i): conjugates every structure tensor by g.
Structure conjugate_structure(const Structure& s, const Matrix& g) {
  Matrix ginv;
  REQUIRE(matrix_inverse(g, ginv));
  Structure out = zero_structure(s.signature, s.dim);
  for (int i = 0; i < s.signature.arity(); ++i) {
    const int p = s.signature.out_arity(i), q = s.signature.in_arity(i);
    std::vector<int> oi(p + q, 0);
    do {
      std::span<const int> O(oi.data(), p), I(oi.data() + p, q);
      Rat sum = 0;
      std::vector<int> ab(p + q, 0);
      do {
        std::span<const int> A(ab.data(), p), B(ab.data() + p, q);
        Rat term = s.tensors[i].at(A, B);
        if (term == 0) continue;
        for (int sl = 0; sl < p; ++sl) term *= g[O[sl]][A[sl]];
        for (int sl = 0; sl < q; ++sl) term *= ginv[B[sl]][I[sl]];
        sum += term;
      } while (!ab.empty() && traceinv::detail::advance_multi_index(ab, s.dim));
      out.tensors[i].at(O, I) = sum;
    } while (!oi.empty() && traceinv::detail::advance_multi_index(oi, s.dim));
  }
  return out;
}

ClosedDiagram endo_diagram(const Perm& sigma) {
  return canonicalize_closed(sig11(), {sigma.degree()}, 0, sigma);
}

}  // namespace

TEST_CASE("tensor primitives") {
  const RationalTensor id2 = RationalTensor::identity(2);
  const RationalTensor one = RationalTensor::scalar(Rat(1));
  CHECK(tensor_product(RationalTensor::scalar(Rat(1)), RationalTensor::scalar(Rat(7))).entry(0) == 7);

  // Id (x) Id is the identity on index pairs.
  const RationalTensor id_id = tensor_product(id2, id2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d) {
          const int O[] = {a, b}, I[] = {c, d};
          CHECK(id_id.at(O, I) == ((a == c && b == d) ? 1 : 0));
        }

  // Basis product e_1 (x) e_2 has a single entry.
  RationalTensor e1(1, 0, 2), e2(1, 0, 2);
  e1.entry(0) = 1;
  e2.entry(1) = 1;
  const RationalTensor e12 = tensor_product(e1, e2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b) {
      const int O[] = {a, b};
      CHECK(e12.at(O, std::span<const int>{}) == ((a == 0 && b == 1) ? 1 : 0));
    }
}

TEST_CASE("apply_perm") {
  RationalTensor t(2, 1, 2);
  SeededRng rng(7);
  for (std::size_t e = 0; e < t.entry_count(); ++e) t.entry(e) = make_rat(rng.uniform(-5, 5));

  CHECK(apply_perm(t, Perm::identity(2), Side::Out) == t);
  CHECK(apply_perm(t, Perm::identity(1), Side::In) == t);

  // Swap on e_1 (x) e_2 gives e_2 (x) e_1.
  RationalTensor e1(1, 0, 2), e2(1, 0, 2);
  e1.entry(0) = 1;
  e2.entry(1) = 1;
  CHECK(apply_perm(tensor_product(e1, e2), pb({2, 1}), Side::Out) == tensor_product(e2, e1));

  // Composition: applying (123) twice equals applying (132) once.
  RationalTensor u(3, 0, 2);
  for (std::size_t e = 0; e < u.entry_count(); ++e) u.entry(e) = make_rat(rng.uniform(-5, 5));
  const Perm c123 = pb({2, 3, 1});
  const Perm c132 = pb({3, 1, 2});
  CHECK(apply_perm(apply_perm(u, c123, Side::Out), c123, Side::Out) == apply_perm(u, c132, Side::Out));
  // And L_sigma L_sigma^{-1} = Id on both sides.
  CHECK(apply_perm(apply_perm(u, c123, Side::Out), c123.inverse(), Side::Out) == u);
}

TEST_CASE("partial_trace") {
  SeededRng rng(11);
  RationalTensor t(2, 2, 3);
  for (std::size_t e = 0; e < t.entry_count(); ++e) t.entry(e) = make_rat(rng.uniform(-5, 5));
  CHECK(partial_trace(t, 0) == t);

  // Full trace of the identity is the dimension.
  const RationalTensor id3 = RationalTensor::identity(3);
  CHECK(partial_trace(id3, 1).entry(0) == 3);

  // Full trace of the swap operator on two tensor factors is d.
  const RationalTensor swap2 = apply_perm(tensor_product(RationalTensor::identity(2), RationalTensor::identity(2)),
                                          pb({2, 1}), Side::Out);
  CHECK(partial_trace(swap2, 2).entry(0) == 2);

  CHECK_THROWS_AS(partial_trace(t, 3), domain_error);
}

TEST_CASE("evaluate_closed: basic values") {
  for (int d = 0; d <= 4; ++d) {
    SeededRng rng(100 + d);
    const Structure s = random_structure(sig11(), d, rng);
    CHECK(evaluate_closed(dimension_diagram(sig11()), s) == d);
    CHECK(evaluate_closed(unit_diagram(sig11()), s) == 1);
  }

  // Tr(T^2) for the unipotent Jordan block.
  const Structure jordan = endo_structure({{1, 1}, {0, 1}});
  CHECK(evaluate_closed(endo_diagram(pb({2, 1})), jordan) == 2);
  // Tr(T)^2 for the same matrix is 4: distinguishes the two degree-2 diagrams.
  CHECK(evaluate_closed(endo_diagram(Perm::identity(2)), jordan) == 4);
}

TEST_CASE("evaluate_closed: trace monomials per cycle type") {
  SeededRng rng(2024);
  const Matrix t = random_matrix(3, rng);
  const Structure s = endo_structure(t);
  for (const Perm& sigma : all_perms(4)) {
    Rat expected = 1;
    const Partition type = cycle_type(sigma);
    for (int part : type.rows()) expected *= trace_power(t, part);
    CHECK(evaluate_closed(endo_diagram(sigma), s) == expected);
  }
}

TEST_CASE("gate: canonicalization and the relabeling action preserve evaluation") {
  struct Case {
    TypeSignature sig;
    std::vector<int> nd;
    int m;
    int dim;
  };
  const std::vector<Case> cases = {{sig11(), {3}, 0, 3},      {sig11(), {2}, 1, 2},      {sig22(), {2}, 0, 2},
                                   {sig_mixed(), {1, 1}, 0, 2}, {sig_mixed(), {2, 2}, 0, 2}, {sig_alg(), {2, 2}, 0, 2}};
  std::uint64_t seed = 5000;
  for (const auto& c : cases) {
    SeededRng rng(seed++);
    const Structure s = random_structure(c.sig, c.dim, rng);
    const OrbitAction action(c.sig, c.nd, c.m);
    const int n = action.pairs[0].first.degree();
    int checked = 0;
    for (const Perm& sigma : all_perms(n)) {
      const ClosedDiagram canon = canonicalize_closed(c.sig, c.nd, c.m, sigma);
      const Rat value = evaluate_closed(canonicalize_closed(c.sig, c.nd, c.m, sigma), s);
      // The raw wiring evaluates like its canonical form.
      const ClosedDiagram raw = canonicalize_closed(c.sig, c.nd, c.m, canon.sigma());
      CHECK(evaluate_closed(raw, s) == value);
      // Every relabeled wiring evaluates identically.
      for (std::size_t k = 0; k < action.pairs.size(); k += std::max<std::size_t>(1, action.pairs.size() / 6)) {
        const Perm moved = action.act(action.pairs[k], sigma);
        CHECK(evaluate_closed(canonicalize_closed(c.sig, c.nd, c.m, moved), s) == value);
        // Direct check without canonicalizing: plain closures agree.
        const OpenDiagram raw_sigma(c.sig, c.nd, c.m, n, sigma, Perm::identity(n));
        const OpenDiagram raw_moved(c.sig, c.nd, c.m, n, moved, Perm::identity(n));
        CHECK(realize_open(raw_sigma, s).entry(0) == realize_open(raw_moved, s).entry(0));
      }
      if (++checked >= 12) break;
    }
  }
}

TEST_CASE("gate: star product is evaluation-multiplicative") {
  SeededRng rng(31);
  const Structure s = random_structure(sig11(), 3, rng);
  std::vector<ClosedDiagram> samples;
  for (const Perm& g : all_perms(3)) samples.push_back(endo_diagram(g));
  samples.push_back(dimension_diagram(sig11()));
  for (const auto& a : samples)
    for (const auto& b : samples)
      CHECK(evaluate_closed(star_product(a, b), s) == evaluate_closed(a, s) * evaluate_closed(b, s));

  SeededRng rng2(32);
  const Structure s2 = random_structure(sig_mixed(), 2, rng2);
  const ClosedDiagram d1 = canonicalize_closed(sig_mixed(), {1, 1}, 0, pb({2, 3, 1}));
  const ClosedDiagram d2 = canonicalize_closed(sig_mixed(), {1, 1}, 1, pb({1, 4, 3, 2}));
  CHECK(evaluate_closed(star_product(d1, d2), s2) == evaluate_closed(d1, s2) * evaluate_closed(d2, s2));
}

TEST_CASE("gate: identity_reduce preserves evaluation") {
  struct Case {
    TypeSignature sig;
    std::vector<int> nd;
    int m;
    int dim;
  };
  const std::vector<Case> cases = {{sig11(), {2}, 2, 3}, {sig22(), {1}, 2, 2}, {sig_alg(), {1, 1}, 2, 2}};
  std::uint64_t seed = 900;
  for (const auto& c : cases) {
    SeededRng rng(seed++);
    const Structure s = random_structure(c.sig, c.dim, rng);
    const OrbitAction action(c.sig, c.nd, c.m);
    const int n = action.pairs[0].first.degree();
    int checked = 0;
    for (const Perm& sigma : all_perms(n)) {
      const ClosedDiagram d = canonicalize_closed(c.sig, c.nd, c.m, sigma);
      const auto [reduced, power] = identity_reduce(d);
      Rat expected = evaluate_closed(reduced, s);
      for (int i = 0; i < power; ++i) expected *= c.dim;
      CHECK(evaluate_closed(d, s) == expected);
      if (++checked >= 30) break;
    }
  }
}

TEST_CASE("realize_open: generators and identity") {
  SeededRng rng(55);
  const Structure s = random_structure(sig_mixed(), 2, rng);
  CHECK(realize_open(OpenDiagram::generator(sig_mixed(), 0), s) == s.tensors[0]);
  CHECK(realize_open(OpenDiagram::generator(sig_mixed(), 1), s) == s.tensors[1]);
  CHECK(realize_open(OpenDiagram::identity_box(sig_mixed()), s) == RationalTensor::identity(2));
}

TEST_CASE("realize_open: equivalent diagrams realize identically") {
  SeededRng rng(56);
  const Structure s = random_structure(sig11(), 3, rng);
  // Twisted, padded, and plain versions of the single box.
  const OpenDiagram plain = OpenDiagram::generator(sig11(), 0);
  const OpenDiagram padded(sig11(), {1}, 1, 1, pb({2, 1}), pb({1, 2}));
  CHECK(realize_open(padded, s) == realize_open(plain, s));
  CHECK(realize_open(normalize_open(padded), s) == realize_open(padded, s));

  // Open product realizes as the tensor product of realizations.
  const OpenDiagram prod = open_product(plain, padded);
  CHECK(realize_open(prod, s) == tensor_product(realize_open(plain, s), realize_open(padded, s)));

  // Random two-box open diagrams: normalization does not change realization.
  for (const Perm& sigma : all_perms(2))
    for (const Perm& tau : all_perms(2)) {
      const OpenDiagram dg(sig11(), {2}, 0, 1, sigma, tau);
      CHECK(realize_open(normalize_open(dg), s) == realize_open(dg, s));
    }
}

TEST_CASE("pair_close: commuting square") {
  SeededRng rng(57);
  const Structure s = random_structure(sig11(), 2, rng);
  // x of degree (1,1): the generator; y of degree (1,1): identity box or a
  // twisted two-box diagram.
  const OpenDiagram x = OpenDiagram::generator(sig11(), 0);
  const std::vector<OpenDiagram> ys = {OpenDiagram::identity_box(sig11()), OpenDiagram(sig11(), {2}, 0, 1, pb({2, 1}), pb({1, 2})),
                                       OpenDiagram(sig11(), {1}, 0, 0, Perm::identity(1), Perm::identity(1))};
  for (const auto& y : ys) {
    const ClosedDiagram closed = pair_close(x, y);
    const RationalTensor rx = realize_open(x, s), ry = realize_open(y, s);
    Rat contraction = 0;
    for (int o = 0; o < 2; ++o)
      for (int i = 0; i < 2; ++i) {
        const int O[] = {o}, I[] = {i};
        contraction += rx.at(O, I) * ry.at(I, O);
      }
    CHECK(evaluate_closed(closed, s) == contraction);
  }
}

TEST_CASE("gate: basis change invariance") {
  struct Case {
    TypeSignature sig;
    std::vector<int> nd;
    int dim;
  };
  const std::vector<Case> cases = {{sig11(), {3}, 2}, {sig11(), {4}, 3}, {sig22(), {2}, 2}, {sig_mixed(), {1, 1}, 3}};
  std::uint64_t seed = 7100;
  for (const auto& c : cases) {
    SeededRng rng(seed++);
    const Structure s = random_structure(c.sig, c.dim, rng);
    Matrix g;
    Matrix ginv;
    do {
      g = random_matrix(c.dim, rng);
    } while (!matrix_inverse(g, ginv));
    const Structure moved = conjugate_structure(s, g);
    const auto basis = graded_basis(c.sig, c.nd);
    for (const auto& d : basis) CHECK(evaluate_closed(d, moved) == evaluate_closed(d, s));
  }
}

TEST_CASE("direct sum and tensor product of structures") {
  SeededRng rng(60);
  const Structure s = random_structure(sig_mixed(), 2, rng);

  const Structure zero = zero_structure(sig_mixed(), 0);
  const Structure sum = direct_sum(s, zero);
  CHECK(sum.dim == s.dim);
  for (int i = 0; i < s.signature.arity(); ++i) CHECK(sum.tensors[i] == s.tensors[i]);

  const Structure unit = unit_structure(sig_mixed());
  const Structure prod = tensor_structures(s, unit);
  CHECK(prod.dim == s.dim);
  for (int i = 0; i < s.signature.arity(); ++i) CHECK(prod.tensors[i] == s.tensors[i]);

  SeededRng rng2(61);
  const Structure s2 = random_structure(sig_mixed(), 3, rng2);
  CHECK(direct_sum(s, s2).dim == 5);
  CHECK(tensor_structures(s, s2).dim == 6);
}

TEST_CASE("gate: direct sums add on connected diagrams, tensor products multiply on all") {
  SeededRng rng(62);
  const Structure s1 = random_structure(sig11(), 2, rng);
  const Structure s2 = random_structure(sig11(), 3, rng);
  const Structure sum = direct_sum(s1, s2);
  const Structure prod = tensor_structures(s1, s2);

  for (int n = 1; n <= 4; ++n)
    for (const auto& d : graded_basis(sig11(), {n})) {
      if (is_connected(d))
        CHECK(evaluate_closed(d, sum) == evaluate_closed(d, s1) + evaluate_closed(d, s2));
      CHECK(evaluate_closed(d, prod) == evaluate_closed(d, s1) * evaluate_closed(d, s2));
    }
}

TEST_CASE("gate: alternating sums over S_{d+1} vanish in dimension d") {
  std::uint64_t seed = 8800;
  for (int d = 1; d <= 3; ++d) {
    const int n = d + 1;
    SeededRng rng(seed++);
    const Structure s = random_structure(sig11(), d, rng);
    SeededRng tau_rng(seed++);
    for (int trial = 0; trial < 3; ++trial) {
      // Random tau_1, tau_2 via random words.
      auto random_perm = [&](int deg) {
        std::vector<int> w(deg);
        std::iota(w.begin(), w.end(), 0);
        for (int i = deg - 1; i > 0; --i) std::swap(w[i], w[tau_rng.uniform(0, i)]);
        return Perm(std::move(w));
      };
      const Perm tau1 = random_perm(n), tau2 = random_perm(n);
      Rat sum = 0;
      for (const Perm& sigma : all_perms(n)) {
        const int sign = (n - cycle_type(sigma).row_count()) % 2 == 0 ? 1 : -1;
        sum += make_rat(sign) * evaluate_closed(endo_diagram(compose(tau1, compose(sigma, tau2))), s);
      }
      CHECK(sum == 0);
    }
  }
}

TEST_CASE("evaluation_rank") {
  CHECK(evaluation_rank(sig11(), {4}, 2, 10, 42) == 3);
  CHECK(evaluation_rank(sig11(), {3}, 0, 5, 42) == 0);
  // Injective range: rank equals the full graded dimension once d >= n.
  for (int n = 1; n <= 4; ++n) {
    const auto basis = graded_basis(sig11(), {n});
    CHECK(evaluation_rank(sig11(), {n}, n, static_cast<int>(basis.size()) + 4, 7) ==
          static_cast<int>(basis.size()));
  }
  // Deterministic for a fixed seed.
  CHECK(evaluation_rank(sig11(), {4}, 2, 10, 99) == evaluation_rank(sig11(), {4}, 2, 10, 99));
}
