#include <catch2/catch_amalgamated.hpp>

#include "test_util.hpp"
#include "traceinv/evaluate.hpp"
#include "traceinv/hilbert.hpp"
#include "traceinv/symfunc.hpp"

using namespace traceinv;
using namespace testutil;

namespace {

Partition pn(std::vector<int> rows) { return Partition(std::move(rows)); }

// Independent oracle: graded dimension of a polynomial ring on generators of
// degrees 1..d, by dynamic programming over parts of size at most d.
long long poly_ring_dim(int n, int d) {
  std::vector<long long> ways(n + 1, 0);
  ways[0] = 1;
  for (int part = 1; part <= d; ++part)
    for (int total = part; total <= n; ++total) ways[total] += ways[total - part];
  return ways[n];
}

}  // namespace

TEST_CASE("schur_to_powersum: small cases") {
  CHECK(schur_to_powersum(pn({1})) == SymFunc::power_sum(pn({1})));

  SymFunc s2(SymBasis::PowerSum);
  s2.add_term(pn({2}), make_rat(1, 2));
  s2.add_term(pn({1, 1}), make_rat(1, 2));
  CHECK(schur_to_powersum(pn({2})) == s2);

  SymFunc s11(SymBasis::PowerSum);
  s11.add_term(pn({2}), make_rat(-1, 2));
  s11.add_term(pn({1, 1}), make_rat(1, 2));
  CHECK(schur_to_powersum(pn({1, 1})) == s11);
}

TEST_CASE("basis conversions are mutually inverse") {
  for (int n = 0; n <= 6; ++n)
    for (const auto& lambda : list_partitions(n)) {
      CHECK(to_schur(schur_to_powersum(lambda)) == SymFunc::schur(lambda));
      CHECK(to_powersum(powersum_to_schur(lambda)) == SymFunc::power_sum(lambda));
    }
}

TEST_CASE("powersum_to_schur: hook support on a full cycle") {
  CHECK(powersum_to_schur(pn({1})) == SymFunc::schur(pn({1})));
  // Only hook shapes carry a full cycle.
  for (int n = 2; n <= 6; ++n) {
    const SymFunc f = powersum_to_schur(pn({n}));
    for (const auto& [lambda, coeff] : f.terms()) {
      const bool is_hook = lambda.row_count() == 1 || lambda.rows()[1] == 1;
      CHECK(is_hook);
      CHECK((coeff == 1 || coeff == -1));
    }
    CHECK(f.terms().size() == static_cast<std::size_t>(n));
  }
}

TEST_CASE("schur_product matches the coefficient family") {
  SymFunc expect(SymBasis::Schur);
  expect.add_term(pn({2}), 1);
  expect.add_term(pn({1, 1}), 1);
  CHECK(schur_product(pn({1}), pn({1})) == expect);

  for (int a = 1; a <= 4; ++a)
    for (const auto& lambda : list_partitions(a)) CHECK(schur_product(lambda, Partition()) == SymFunc::schur(lambda));

  // Multiply via power sums, convert back: identical coefficients.
  for (int a = 1; a <= 3; ++a)
    for (int b = 1; b <= 3; ++b)
      for (const auto& lambda : list_partitions(a))
        for (const auto& mu : list_partitions(b)) {
          const SymFunc direct = schur_product(lambda, mu);
          const SymFunc via_powersum =
              to_schur(sym_multiply(SymFunc::schur(lambda), SymFunc::schur(mu)));
          CHECK(direct == via_powersum);
          for (const auto& [nu, coeff] : direct.terms())
            CHECK(coeff == make_rat(lr_coefficient(nu, lambda, mu)));
        }
}

TEST_CASE("jacobi_trudi") {
  for (int n = 1; n <= 4; ++n) CHECK(jacobi_trudi(pn({n})) == SymFunc::schur(pn({n})));

  // X_1^2 - X_2 = {(1,1)}.
  const SymFunc x1sq_minus_x2 =
      to_schur(sym_multiply(complete_homogeneous(1), complete_homogeneous(1)) - complete_homogeneous(2));
  CHECK(x1sq_minus_x2 == SymFunc::schur(pn({1, 1})));
  CHECK(jacobi_trudi(pn({1, 1})) == SymFunc::schur(pn({1, 1})));

  // X_2 X_1 - X_3 = {(2,1)}.
  const SymFunc x2x1_minus_x3 =
      to_schur(sym_multiply(complete_homogeneous(2), complete_homogeneous(1)) - complete_homogeneous(3));
  CHECK(x2x1_minus_x3 == SymFunc::schur(pn({2, 1})));
  CHECK(jacobi_trudi(pn({2, 1})) == SymFunc::schur(pn({2, 1})));

  // Determinant identity for every shape up to degree 6.
  for (int n = 0; n <= 6; ++n)
    for (const auto& lambda : list_partitions(n)) CHECK(jacobi_trudi(lambda) == SymFunc::schur(lambda));
}

TEST_CASE("transpose_map") {
  for (int n = 1; n <= 5; ++n) {
    CHECK(transpose_map(SymFunc::schur(pn({n}))) == SymFunc::schur(Partition(std::vector<int>(n, 1))));
    for (const auto& lambda : list_partitions(n)) {
      // Involution, in both bases.
      CHECK(transpose_map(transpose_map(SymFunc::schur(lambda))) == SymFunc::schur(lambda));
      // The two basis descriptions agree.
      CHECK(to_powersum(transpose_map(SymFunc::schur(lambda))) ==
            transpose_map(schur_to_powersum(lambda)));
    }
  }

  // Homomorphism spot check: t({1}{1}) = t({2}) + t({1,1}).
  const SymFunc lhs = transpose_map(schur_product(pn({1}), pn({1})));
  SymFunc rhs = transpose_map(SymFunc::schur(pn({2})));
  rhs += transpose_map(SymFunc::schur(pn({1, 1})));
  CHECK(lhs == rhs);
}

TEST_CASE("in_ideal_id") {
  CHECK(in_ideal_id(SymFunc::schur(pn({1, 1})), 1));
  CHECK_FALSE(in_ideal_id(SymFunc::power_sum(pn({2})), 1));
  CHECK_FALSE(in_ideal_id(SymFunc::schur(pn({2})), 1));
  CHECK(in_ideal_id(SymFunc::zero(SymBasis::Schur), 0));
  // Nothing of low row count lies in a deep ideal.
  for (int n = 1; n <= 4; ++n)
    for (const auto& lambda : list_partitions(n)) CHECK_FALSE(in_ideal_id(SymFunc::schur(lambda), n));
}

TEST_CASE("orthonormality of the Schur-type basis") {
  for (int n = 0; n <= 7; ++n)
    for (const auto& lambda : list_partitions(n))
      for (const auto& mu : list_partitions(n))
        CHECK(sym_inner_product(SymFunc::schur(lambda), SymFunc::schur(mu)) == (lambda == mu ? 1 : 0));
}

TEST_CASE("inner product transports to the diagram algebra") {
  for (int n = 1; n <= 5; ++n)
    for (const auto& mu : list_partitions(n))
      for (const auto& nu : list_partitions(n)) {
        const Rat sym = sym_inner_product(SymFunc::power_sum(mu), SymFunc::power_sum(nu));
        const Rat diag = inner_product(diagram_sum_from_sym(SymFunc::power_sum(mu)),
                                       diagram_sum_from_sym(SymFunc::power_sum(nu)));
        CHECK(sym == diag);
      }
}

TEST_CASE("bridge: power sums are the diagram basis") {
  for (int n = 0; n <= 5; ++n)
    for (const auto& mu : list_partitions(n)) {
      const DiagramSum e = diagram_sum_from_sym(SymFunc::power_sum(mu));
      CHECK(e.terms().size() == 1);
      CHECK(sym_from_diagram_sum(e) == SymFunc::power_sum(mu));
    }
  // The bridge is an algebra map.
  const SymFunc a = SymFunc::power_sum(pn({2, 1}));
  const SymFunc b = SymFunc::power_sum(pn({3}));
  CHECK(diagram_sum_from_sym(sym_multiply(a, b)) ==
        multiply(diagram_sum_from_sym(a), diagram_sum_from_sym(b)));
}

TEST_CASE("evaluation: {lambda} vanishes exactly when rows exceed the dimension") {
  std::uint64_t seed = 31337;
  for (int n = 1; n <= 5; ++n)
    for (int d = 1; d <= 3; ++d) {
      SeededRng rng(seed++);
      const Structure s = random_structure(endo_signature(), d, rng);
      for (const auto& lambda : list_partitions(n)) {
        const Rat value = evaluate_element(diagram_sum_from_sym(schur_to_powersum(lambda)), s);
        if (lambda.row_count() > d) {
          CHECK(value == 0);
        } else {
          // Generic nonvanishing: retry on a second seeded witness if needed.
          if (value == 0) {
            SeededRng rng2(seed + 1000);
            const Structure s2 = random_structure(endo_signature(), d, rng2);
            CHECK(evaluate_element(diagram_sum_from_sym(schur_to_powersum(lambda)), s2) != 0);
          }
        }
      }
    }
}

TEST_CASE("quotient Hilbert function equals a polynomial ring's") {
  for (int n = 0; n <= 10; ++n)
    for (int d = 0; d <= 4; ++d) {
      CHECK(static_cast<long long>(list_partitions(n, d).size()) == poly_ring_dim(n, d));
      CHECK(quotient_dim(endo_signature(), {n}, d) == poly_ring_dim(n, d));
    }
}
