#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "test_util.hpp"
#include "traceinv/theory.hpp"

using namespace traceinv;
using namespace testutil;

TEST_CASE("associativity and left unit hold for matrix algebras") {
  for (int k = 1; k <= 2; ++k) {
    const Structure algebra = matrix_algebra(k);
    CHECK(realize_axiom(associativity_axiom(), algebra).is_zero());
    CHECK(realize_axiom(left_unit_axiom(), algebra).is_zero());
    CHECK(is_model(associative_unital_theory(), algebra));
  }
  CHECK(is_model(commutative_theory(), diagonal_algebra(3)));
  // Matrices of size 2 do not commute.
  CHECK_FALSE(is_model(commutative_theory(), matrix_algebra(2)));
}

TEST_CASE("perturbing a structure constant breaks the axioms") {
  Structure broken = matrix_algebra(2);
  broken.tensors[0].entry(7) += 1;
  CHECK_FALSE(is_model(associative_unital_theory(), broken));
  bool assoc_broken = !realize_axiom(associativity_axiom(), broken).is_zero();
  bool unit_broken = !realize_axiom(left_unit_axiom(), broken).is_zero();
  CHECK((assoc_broken || unit_broken));
}

TEST_CASE("empty theory admits every structure") {
  const Theory empty{algebra_signature(), {}};
  SeededRng rng(5);
  CHECK(is_model(empty, random_structure(algebra_signature(), 2, rng)));
}

TEST_CASE("pair_element: closing one box against the identity") {
  // Pairing the generator box with the identity box over ((1,1)) gives the
  // plain trace diagram.
  const TypeSignature sig = sig11();
  const Axiom single(1, 1, {{Rat(1), OpenDiagram::generator(sig, 0)}});
  const DiagramSum closed = pair_element(sig, single, OpenDiagram::identity_box(sig));
  DiagramSum expected = DiagramSum::from_closed(canonicalize_closed(sig, {1}, 0, Perm::identity(1)));
  CHECK(closed == expected);

  // Bilinearity: zero combination pairs to zero.
  const Axiom zero(1, 1, {});
  CHECK(pair_element(sig, zero, OpenDiagram::identity_box(sig)).is_zero());
}

TEST_CASE("pair_element: commuting square on seeded random data") {
  const TypeSignature sig = algebra_signature();
  const Axiom assoc = associativity_axiom();
  std::uint64_t seed = 21000;
  // Complements of degree (3,1) within three boxes.
  const auto complements = enumerate_open_diagrams(sig, assoc.in_degree, assoc.out_degree, 3);
  REQUIRE(!complements.empty());
  int used = 0;
  for (const auto& y : complements) {
    SeededRng rng(seed++);
    const Structure s = random_structure(sig, 2, rng);
    const DiagramSum paired = pair_element(sig, assoc, y);
    const RationalTensor rx = realize_axiom(assoc, s);
    const RationalTensor ry = realize_open(y, s);
    // Full contraction: sum over all index tuples of the two realizations.
    Rat contraction = 0;
    std::vector<int> idx(assoc.out_degree + assoc.in_degree, 0);
    do {
      std::span<const int> O(idx.data(), assoc.out_degree), I(idx.data() + assoc.out_degree, assoc.in_degree);
      contraction += rx.at(O, I) * ry.at(I, O);
    } while (traceinv::detail::advance_multi_index(idx, s.dim));
    CHECK(evaluate_element(paired, s) == contraction);
    if (++used >= 8) break;
  }
}

TEST_CASE("ideal generators vanish on models") {
  const Theory theory = associative_unital_theory();
  const auto gens = ideal_generators_upto(theory, 2);
  CHECK_FALSE(gens.empty());
  const Structure model1 = matrix_algebra(1);
  const Structure model2 = matrix_algebra(2);
  for (const auto& g : gens) {
    CHECK(evaluate_element(g, model2) == 0);
    CHECK(evaluate_element(g, model1) == 0);
  }

  // A perturbation visible to low-degree trace invariants: bend the
  // distinguished element in a traceful direction.
  Structure broken = matrix_algebra(2);
  broken.tensors[1].entry(0) += 1;
  bool witnessed = false;
  for (const auto& g : gens)
    if (evaluate_element(g, broken) != 0) witnessed = true;
  CHECK(witnessed);
}

TEST_CASE("commutativity generators vanish on the diagonal model") {
  const Theory theory = commutative_theory();
  const auto gens = ideal_generators_upto(theory, 2);
  CHECK_FALSE(gens.empty());
  const Structure diag = diagonal_algebra(2);
  for (const auto& g : gens) CHECK(evaluate_element(g, diag) == 0);
  // Over a matrix product every bound-2 closure is a difference of left- and
  // right-multiplication traces, which agree; a generic multiplication
  // separates them.
  for (const auto& g : gens) CHECK(evaluate_element(g, matrix_algebra(2)) == 0);
  bool witnessed = false;
  for (std::uint64_t seed = 400; seed < 410 && !witnessed; ++seed) {
    SeededRng rng(seed);
    const Structure generic = random_structure(algebra_signature(), 2, rng);
    for (const auto& g : gens)
      if (evaluate_element(g, generic) != 0) witnessed = true;
  }
  CHECK(witnessed);
}

TEST_CASE("theory files round-trip the built-in axioms") {
  // The associativity + left-unit theory written out by hand.
  const std::string text = R"(
# algebra with a distinguished element
signature 1 2 1 0
axiom 1 3
term 1 c(1; id; [3,4,2,1]; 2,0; 0)
term -1 c(1; id; [1,3,4,2]; 2,0; 0)
axiom 1 1
term 1 c(1; id; [2,1]; 1,1; 0)
term -1 c(0; id; id; 0,0; 1)
)";
  std::istringstream is(text);
  const Theory parsed = read_theory(is);
  REQUIRE(parsed.axioms.size() == 2);
  CHECK(parsed.signature == algebra_signature());
  CHECK(is_model(parsed, matrix_algebra(2)));

  Structure broken = matrix_algebra(2);
  broken.tensors[0].entry(3) += 1;
  CHECK_FALSE(is_model(parsed, broken));

  // Parsed axioms realize identically to the built-ins on random structures.
  SeededRng rng(77);
  const Structure s = random_structure(algebra_signature(), 2, rng);
  CHECK(realize_axiom(parsed.axioms[0], s) == realize_axiom(associativity_axiom(), s));
  CHECK(realize_axiom(parsed.axioms[1], s) == realize_axiom(left_unit_axiom(), s));
}

TEST_CASE("enumerate_open_diagrams: small inventories") {
  const TypeSignature sig = sig11();
  // Degree (1,1), at most one box: the identity box and the generator.
  const auto inventory = enumerate_open_diagrams(sig, 1, 1, 1);
  CHECK(inventory.size() == 2);
  // Degree (0,0), at most one box: empty diagram, dimension loop, trace loop.
  const auto closed = enumerate_open_diagrams(sig, 0, 0, 1);
  CHECK(closed.size() == 3);
}
