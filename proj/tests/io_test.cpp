#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "test_util.hpp"
#include "traceinv/evaluate.hpp"
#include "traceinv/io.hpp"

using namespace traceinv;
using namespace testutil;

TEST_CASE("permutation literals") {
  CHECK(parse_perm_literal("[4,5,2,3,1]", 5) == pb({4, 5, 2, 3, 1}));
  CHECK(parse_perm_literal("(1 3)(2 5 4)", 5) == pb({3, 5, 1, 2, 4}));
  CHECK(parse_perm_literal("id", 3) == Perm::identity(3));
  CHECK(parse_perm_literal("", 2) == Perm::identity(2));
  CHECK(parse_perm_literal("(1 2 3)", 3) == pb({2, 3, 1}));
  CHECK_THROWS_AS(parse_perm_literal("[1,2", 2), parse_error);
  CHECK_THROWS_AS(parse_perm_literal("(1 9)", 3), parse_error);

  // Round trip through both printers, exhaustively in S_4.
  for (const Perm& p : all_perms(4)) {
    CHECK(parse_perm_literal(print_perm_cycles(p), 4) == p);
    CHECK(parse_perm_literal(print_perm_word(p), 4) == p);
  }
}

TEST_CASE("partition literals") {
  CHECK(parse_partition_literal("(3,1,1)") == Partition({3, 1, 1}));
  CHECK(parse_partition_literal("()") == Partition());
  CHECK_THROWS_AS(parse_partition_literal("(1,3)"), domain_error);
  for (int n = 0; n <= 6; ++n)
    for (const auto& p : list_partitions(n)) CHECK(parse_partition_literal(print_partition(p)) == p);
}

TEST_CASE("closed diagram literals") {
  const ClosedDiagram d = parse_closed_literal(sig11(), "p((1 2 3); 3)");
  CHECK(d == canonicalize_closed(sig11(), {3}, 0, pb({2, 3, 1})));

  const ClosedDiagram unit = parse_closed_literal(sig11(), "p(; 0)");
  CHECK(unit.is_unit());

  const ClosedDiagram dim = parse_closed_literal(sig11(), "p(; 0; 1)");
  CHECK(dim == dimension_diagram(sig11()));

  const ClosedDiagram mixed = parse_closed_literal(sig_mixed(), "p((1 3); 1,1)");
  CHECK(mixed.multidegree() == std::vector<int>{1, 1});

  CHECK_THROWS_AS(parse_closed_literal(sig11(), "p((1 2); 1)"), parse_error);  // out-of-range point
  const TypeSignature lopsided({{1, 2}});
  CHECK_THROWS_AS(parse_closed_literal(lopsided, "p(; 1)"), domain_error);  // unbalanced degree
  CHECK_THROWS_AS(parse_closed_literal(sig11(), "q(; 0)"), parse_error);

  // Print/parse round trip over a basis.
  for (int n = 0; n <= 4; ++n)
    for (const auto& b : graded_basis(sig11(), {n}))
      CHECK(parse_closed_literal(sig11(), print_closed_diagram(b)) == b);
}

TEST_CASE("element literals") {
  const DiagramSum e = parse_element_literal(sig11(), "3/2*p((1 2); 2) + p(; 0)");
  CHECK(e.terms().size() == 2);
  CHECK(counit_sum(e) == 1);

  const DiagramSum d = parse_element_literal(sig11(), "D^2");
  CHECK(d.terms().size() == 1);
  CHECK(d.terms().begin()->first.d_power == 2);

  const DiagramSum combo = parse_element_literal(sig11(), "-2*D*p((1 2); 2) + 1/3*p(; 0) - p((1)(2); 2)");
  CHECK(combo.terms().size() == 3);

  // Identity boxes in literals reduce to dimension powers.
  const DiagramSum reduced = parse_element_literal(sig11(), "p(; 0; 2)");
  CHECK(reduced == parse_element_literal(sig11(), "D^2"));

  // Round trip: parse(print(e)) == e on assorted elements.
  std::vector<std::string> sources = {"3/2*p((1 2); 2) + p(; 0)", "D^2 - p((1 2 3); 3)",
                                      "p((1 2); 2) - 7/3*D*p((1 2); 2)", "0*p(; 0)"};
  for (const auto& src : sources) {
    const DiagramSum parsed = parse_element_literal(sig11(), src);
    CHECK(parse_element_literal(sig11(), print_element(parsed)) == parsed);
  }
}

TEST_CASE("element literal printing is sorted and stable") {
  const DiagramSum e = parse_element_literal(sig11(), "p((1 2 3); 3) + p((1 2); 2) + p(; 0)");
  const std::string text = print_element(e);
  // Degree 0, then 2, then 3.
  CHECK(text.find("p(id; 0)") < text.find("p((1 2); 2)"));
  CHECK(text.find("p((1 2); 2)") < text.find("(1 2 3)"));
  CHECK(print_element(parse_element_literal(sig11(), text)) == text);
  CHECK(print_element(DiagramSum::zero(sig11())) == "0");
}

TEST_CASE("structure files round trip") {
  SeededRng rng(12);
  const Structure s = random_structure(sig_mixed(), 2, rng);
  std::ostringstream os;
  write_structure(os, s);
  std::istringstream is(os.str());
  const Structure back = read_structure(is);
  CHECK(back.signature == s.signature);
  CHECK(back.dim == s.dim);
  for (int i = 0; i < s.signature.arity(); ++i) CHECK(back.tensors[i] == s.tensors[i]);

  // Sparse entry conventions: omitted entries are zero, duplicates rejected.
  const std::string text = "signature 1 1\ndim 2\ntensor 1\n1 1 5\n2 2 -1/2\n";
  std::istringstream ok(text);
  const Structure sparse = read_structure(ok);
  CHECK(sparse.tensors[0].entry(0) == 5);
  CHECK(sparse.tensors[0].entry(1) == 0);
  CHECK(sparse.tensors[0].entry(3) == make_rat(-1, 2));

  std::istringstream dup("signature 1 1\ndim 2\ntensor 1\n1 1 5\n1 1 3\n");
  CHECK_THROWS_AS(read_structure(dup), parse_error);
}

TEST_CASE("signature and multidegree parsing") {
  CHECK(parse_signature("1 1") == sig11());
  CHECK(parse_signature("2 1 1 2") == sig_mixed());
  CHECK_THROWS_AS(parse_signature("1"), parse_error);
  CHECK(parse_multidegree("4", 1) == std::vector<int>{4});
  CHECK(parse_multidegree("1,2", 2) == std::vector<int>{1, 2});
  CHECK(parse_multidegree("1 2", 2) == std::vector<int>{1, 2});
  CHECK_THROWS_AS(parse_multidegree("1", 2), parse_error);
}
