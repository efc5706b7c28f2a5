#pragma once

#include <istream>
#include <set>
#include <sstream>
#include <vector>

#include "traceinv/evaluate.hpp"
#include "traceinv/io.hpp"

namespace traceinv {

// A diagrammatic axiom: a rational combination of open diagrams sharing one
// degree; a structure models it when the combination realizes to zero.
struct Axiom {
  int out_degree = 0;
  int in_degree = 0;
  std::vector<std::pair<Rat, OpenDiagram>> terms;

  Axiom(int p, int q, std::vector<std::pair<Rat, OpenDiagram>> ts)
      : out_degree(p), in_degree(q), terms(std::move(ts)) {
    for (const auto& [coeff, dg] : terms)
      if (dg.out_degree() != p || dg.in_degree() != q) throw domain_error("axiom term degree mismatch");
  }
};

struct Theory {
  TypeSignature signature;
  std::vector<Axiom> axioms;
};

inline RationalTensor realize_axiom(const Axiom& axiom, const Structure& s,
                                    const Limits& limits = default_limits()) {
  RationalTensor acc(axiom.out_degree, axiom.in_degree, s.dim, limits);
  for (const auto& [coeff, dg] : axiom.terms) {
    const RationalTensor part = realize_open(dg, s, limits);
    for (std::size_t e = 0; e < acc.entry_count(); ++e) acc.entry(e) += coeff * part.entry(e);
  }
  return acc;
}

inline bool is_model(const Theory& theory, const Structure& s, const Limits& limits = default_limits()) {
  if (theory.signature != s.signature) throw domain_error("is_model: signature mismatch");
  for (const auto& axiom : theory.axioms)
    if (!realize_axiom(axiom, s, limits).is_zero()) return false;
  return true;
}

// Closes each term of the axiom against the complement diagram; the result
// evaluates on any structure to the full contraction of the two realizations.
inline DiagramSum pair_element(const TypeSignature& sig, const Axiom& axiom, const OpenDiagram& y,
                               const Limits& limits = default_limits()) {
  if (y.out_degree() != axiom.in_degree || y.in_degree() != axiom.out_degree)
    throw domain_error("pair_element: complement degree must transpose the axiom degree");
  DiagramSum out(sig);
  for (const auto& [coeff, dg] : axiom.terms) {
    DiagramSum term = DiagramSum::from_closed(pair_close(dg, y, limits), limits);
    term *= coeff;
    out += term;
  }
  return out;
}

namespace detail {

// All multidegree vectors of length r with entry sum <= cap.
inline std::vector<std::vector<int>> bounded_multidegrees(int r, int cap) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur(r, 0);
  auto recurse = [&](auto&& self, int slot, int left) -> void {
    if (slot == r) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v <= left; ++v) {
      cur[slot] = v;
      self(self, slot + 1, left - v);
    }
    cur[slot] = 0;
  };
  recurse(recurse, 0, cap);
  return out;
}

}  // namespace detail

// All inequivalent open diagrams of the given degree with at most `max_boxes`
// boxes (structure boxes and identity boxes both counted), as normal forms.
inline std::vector<OpenDiagram> enumerate_open_diagrams(const TypeSignature& sig, int out_degree, int in_degree,
                                                        int max_boxes, const Limits& limits = default_limits()) {
  std::set<OpenDiagram> found;
  for (const auto& nd : detail::bounded_multidegrees(sig.arity(), max_boxes)) {
    int used = 0;
    for (int v : nd) used += v;
    for (int m = 0; used + m <= max_boxes; ++m) {
      int t_out = m, t_in = m;
      for (int i = 0; i < sig.arity(); ++i) {
        t_out += nd[i] * sig.out_arity(i);
        t_in += nd[i] * sig.in_arity(i);
      }
      const int j = t_out - out_degree;
      if (j < 0 || t_in - in_degree != j) continue;
      unsigned long long shapes = 1;
      for (int k = 2; k <= t_out; ++k) {
        shapes *= static_cast<unsigned long long>(k);
        if (shapes > limits.enumeration) throw limit_error("enumerate_open_diagrams: too many wirings");
      }
      for (int k = 2; k <= t_in; ++k) {
        shapes *= static_cast<unsigned long long>(k);
        if (shapes > limits.enumeration) throw limit_error("enumerate_open_diagrams: too many wirings");
      }
      std::vector<int> sw(t_out), tw(t_in);
      std::iota(sw.begin(), sw.end(), 0);
      do {
        std::iota(tw.begin(), tw.end(), 0);
        do {
          const OpenDiagram dg(sig, nd, m, j, Perm(std::vector<int>(sw)), Perm(std::vector<int>(tw)));
          found.insert(normalize_open(dg, limits));
        } while (std::next_permutation(tw.begin(), tw.end()));
      } while (std::next_permutation(sw.begin(), sw.end()));
    }
  }
  return {found.begin(), found.end()};
}

// pair(axiom, y) for every inequivalent complement y within the box bound,
// deduplicated as elements (up to overall sign), zeros dropped.
inline std::vector<DiagramSum> ideal_generators_upto(const Theory& theory, int size_bound,
                                                     const Limits& limits = default_limits()) {
  std::vector<DiagramSum> out;
  std::set<std::vector<std::pair<DiagramKey, Rat>>> seen;
  for (const auto& axiom : theory.axioms) {
    const auto complements =
        enumerate_open_diagrams(theory.signature, axiom.in_degree, axiom.out_degree, size_bound, limits);
    for (const auto& y : complements) {
      DiagramSum gen = pair_element(theory.signature, axiom, y, limits);
      if (gen.is_zero()) continue;
      std::vector<std::pair<DiagramKey, Rat>> flat(gen.terms().begin(), gen.terms().end());
      if (flat.front().second < 0)
        for (auto& [k, c] : flat) c = -c;
      if (seen.insert(flat).second) {
        DiagramSum normalized(theory.signature);
        for (const auto& [k, c] : flat) normalized.add_term(k, c);
        out.push_back(std::move(normalized));
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Built-in axioms over the signature ((1,2),(1,0)): a multiplication tensor
// and a distinguished element.
// ---------------------------------------------------------------------------

inline TypeSignature algebra_signature() { return TypeSignature({{1, 2}, {1, 0}}); }

// m(m(a,b),c) - m(a,m(b,c)) as a degree-(1,3) combination.  Boxes: two
// multiplication boxes; box 0 is the outer one, box 1 the inner one; the
// single wire carries the inner product into the outer box.
inline Axiom associativity_axiom() {
  const TypeSignature sig = algebra_signature();
  // (ab)c: inner gets inputs a,b; outer gets (wire, c).
  const OpenDiagram left(sig, {2, 0}, 0, 1, Perm::identity(2), Perm({2, 3, 1, 0}));
  // a(bc): inner gets inputs b,c; outer gets (a, wire).
  const OpenDiagram right(sig, {2, 0}, 0, 1, Perm::identity(2), Perm({0, 2, 3, 1}));
  return Axiom(1, 3, {{Rat(1), left}, {Rat(-1), right}});
}

// m(u, a) - a as a degree-(1,1) combination.
inline Axiom left_unit_axiom() {
  const TypeSignature sig = algebra_signature();
  // Boxes: multiplication (outs 0, ins 0,1) and the unit (out 1, no ins).
  // The unit output runs through the wire into the first multiplication slot.
  const OpenDiagram applied(sig, {1, 1}, 0, 1, Perm::identity(2), Perm({1, 0}));
  const OpenDiagram identity = OpenDiagram::identity_box(sig);
  return Axiom(1, 1, {{Rat(1), applied}, {Rat(-1), identity}});
}

// m(a, b) - m(b, a) as a degree-(1,2) combination.
inline Axiom commutativity_axiom() {
  const TypeSignature sig = algebra_signature();
  const OpenDiagram plain(sig, {1, 0}, 0, 0, Perm::identity(1), Perm::identity(2));
  const OpenDiagram swapped(sig, {1, 0}, 0, 0, Perm::identity(1), Perm({1, 0}));
  return Axiom(1, 2, {{Rat(1), plain}, {Rat(-1), swapped}});
}

inline Theory associative_unital_theory() {
  return Theory{algebra_signature(), {associativity_axiom(), left_unit_axiom()}};
}

inline Theory commutative_theory() { return Theory{algebra_signature(), {commutativity_axiom()}}; }

// ---------------------------------------------------------------------------
// Theory files: line oriented,
//   signature p1 q1 p2 q2 ...
//   axiom p q
//   term COEFF c(j; sigma; tau; n1,...,nr; m)
// Permutations inside c(...) use one-line form [2,1,...] or cycles (1 2).
// ---------------------------------------------------------------------------

inline OpenDiagram parse_open_literal(const TypeSignature& sig, const std::string& text) {
  std::string body = text;
  const auto open = body.find('(');
  if (open == std::string::npos || body.substr(0, open) != "c" || body.back() != ')')
    throw parse_error("open diagram literal must look like c(j; sigma; tau; n1,...,nr; m)");
  body = body.substr(open + 1, body.size() - open - 2);
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : body) {
    if (ch == ';') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(cur);
  if (fields.size() != 5) throw parse_error("open diagram literal needs 5 fields");
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t");
    const auto b = s.find_last_not_of(" \t");
    return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
  };
  const int j = std::stoi(trim(fields[0]));
  std::vector<int> nd;
  {
    std::string part;
    std::istringstream ss(trim(fields[3]));
    while (std::getline(ss, part, ',')) nd.push_back(std::stoi(trim(part)));
  }
  const int m = std::stoi(trim(fields[4]));
  if (static_cast<int>(nd.size()) != sig.arity()) throw parse_error("open literal multidegree length mismatch");
  int t_out = m, t_in = m;
  for (int i = 0; i < sig.arity(); ++i) {
    t_out += nd[i] * sig.out_arity(i);
    t_in += nd[i] * sig.in_arity(i);
  }
  const Perm sigma = parse_perm_literal(trim(fields[1]), t_out);
  const Perm tau = parse_perm_literal(trim(fields[2]), t_in);
  return OpenDiagram(sig, nd, m, j, sigma, tau);
}

inline Theory read_theory(std::istream& is) {
  std::string line;
  std::vector<std::pair<int, int>> pairs;
  std::vector<Axiom> axioms;
  int cur_p = -1, cur_q = -1;
  std::vector<std::pair<Rat, OpenDiagram>> terms;

  auto flush = [&]() {
    if (cur_p >= 0) {
      if (terms.empty()) throw parse_error("axiom without terms");
      axioms.emplace_back(cur_p, cur_q, std::move(terms));
      terms.clear();
    }
  };

  while (std::getline(is, line)) {
    const auto pos = line.find('#');
    if (pos != std::string::npos) line.erase(pos);
    std::istringstream ss(line);
    std::string head;
    if (!(ss >> head)) continue;
    if (head == "signature") {
      int p, q;
      while (ss >> p) {
        if (!(ss >> q)) throw parse_error("signature line needs pairs");
        pairs.emplace_back(p, q);
      }
    } else if (head == "axiom") {
      flush();
      if (!(ss >> cur_p >> cur_q)) throw parse_error("axiom line needs a degree pair");
    } else if (head == "term") {
      if (pairs.empty() || cur_p < 0) throw parse_error("term before signature/axiom");
      std::string coeff_text;
      ss >> coeff_text;
      std::string rest;
      std::getline(ss, rest);
      const TypeSignature sig{pairs};
      auto trim = [](std::string s) {
        const auto a = s.find_first_not_of(" \t");
        const auto b = s.find_last_not_of(" \t");
        return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
      };
      terms.emplace_back(rat_from_string(coeff_text), parse_open_literal(sig, trim(rest)));
    } else {
      throw parse_error("unknown theory line: " + head);
    }
  }
  flush();
  if (pairs.empty()) throw parse_error("theory file missing signature");
  return Theory{TypeSignature{pairs}, std::move(axioms)};
}

}  // namespace traceinv
