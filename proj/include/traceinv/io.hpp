#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "traceinv/element.hpp"
#include "traceinv/rational.hpp"

namespace traceinv {

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t");
  const auto b = s.find_last_not_of(" \t");
  return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
}

}  // namespace detail

// Permutation literals: one-line "[4,5,2,3,1]" or cycle form "(1 3)(2 5 4)";
// "id" or the empty string denote the identity.  Points are 1-based in text.
inline Perm parse_perm_literal(const std::string& raw, int degree) {
  const std::string text = detail::trim(raw);
  if (text.empty() || text == "id") return Perm::identity(degree);
  if (text[0] == '[') {
    if (text.back() != ']') throw parse_error("unterminated one-line permutation");
    std::vector<int> word;
    std::string part;
    std::istringstream ss(text.substr(1, text.size() - 2));
    while (std::getline(ss, part, ',')) {
      part = detail::trim(part);
      if (part.empty()) throw parse_error("empty entry in permutation literal");
      word.push_back(std::stoi(part) - 1);
    }
    if (static_cast<int>(word.size()) != degree)
      throw parse_error("permutation degree mismatch: expected " + std::to_string(degree));
    return Perm(std::move(word));
  }
  if (text[0] == '(') {
    std::vector<int> word(degree);
    std::iota(word.begin(), word.end(), 0);
    std::size_t pos = 0;
    while (pos < text.size()) {
      if (isspace(static_cast<unsigned char>(text[pos]))) {
        ++pos;
        continue;
      }
      if (text[pos] != '(') throw parse_error("expected '(' in cycle literal");
      const auto close = text.find(')', pos);
      if (close == std::string::npos) throw parse_error("unterminated cycle");
      std::istringstream ss(text.substr(pos + 1, close - pos - 1));
      std::vector<int> cycle;
      int v;
      while (ss >> v) {
        if (v < 1 || v > degree) throw parse_error("cycle entry out of range");
        cycle.push_back(v - 1);
      }
      for (std::size_t i = 0; i < cycle.size(); ++i) {
        const int from = cycle[i], to = cycle[(i + 1) % cycle.size()];
        word[from] = to;
      }
      pos = close + 1;
    }
    return Perm(std::move(word));
  }
  throw parse_error("unrecognized permutation literal: '" + text + "'");
}

inline std::string print_perm_cycles(const Perm& p) {
  std::string out;
  std::vector<char> seen(p.degree(), 0);
  for (int i = 0; i < p.degree(); ++i) {
    if (seen[i] || p(i) == i) {
      seen[i] = 1;
      continue;
    }
    out += '(';
    bool first = true;
    for (int j = i; !seen[j]; j = p(j)) {
      seen[j] = 1;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out.empty() ? "id" : out;
}

inline std::string print_perm_word(const Perm& p) {
  std::string out = "[";
  for (int i = 0; i < p.degree(); ++i) {
    if (i) out += ',';
    out += std::to_string(p(i) + 1);
  }
  return out + "]";
}

// Partition literals: "(3,1,1)", "()".
inline Partition parse_partition_literal(const std::string& raw) {
  const std::string text = detail::trim(raw);
  if (text.size() < 2 || text.front() != '(' || text.back() != ')')
    throw parse_error("partition literal must look like (3,1,1) or ()");
  const std::string body = detail::trim(text.substr(1, text.size() - 2));
  std::vector<int> rows;
  if (!body.empty()) {
    std::string part;
    std::istringstream ss(body);
    while (std::getline(ss, part, ',')) rows.push_back(std::stoi(detail::trim(part)));
  }
  return Partition(std::move(rows));
}

inline std::string print_partition(const Partition& p) {
  std::string out = "(";
  for (int i = 0; i < p.row_count(); ++i) {
    if (i) out += ',';
    out += std::to_string(p.rows()[i]);
  }
  return out + ")";
}

// Closed diagram literals: p(sigma; n1,...,nr; m) with m optional (default 0),
// sigma in cycle or one-line form over the slot count determined by the rest.
inline ClosedDiagram parse_closed_literal(const TypeSignature& sig, const std::string& raw,
                                          const Limits& limits = default_limits()) {
  const std::string text = detail::trim(raw);
  const auto open = text.find('(');
  if (open == std::string::npos || detail::trim(text.substr(0, open)) != "p" || text.back() != ')')
    throw parse_error("diagram literal must look like p(sigma; n1,...,nr; m)");
  const std::string body = text.substr(open + 1, text.size() - open - 2);
  std::vector<std::string> fields;
  {
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
  }
  if (fields.size() != 2 && fields.size() != 3) throw parse_error("diagram literal needs 2 or 3 fields");
  std::vector<int> nd;
  {
    std::string part;
    std::istringstream ss(detail::trim(fields[1]));
    while (std::getline(ss, part, ',')) nd.push_back(std::stoi(detail::trim(part)));
  }
  if (static_cast<int>(nd.size()) != sig.arity())
    throw parse_error("diagram multidegree length does not match the signature");
  const int m = fields.size() == 3 ? std::stoi(detail::trim(fields[2])) : 0;
  int t_out = m;
  for (int i = 0; i < sig.arity(); ++i) t_out += nd[i] * sig.out_arity(i);
  const Perm sigma = parse_perm_literal(fields[0], t_out);
  return canonicalize_closed(sig, nd, m, sigma, limits);
}

inline std::string print_closed_diagram(const ClosedDiagram& d) {
  std::string out = "p(" + print_perm_cycles(d.sigma()) + "; ";
  for (int i = 0; i < static_cast<int>(d.multidegree().size()); ++i) {
    if (i) out += ',';
    out += std::to_string(d.multidegree()[i]);
  }
  if (d.id_boxes() != 0) out += "; " + std::to_string(d.id_boxes());
  return out + ")";
}

inline std::string print_diagram_key(const DiagramKey& key) {
  std::string out;
  if (key.d_power > 0) {
    out += "D";
    if (key.d_power > 1) out += "^" + std::to_string(key.d_power);
  }
  bool trivial_diagram = true;
  for (int v : key.multidegree)
    if (v != 0) trivial_diagram = false;
  if (!trivial_diagram || key.d_power == 0) {
    if (!out.empty()) out += "*";
    out += "p(" + print_perm_cycles(Perm(std::vector<int>(key.word))) + "; ";
    for (std::size_t i = 0; i < key.multidegree.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(key.multidegree[i]);
    }
    out += ")";
  }
  return out;
}

// Element literals: terms joined by +/-, each "coeff*monomial" with the
// coefficient optional, monomial "D^k", "p(...)" or "D^k*p(...)".
inline DiagramSum parse_element_literal(const TypeSignature& sig, const std::string& raw,
                                        const Limits& limits = default_limits()) {
  DiagramSum out(sig);
  const std::string text = detail::trim(raw);
  std::size_t pos = 0;
  bool negative = false;
  while (pos < text.size()) {
    // Split at top-level +/- (depth tracked over parentheses/brackets).
    int depth = 0;
    std::size_t end = pos;
    while (end < text.size()) {
      const char c = text[end];
      if (c == '(' || c == '[') ++depth;
      if (c == ')' || c == ']') --depth;
      if ((c == '+' || c == '-') && depth == 0 && end > pos) break;
      ++end;
    }
    std::string term = detail::trim(text.substr(pos, end - pos));
    if (term.empty()) throw parse_error("empty term in element literal");

    Rat coeff = negative ? Rat(-1) : Rat(1);
    // Leading sign inside the term (first term only).
    if (term[0] == '-') {
      coeff = -coeff;
      term = detail::trim(term.substr(1));
    } else if (term[0] == '+') {
      term = detail::trim(term.substr(1));
    }

    int d_power = 0;
    bool saw_monomial = false;
    DiagramKey key{std::vector<int>(sig.arity(), 0), {}, 0};
    // Factors split on top-level '*'.
    std::size_t fpos = 0;
    while (fpos < term.size()) {
      int fdepth = 0;
      std::size_t fend = fpos;
      while (fend < term.size()) {
        const char c = term[fend];
        if (c == '(' || c == '[') ++fdepth;
        if (c == ')' || c == ']') --fdepth;
        if (c == '*' && fdepth == 0) break;
        ++fend;
      }
      const std::string factor = detail::trim(term.substr(fpos, fend - fpos));
      if (factor.empty()) throw parse_error("empty factor in element literal");
      if (factor[0] == 'p') {
        const ClosedDiagram d = parse_closed_literal(sig, factor, limits);
        auto [reduced, extra] = identity_reduce(d, limits);
        key.multidegree = reduced.multidegree();
        key.word = reduced.sigma().word();
        d_power += extra;
        saw_monomial = true;
      } else if (factor[0] == 'D') {
        if (factor == "D") {
          d_power += 1;
        } else if (factor.size() > 2 && factor[1] == '^') {
          d_power += std::stoi(factor.substr(2));
        } else {
          throw parse_error("bad dimension factor: '" + factor + "'");
        }
        saw_monomial = true;
      } else {
        coeff *= rat_from_string(factor);
      }
      fpos = fend + 1;
    }
    if (!saw_monomial && coeff != 0) {
      // A bare scalar: multiple of the unit.
    }
    key.d_power = d_power;
    out.add_term(key, coeff);

    negative = end < text.size() && text[end] == '-';
    pos = end + (end < text.size() ? 1 : 0);
  }
  return out;
}

// Terms sorted by (box-degree, wiring, dimension power); exact rationals.
inline std::string print_element(const DiagramSum& e) {
  if (e.terms().empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [key, coeff] : e.terms()) {
    Rat c = coeff;
    if (first) {
      if (c < 0) {
        out += "-";
        c = -c;
      }
    } else {
      out += c < 0 ? " - " : " + ";
      if (c < 0) c = -c;
    }
    first = false;
    const std::string mono = print_diagram_key(key);
    if (mono.empty()) {
      out += rat_to_string(c);
    } else {
      if (c != 1) out += rat_to_string(c) + "*";
      out += mono;
    }
  }
  return out;
}

inline TypeSignature parse_signature(const std::string& text) {
  std::istringstream ss(text);
  std::vector<std::pair<int, int>> pairs;
  int p, q;
  while (ss >> p) {
    if (!(ss >> q)) throw parse_error("signature needs an even count of integers");
    pairs.emplace_back(p, q);
  }
  if (pairs.empty()) throw parse_error("empty signature");
  return TypeSignature{pairs};
}

inline std::string print_signature(const TypeSignature& sig) {
  std::string out;
  for (int i = 0; i < sig.arity(); ++i) {
    if (i) out += ' ';
    out += std::to_string(sig.out_arity(i)) + ' ' + std::to_string(sig.in_arity(i));
  }
  return out;
}

inline std::vector<int> parse_multidegree(const std::string& text, int arity) {
  std::vector<int> nd;
  std::string norm = text;
  for (char& c : norm)
    if (c == ',') c = ' ';
  std::istringstream ss(norm);
  int v;
  while (ss >> v) nd.push_back(v);
  if (static_cast<int>(nd.size()) != arity) throw parse_error("multidegree length does not match signature");
  return nd;
}

}  // namespace traceinv
