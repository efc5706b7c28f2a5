#pragma once

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <tuple>
#include <vector>

#include "traceinv/perm.hpp"
#include "traceinv/signature.hpp"

namespace traceinv {

// ---------------------------------------------------------------------------
// Slot bookkeeping.
//
// A diagram over signature ((p_i,q_i)) with multidegree (n_i) and m identity
// boxes lays its boxes out type-major: n_1 boxes of type 0, ..., n_r of type
// r-1, then m identity boxes (treated as type r with arity (1,1)).  Output
// slots are numbered consecutively box by box, and input slots likewise.
// ---------------------------------------------------------------------------

namespace detail {

struct Layout {
  std::vector<int> box_type;  // box_type[b] in [0, r]; r denotes an identity box
  std::vector<int> box_out_start;
  std::vector<int> box_in_start;
  int total_out = 0;
  int total_in = 0;
};

inline int out_width(const TypeSignature& sig, int type) { return type == sig.arity() ? 1 : sig.out_arity(type); }
inline int in_width(const TypeSignature& sig, int type) { return type == sig.arity() ? 1 : sig.in_arity(type); }

inline Layout make_layout(const TypeSignature& sig, const std::vector<int>& nd, int m) {
  if (static_cast<int>(nd.size()) != sig.arity()) throw domain_error("multidegree length != signature arity");
  for (int v : nd)
    if (v < 0) throw domain_error("multidegree entries must be >= 0");
  if (m < 0) throw domain_error("identity box count must be >= 0");
  Layout lay;
  auto push_box = [&](int type) {
    lay.box_type.push_back(type);
    lay.box_out_start.push_back(lay.total_out);
    lay.box_in_start.push_back(lay.total_in);
    lay.total_out += out_width(sig, type);
    lay.total_in += in_width(sig, type);
  };
  for (int t = 0; t < sig.arity(); ++t)
    for (int k = 0; k < nd[t]; ++k) push_box(t);
  for (int k = 0; k < m; ++k) push_box(sig.arity());
  return lay;
}

// Slot maps embedding one factor's layout into the layout of a merged
// diagram, with `offset[t]` boxes of type t placed before the factor's.
struct SlotMaps {
  std::vector<int> out;  // factor out slot -> merged out slot
  std::vector<int> in;   // factor in slot -> merged in slot
};

inline SlotMaps embed_slots(const TypeSignature& sig, const Layout& factor, const Layout& merged,
                            const std::vector<int>& boxes_before) {
  SlotMaps maps;
  maps.out.resize(factor.total_out);
  maps.in.resize(factor.total_in);
  std::vector<int> seen(sig.arity() + 1, 0);
  // merged box index = (start of type block) + boxes_before[type] + index within factor
  std::vector<int> type_start(sig.arity() + 2, 0);
  for (std::size_t b = 0; b < merged.box_type.size(); ++b) ++type_start[merged.box_type[b] + 1];
  for (int t = 1; t <= sig.arity() + 1; ++t) type_start[t] += type_start[t - 1];
  for (std::size_t b = 0; b < factor.box_type.size(); ++b) {
    const int type = factor.box_type[b];
    const int merged_box = type_start[type] + boxes_before[type] + seen[type]++;
    for (int s = 0; s < out_width(sig, type); ++s)
      maps.out[factor.box_out_start[b] + s] = merged.box_out_start[merged_box] + s;
    for (int s = 0; s < in_width(sig, type); ++s)
      maps.in[factor.box_in_start[b] + s] = merged.box_in_start[merged_box] + s;
  }
  return maps;
}

// The relabeling action on diagrams: g in S_{n_1} x ... x S_{n_r} x S_m acts
// by sigma -> A1(g) sigma A2(g)^{-1}, where A1 embeds with the input arities
// (q_i;1) and A2 with the output arities (p_i;1).  Evaluation is unchanged
// along orbits; orbits are exactly equality classes of diagrams.
struct ActionPair {
  Perm a1, a1_inv, a2, a2_inv;
};

inline const std::vector<ActionPair>& action_pairs(const TypeSignature& sig, const std::vector<int>& nd, int m,
                                                   const Limits& limits) {
  static std::map<std::vector<int>, std::vector<ActionPair>> cache;
  static std::mutex mutex;
  std::vector<int> key;
  for (auto [p, q] : sig.pairs()) {
    key.push_back(p);
    key.push_back(q);
  }
  key.push_back(-1);
  key.insert(key.end(), nd.begin(), nd.end());
  key.push_back(m);

  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  std::vector<int> degrees = nd;
  degrees.push_back(m);
  std::vector<int> wp, wq;
  for (auto [p, q] : sig.pairs()) {
    wp.push_back(p);
    wq.push_back(q);
  }
  wp.push_back(1);
  wq.push_back(1);

  std::vector<ActionPair> pairs;
  for (const auto& g : YoungSubgroup(degrees, limits)) {
    ActionPair ap;
    ap.a1 = alpha_embed(wq, degrees, g);
    ap.a2 = alpha_embed(wp, degrees, g);
    ap.a1_inv = ap.a1.inverse();
    ap.a2_inv = ap.a2.inverse();
    pairs.push_back(std::move(ap));
  }
  return cache.emplace(std::move(key), std::move(pairs)).first->second;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Closed diagrams.
//
// A closed diagram is the trace closure of x_1^{n_1} ox ... ox x_r^{n_r} ox
// Id^m against a wiring permutation: output slot o is glued to input slot
// sigma(o).  Instances are canonical orbit representatives; two diagrams are
// equal iff their canonical forms coincide.
// ---------------------------------------------------------------------------

class ClosedDiagram {
 public:
  const TypeSignature& signature() const { return sig_; }
  const std::vector<int>& multidegree() const { return nd_; }
  int id_boxes() const { return m_; }
  const Perm& sigma() const { return sigma_; }
  unsigned long long aut_order() const { return aut_; }
  int n() const { return sigma_.degree(); }
  bool is_unit() const { return n() == 0; }
  int boxes() const { return std::accumulate(nd_.begin(), nd_.end(), 0) + m_; }

  // Key identifying the diagram within a fixed signature.
  std::tuple<std::vector<int>, int, std::vector<int>> key() const { return {nd_, m_, sigma_.word()}; }

  friend bool operator==(const ClosedDiagram& a, const ClosedDiagram& b) {
    return a.sig_ == b.sig_ && a.key() == b.key();
  }
  friend bool operator<(const ClosedDiagram& a, const ClosedDiagram& b) { return a.key() < b.key(); }

  friend ClosedDiagram canonicalize_closed(const TypeSignature&, std::vector<int>, int, const Perm&, const Limits&);

 private:
  ClosedDiagram(TypeSignature sig, std::vector<int> nd, int m, Perm sigma, unsigned long long aut)
      : sig_(std::move(sig)), nd_(std::move(nd)), m_(m), sigma_(std::move(sigma)), aut_(aut) {}

  TypeSignature sig_;
  std::vector<int> nd_;
  int m_ = 0;
  Perm sigma_;
  unsigned long long aut_ = 1;
};

inline ClosedDiagram canonicalize_closed(const TypeSignature& sig, std::vector<int> nd, int m, const Perm& sigma,
                                         const Limits& limits = default_limits()) {
  const auto lay = detail::make_layout(sig, nd, m);
  if (lay.total_out != lay.total_in)
    throw domain_error("closed diagram is unbalanced: output and input slot counts differ");
  if (sigma.degree() != lay.total_out) throw domain_error("wiring degree does not match slot count");

  const auto& pairs = detail::action_pairs(sig, nd, m, limits);
  std::vector<int> best = sigma.word();
  for (const auto& ap : pairs) {
    const Perm cand = compose(ap.a1, compose(sigma, ap.a2_inv));
    if (cand.word() < best) best = cand.word();
  }
  Perm best_perm{std::move(best)};
  unsigned long long stabilizer = 0;
  for (const auto& ap : pairs)
    if (compose(ap.a1, compose(best_perm, ap.a2_inv)) == best_perm) ++stabilizer;
  return ClosedDiagram(sig, std::move(nd), m, std::move(best_perm), stabilizer);
}

inline ClosedDiagram unit_diagram(const TypeSignature& sig) {
  return canonicalize_closed(sig, std::vector<int>(sig.arity(), 0), 0, Perm::identity(0));
}

// Tr(Id_W): one identity box closed on itself; evaluates to dim W.
inline ClosedDiagram dimension_diagram(const TypeSignature& sig) {
  return canonicalize_closed(sig, std::vector<int>(sig.arity(), 0), 1, Perm::identity(1));
}

inline bool equal(const ClosedDiagram& a, const ClosedDiagram& b) {
  if (a.signature() != b.signature()) throw domain_error("equal: signature mismatch");
  return a.key() == b.key();
}

// Disjoint union of diagrams; boxes merge type-major, left factor first.
inline ClosedDiagram star_product(const ClosedDiagram& a, const ClosedDiagram& b,
                                  const Limits& limits = default_limits()) {
  if (a.signature() != b.signature()) throw domain_error("star_product: signature mismatch");
  const TypeSignature& sig = a.signature();
  std::vector<int> nd(sig.arity());
  for (int t = 0; t < sig.arity(); ++t) nd[t] = a.multidegree()[t] + b.multidegree()[t];
  const int m = a.id_boxes() + b.id_boxes();

  const auto lay_a = detail::make_layout(sig, a.multidegree(), a.id_boxes());
  const auto lay_b = detail::make_layout(sig, b.multidegree(), b.id_boxes());
  const auto lay = detail::make_layout(sig, nd, m);
  std::vector<int> none(sig.arity() + 1, 0);
  std::vector<int> a_counts(a.multidegree());
  a_counts.push_back(a.id_boxes());
  const auto maps_a = detail::embed_slots(sig, lay_a, lay, none);
  const auto maps_b = detail::embed_slots(sig, lay_b, lay, a_counts);

  std::vector<int> word(lay.total_out, -1);
  for (int o = 0; o < lay_a.total_out; ++o) word[maps_a.out[o]] = maps_a.in[a.sigma()(o)];
  for (int o = 0; o < lay_b.total_out; ++o) word[maps_b.out[o]] = maps_b.in[b.sigma()(o)];
  return canonicalize_closed(sig, std::move(nd), m, Perm(std::move(word)), limits);
}

// Removes every reducible identity box; each identity loop becomes one factor
// of the dimension invariant, counted in d_power.  Result has no identity
// boxes left.
inline std::pair<ClosedDiagram, int> identity_reduce(const ClosedDiagram& d,
                                                     const Limits& limits = default_limits()) {
  std::vector<int> word = d.sigma().word();
  int m = d.id_boxes();
  int d_power = 0;
  while (m > 0) {
    const int n = static_cast<int>(word.size());
    const int last = n - 1;  // identity boxes occupy the trailing slots on both sides
    if (word[last] == last) {
      ++d_power;
      word.pop_back();
    } else {
      int feeder = -1;
      for (int o = 0; o < n; ++o)
        if (word[o] == last) feeder = o;
      const int target = word[last];
      std::vector<int> reduced(word.begin(), word.end() - 1);
      reduced[feeder] = target;
      word = std::move(reduced);
    }
    --m;
  }
  return {canonicalize_closed(d.signature(), d.multidegree(), 0, Perm(std::move(word)), limits), d_power};
}

// Connected components as standalone canonical diagrams (multiset, sorted).
// Requires an identity-free diagram; apply identity_reduce first.
inline std::vector<ClosedDiagram> connected_components(const ClosedDiagram& d,
                                                       const Limits& limits = default_limits()) {
  if (d.id_boxes() != 0) throw domain_error("connected_components: reduce identity boxes first");
  const TypeSignature& sig = d.signature();
  const auto lay = detail::make_layout(sig, d.multidegree(), 0);
  const int n = d.n();
  const int boxes = static_cast<int>(lay.box_type.size());

  // Union-find over strings (indexed by input slots) plus one node per box,
  // so boxes without strings still form their own component.
  std::vector<int> parent(n + boxes);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](int x, int y) { parent[find(x)] = find(y); };
  for (int b = 0; b < boxes; ++b) {
    const int type = lay.box_type[b];
    for (int s = 0; s < detail::out_width(sig, type); ++s) unite(n + b, d.sigma()(lay.box_out_start[b] + s));
    for (int s = 0; s < detail::in_width(sig, type); ++s) unite(n + b, lay.box_in_start[b] + s);
  }

  std::map<int, std::vector<int>> groups;  // root -> box list (type-major order)
  for (int b = 0; b < boxes; ++b) groups[find(n + b)].push_back(b);

  std::vector<ClosedDiagram> components;
  for (const auto& [root, group] : groups) {
    std::vector<int> nd_c(sig.arity(), 0);
    for (int b : group) ++nd_c[lay.box_type[b]];
    const auto lay_c = detail::make_layout(sig, nd_c, 0);
    // Old slot -> component slot, box by box (group is already type-major).
    std::vector<int> out_map(d.n(), -1), in_map(d.n(), -1);
    for (std::size_t cb = 0; cb < group.size(); ++cb) {
      const int b = group[cb];
      const int type = lay.box_type[b];
      for (int s = 0; s < detail::out_width(sig, type); ++s)
        out_map[lay.box_out_start[b] + s] = lay_c.box_out_start[cb] + s;
      for (int s = 0; s < detail::in_width(sig, type); ++s)
        in_map[lay.box_in_start[b] + s] = lay_c.box_in_start[cb] + s;
    }
    std::vector<int> word(lay_c.total_out, -1);
    for (int o = 0; o < d.n(); ++o)
      if (out_map[o] >= 0) word[out_map[o]] = in_map[d.sigma()(o)];
    components.push_back(canonicalize_closed(sig, std::move(nd_c), 0, Perm(std::move(word)), limits));
  }
  std::sort(components.begin(), components.end());
  return components;
}

inline bool is_connected(const ClosedDiagram& d, const Limits& limits = default_limits()) {
  return connected_components(d, limits).size() == 1;
}

// ---------------------------------------------------------------------------
// Open diagrams.
//
// General diagrams of degree (p,q): sigma sends each output slot of the box
// row to a free output [0,p) or a contraction wire [p,p+j); tau sends each
// free input [0,q) or wire [q,q+j) to the input slot of the box row it feeds.
// ---------------------------------------------------------------------------

class OpenDiagram {
 public:
  OpenDiagram(TypeSignature sig, std::vector<int> nd, int m, int j, Perm sigma, Perm tau)
      : sig_(std::move(sig)), nd_(std::move(nd)), m_(m), j_(j), sigma_(std::move(sigma)), tau_(std::move(tau)) {
    const auto lay = detail::make_layout(sig_, nd_, m_);
    if (j_ < 0) throw domain_error("open diagram: j must be >= 0");
    if (sigma_.degree() != lay.total_out || tau_.degree() != lay.total_in)
      throw domain_error("open diagram: wiring degrees do not match slot counts");
    if (lay.total_out - j_ < 0 || lay.total_in - j_ < 0)
      throw domain_error("open diagram: more wires than slots");
  }

  // A single structure box with untouched strings: degree (p_i, q_i).
  static OpenDiagram generator(const TypeSignature& sig, int slot) {
    std::vector<int> nd(sig.arity(), 0);
    nd[slot] = 1;
    return OpenDiagram(sig, std::move(nd), 0, 0, Perm::identity(sig.out_arity(slot)),
                       Perm::identity(sig.in_arity(slot)));
  }

  // The identity map of W as a diagram of degree (1,1).
  static OpenDiagram identity_box(const TypeSignature& sig) {
    return OpenDiagram(sig, std::vector<int>(sig.arity(), 0), 1, 0, Perm::identity(1), Perm::identity(1));
  }

  static OpenDiagram from_closed(const ClosedDiagram& d) {
    return OpenDiagram(d.signature(), d.multidegree(), d.id_boxes(), d.n(), d.sigma(),
                       Perm::identity(d.n()));
  }

  const TypeSignature& signature() const { return sig_; }
  const std::vector<int>& multidegree() const { return nd_; }
  int id_boxes() const { return m_; }
  int wires() const { return j_; }
  const Perm& sigma() const { return sigma_; }
  const Perm& tau() const { return tau_; }
  int out_degree() const { return sigma_.degree() - j_; }
  int in_degree() const { return tau_.degree() - j_; }
  bool is_closed() const { return out_degree() == 0 && in_degree() == 0; }
  int boxes() const { return std::accumulate(nd_.begin(), nd_.end(), 0) + m_; }

  ClosedDiagram close(const Limits& limits = default_limits()) const {
    if (!is_closed()) throw domain_error("close: diagram has free strings");
    return canonicalize_closed(sig_, nd_, m_, compose(tau_, sigma_), limits);
  }

  std::tuple<std::vector<int>, int, int, std::vector<int>, std::vector<int>> key() const {
    return {nd_, m_, j_, sigma_.word(), tau_.word()};
  }
  friend bool operator==(const OpenDiagram& a, const OpenDiagram& b) {
    return a.sig_ == b.sig_ && a.key() == b.key();
  }
  friend bool operator<(const OpenDiagram& a, const OpenDiagram& b) { return a.key() < b.key(); }

 private:
  TypeSignature sig_;
  std::vector<int> nd_;
  int m_ = 0;
  int j_ = 0;
  Perm sigma_;
  Perm tau_;
};

// Side-by-side placement; realizes as the tensor product of realizations.
inline OpenDiagram open_product(const OpenDiagram& a, const OpenDiagram& b) {
  if (a.signature() != b.signature()) throw domain_error("open_product: signature mismatch");
  const TypeSignature& sig = a.signature();
  std::vector<int> nd(sig.arity());
  for (int t = 0; t < sig.arity(); ++t) nd[t] = a.multidegree()[t] + b.multidegree()[t];
  const int m = a.id_boxes() + b.id_boxes();
  const int j = a.wires() + b.wires();
  const int p = a.out_degree() + b.out_degree();
  const int q = a.in_degree() + b.in_degree();

  const auto lay_a = detail::make_layout(sig, a.multidegree(), a.id_boxes());
  const auto lay_b = detail::make_layout(sig, b.multidegree(), b.id_boxes());
  const auto lay = detail::make_layout(sig, nd, m);
  std::vector<int> none(sig.arity() + 1, 0);
  std::vector<int> a_counts(a.multidegree());
  a_counts.push_back(a.id_boxes());
  const auto maps_a = detail::embed_slots(sig, lay_a, lay, none);
  const auto maps_b = detail::embed_slots(sig, lay_b, lay, a_counts);

  // Free indices concatenate a-first; wires concatenate a-first after frees.
  auto map_tout_a = [&](int t) { return t < a.out_degree() ? t : p + (t - a.out_degree()); };
  auto map_tout_b = [&](int t) { return t < b.out_degree() ? a.out_degree() + t : p + a.wires() + (t - b.out_degree()); };
  auto map_tin_a = [&](int t) { return t < a.in_degree() ? t : q + (t - a.in_degree()); };
  auto map_tin_b = [&](int t) { return t < b.in_degree() ? a.in_degree() + t : q + b.wires() * 0 + a.wires() + (t - b.in_degree()); };

  std::vector<int> sigma_word(lay.total_out, -1);
  for (int o = 0; o < lay_a.total_out; ++o) sigma_word[maps_a.out[o]] = map_tout_a(a.sigma()(o));
  for (int o = 0; o < lay_b.total_out; ++o) sigma_word[maps_b.out[o]] = map_tout_b(b.sigma()(o));

  std::vector<int> tau_word(lay.total_in, -1);
  for (int t = 0; t < a.in_degree() + a.wires(); ++t) tau_word[map_tin_a(t)] = maps_a.in[a.tau()(t)];
  for (int t = 0; t < b.in_degree() + b.wires(); ++t) tau_word[map_tin_b(t)] = maps_b.in[b.tau()(t)];

  return OpenDiagram(sig, std::move(nd), m, j, Perm(std::move(sigma_word)), Perm(std::move(tau_word)));
}

// Closes x of degree (p,q) against y of degree (q,p): output i of x feeds
// input i of y and vice versa.  Evaluation equals the full contraction of the
// two realizations.
inline ClosedDiagram pair_close(const OpenDiagram& x, const OpenDiagram& y,
                                const Limits& limits = default_limits()) {
  if (x.signature() != y.signature()) throw domain_error("pair_close: signature mismatch");
  if (x.out_degree() != y.in_degree() || x.in_degree() != y.out_degree())
    throw domain_error("pair_close: degrees do not transpose-match");
  const TypeSignature& sig = x.signature();
  const int p = x.out_degree(), q = x.in_degree();

  std::vector<int> nd(sig.arity());
  for (int t = 0; t < sig.arity(); ++t) nd[t] = x.multidegree()[t] + y.multidegree()[t];
  const int m = x.id_boxes() + y.id_boxes();

  const auto lay_x = detail::make_layout(sig, x.multidegree(), x.id_boxes());
  const auto lay_y = detail::make_layout(sig, y.multidegree(), y.id_boxes());
  const auto lay = detail::make_layout(sig, nd, m);
  std::vector<int> none(sig.arity() + 1, 0);
  std::vector<int> x_counts(x.multidegree());
  x_counts.push_back(x.id_boxes());
  const auto maps_x = detail::embed_slots(sig, lay_x, lay, none);
  const auto maps_y = detail::embed_slots(sig, lay_y, lay, x_counts);

  std::vector<int> word(lay.total_out, -1);
  for (int o = 0; o < lay_x.total_out; ++o) {
    const int t = x.sigma()(o);
    word[maps_x.out[o]] = (t < p) ? maps_y.in[y.tau()(t)]                   // free output -> y's input t
                                  : maps_x.in[x.tau()(q + (t - p))];        // internal wire of x
  }
  for (int o = 0; o < lay_y.total_out; ++o) {
    const int t = y.sigma()(o);
    word[maps_y.out[o]] = (t < q) ? maps_x.in[x.tau()(t)]                   // y's free output -> x's input t
                                  : maps_y.in[y.tau()(p + (t - q))];        // internal wire of y
  }
  return canonicalize_closed(sig, std::move(nd), m, Perm(std::move(word)), limits);
}

// ---------------------------------------------------------------------------
// Open-diagram normal form: breadth-first closure under the three move
// families (wire relabeling, box relabeling, identity-box elimination); the
// normal form is the lexicographic minimum at the smallest (m, j) reached.
// ---------------------------------------------------------------------------

namespace detail {

using OpenState = std::tuple<int, int, std::vector<int>, std::vector<int>>;  // (m, j, sigma, tau)

// Attempts to delete identity box `idx` (0-based among identity boxes),
// reconnecting its neighbour strings.  Fails (returns false) for a free
// pass-through box or a self-loop; those are irreducible.
inline bool reduce_identity_box(const TypeSignature& sig, const std::vector<int>& nd, const OpenState& s, int idx,
                                OpenState& out) {
  const auto& [m, j, sigma_word, tau_word] = s;
  const auto lay = make_layout(sig, nd, m);
  const int p = static_cast<int>(sigma_word.size()) - j;
  const int q = static_cast<int>(tau_word.size()) - j;
  const int o_star = lay.total_out - m + idx;
  const int i_star = lay.total_in - m + idx;

  const int a = sigma_word[o_star];
  int b = -1;  // index into tau's domain feeding i_star
  for (int t = 0; t < static_cast<int>(tau_word.size()); ++t)
    if (tau_word[t] == i_star) b = t;

  const bool a_free = a < p;
  const bool b_free = b < q;
  if (a_free && b_free) return false;
  if (!a_free && !b_free && (a - p) == (b - q)) return false;  // loop: a dimension factor

  // Port form: out_assign per X-out slot, in_assign_by_slot per X-in slot.
  // Removing the box reconnects its upstream source `b` (a T-in index) with
  // its downstream target `a` (a T-out index); one wire disappears.
  std::vector<int> out_assign(sigma_word);
  std::vector<int> in_assign_by_slot(lay.total_in, -1);
  for (int t = 0; t < static_cast<int>(tau_word.size()); ++t) in_assign_by_slot[tau_word[t]] = t;

  int removed_wire = -1;
  if (!b_free && a_free) {
    // box-out u1 --c1--> Id --> free out a   becomes   u1 --> free out a
    const int c1 = b - q;
    int u1 = -1;
    for (int o = 0; o < static_cast<int>(out_assign.size()); ++o)
      if (out_assign[o] == p + c1) u1 = o;
    out_assign[u1] = a;
    removed_wire = c1;
  } else {
    // ... --> Id --c2--> box-in k2   becomes   ... --> k2, where ... is
    // either a free input or a wire from another box output.
    const int c2 = a - p;
    in_assign_by_slot[tau_word[q + c2]] = b;
    removed_wire = c2;
  }

  // Rebuild words without slots (o_star, i_star) and wire `removed_wire`.
  auto new_tout = [&](int t) -> int {
    if (t < p) return t;
    const int c = t - p;
    return p + c - (c > removed_wire ? 1 : 0);
  };
  auto new_tin = [&](int t) -> int {
    if (t < q) return t;
    const int c = t - q;
    return q + c - (c > removed_wire ? 1 : 0);
  };

  std::vector<int> new_sigma;
  new_sigma.reserve(sigma_word.size() - 1);
  for (int o = 0; o < static_cast<int>(out_assign.size()); ++o) {
    if (o == o_star) continue;
    new_sigma.push_back(new_tout(out_assign[o]));
  }
  std::vector<int> new_tau(tau_word.size() - 1, -1);
  for (int slot = 0; slot < lay.total_in; ++slot) {
    if (slot == i_star) continue;
    const int src = in_assign_by_slot[slot];
    const int new_slot = slot - (slot > i_star ? 1 : 0);
    new_tau[new_tin(src)] = new_slot;
  }
  out = OpenState{m - 1, j - 1, std::move(new_sigma), std::move(new_tau)};
  return true;
}

// Full orbit of a state under wire relabelings (mu in S_j) and box
// relabelings (g in the block subgroup): sigma -> P_out(mu)^{-1} sigma A2(g),
// tau -> A1(g)^{-1} tau P_in(mu).
inline std::vector<OpenState> open_orbit(const TypeSignature& sig, const std::vector<int>& nd, const OpenState& s,
                                         const Limits& limits) {
  const auto& [m, j, sigma_word, tau_word] = s;
  const int p = static_cast<int>(sigma_word.size()) - j;
  const int q = static_cast<int>(tau_word.size()) - j;
  const Perm sigma{std::vector<int>(sigma_word)};
  const Perm tau{std::vector<int>(tau_word)};

  unsigned long long orbit_bound = 1;
  for (int k = 2; k <= j; ++k) orbit_bound *= k;
  const auto& pairs = action_pairs(sig, nd, m, limits);
  if (orbit_bound > limits.enumeration / std::max<std::size_t>(pairs.size(), 1))
    throw limit_error("open-diagram move closure too large");

  std::set<OpenState> seen;
  std::vector<int> mu_word(j);
  std::iota(mu_word.begin(), mu_word.end(), 0);
  do {
    const Perm mu{std::vector<int>(mu_word)};
    std::vector<Perm> id_p{Perm::identity(p), mu};
    const Perm p_out = pi_embed(Composition({p, j}), id_p);
    std::vector<Perm> id_q{Perm::identity(q), mu};
    const Perm p_in = pi_embed(Composition({q, j}), id_q);
    const Perm p_out_inv = p_out.inverse();
    for (const auto& ap : pairs) {
      Perm s2 = compose(p_out_inv, compose(sigma, ap.a2));
      Perm t2 = compose(compose(ap.a1_inv, tau), p_in);
      seen.insert(OpenState{m, j, s2.word(), t2.word()});
    }
  } while (std::next_permutation(mu_word.begin(), mu_word.end()));
  return {seen.begin(), seen.end()};
}

}  // namespace detail

// Minimum representative under the closure of the three move families; two
// open diagrams are equivalent iff their normal forms agree.
inline OpenDiagram normalize_open(const OpenDiagram& dg, const Limits& limits = default_limits()) {
  using detail::OpenState;
  const TypeSignature& sig = dg.signature();
  const std::vector<int>& nd = dg.multidegree();

  std::set<OpenState> visited;
  std::vector<OpenState> stack{OpenState{dg.id_boxes(), dg.wires(), dg.sigma().word(), dg.tau().word()}};
  std::set<OpenState> expanded;
  while (!stack.empty()) {
    OpenState s = std::move(stack.back());
    stack.pop_back();
    if (expanded.count(s)) continue;
    const auto orbit = detail::open_orbit(sig, nd, s, limits);
    for (const auto& member : orbit) {
      expanded.insert(member);
      visited.insert(member);
      if (visited.size() > limits.enumeration) throw limit_error("open-diagram move closure too large");
      const int m = std::get<0>(member);
      for (int idx = 0; idx < m; ++idx) {
        OpenState reduced;
        if (detail::reduce_identity_box(sig, nd, member, idx, reduced) && !expanded.count(reduced))
          stack.push_back(std::move(reduced));
      }
    }
  }

  const OpenState& best = *visited.begin();  // set order = (m, j, sigma, tau) lexicographic
  return OpenDiagram(sig, nd, std::get<0>(best), std::get<1>(best), Perm(std::vector<int>(std::get<2>(best))),
                     Perm(std::vector<int>(std::get<3>(best))));
}

inline bool equal_open(const OpenDiagram& a, const OpenDiagram& b, const Limits& limits = default_limits()) {
  if (a.signature() != b.signature()) throw domain_error("equal_open: signature mismatch");
  if (a.out_degree() != b.out_degree() || a.in_degree() != b.in_degree()) return false;
  return normalize_open(a, limits) == normalize_open(b, limits);
}

}  // namespace traceinv
