#pragma once

// Finite reachability structures over fuzzy states.
//
// All explorations are deterministic: events are tried in declaration order
// and the frontier is FIFO (or ordered by representative length where noted),
// so node numbering and representatives are reproducible.
//
// Zero vectors are never expanded: once the specification state is zero every
// condition row below it holds trivially, and it stays zero under ⊙.

#include "fdes/model.hpp"

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <queue>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

namespace fdes {

inline constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

/// Work counters for the complexity accounting: one visit per (node, event)
/// evaluation.
struct ExploreStats {
  std::size_t nodes = 0;
  std::size_t visits = 0;
  std::size_t events = 0;

  bool within_bound() const { return visits <= nodes * events + 1; }
};

template <class Scalar>
struct VecLess {
  bool operator()(const StateVector<Scalar>& a, const StateVector<Scalar>& b) const { return lex_less(a, b); }
};

template <class Scalar>
struct PairLess {
  using Pair = std::pair<StateVector<Scalar>, StateVector<Scalar>>;
  bool operator()(const Pair& a, const Pair& b) const {
    if (lex_less(a.first, b.first)) return true;
    if (lex_less(b.first, a.first)) return false;
    return lex_less(a.second, b.second);
  }
};

// ---------------------------------------------------------------------------
// Step 1: fuzzy states of H reachable from its initial state

template <class Scalar>
struct ReachGraphH {
  struct Node {
    StateVector<Scalar> state;
    EventString rep;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> edges;  // edges[node][event], kNoNode for a zero successor
  ExploreStats stats;
};

template <class Scalar>
ReachGraphH<Scalar> explore_states(const FuzzyAutomaton<Scalar>& h) {
  ReachGraphH<Scalar> g;
  std::map<StateVector<Scalar>, std::size_t, VecLess<Scalar>> index;
  const auto ne = h.alphabet_size();
  g.stats.events = ne;

  g.nodes.push_back({h.initial(), {}});
  g.edges.emplace_back(ne, kNoNode);
  index.emplace(h.initial(), 0);
  for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
    for (std::size_t e = 0; e < ne; ++e) {
      ++g.stats.visits;
      auto next = maxmin(g.nodes[cur].state, h.matrix(e));
      if (is_zero(next)) continue;
      auto [it, fresh] = index.emplace(next, g.nodes.size());
      if (fresh) {
        g.nodes.push_back({std::move(next), append(g.nodes[cur].rep, e)});
        g.edges.emplace_back(ne, kNoNode);
      }
      g.edges[cur][e] = it->second;
    }
  }
  g.stats.nodes = g.nodes.size();
  return g;
}

// ---------------------------------------------------------------------------
// Step 2: state pairs (q₀⊙s, p₀⊙s)

template <class Scalar>
struct PairGraph {
  struct Node {
    StateVector<Scalar> q;
    StateVector<Scalar> p;
    EventString rep;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> edges;
  ExploreStats stats;
};

template <class Scalar>
PairGraph<Scalar> explore_pairs(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h) {
  if (g.dim() != h.dim()) throw ShapeError("plant and specification dimensions differ");
  if (g.alphabet_size() != h.alphabet_size()) throw AlphabetError("plant and specification alphabets differ");
  PairGraph<Scalar> out;
  std::map<std::pair<StateVector<Scalar>, StateVector<Scalar>>, std::size_t, PairLess<Scalar>> index;
  const auto ne = g.alphabet_size();
  out.stats.events = ne;

  out.nodes.push_back({g.initial(), h.initial(), {}});
  out.edges.emplace_back(ne, kNoNode);
  index.emplace(std::make_pair(g.initial(), h.initial()), 0);
  for (std::size_t cur = 0; cur < out.nodes.size(); ++cur) {
    for (std::size_t e = 0; e < ne; ++e) {
      ++out.stats.visits;
      auto q = maxmin(out.nodes[cur].q, g.matrix(e));
      auto p = maxmin(out.nodes[cur].p, h.matrix(e));
      if (is_zero(p)) continue;
      auto [it, fresh] = index.emplace(std::make_pair(q, p), out.nodes.size());
      if (fresh) {
        out.nodes.push_back({std::move(q), std::move(p), append(out.nodes[cur].rep, e)});
        out.edges.emplace_back(ne, kNoNode);
      }
      out.edges[cur][e] = it->second;
    }
  }
  out.stats.nodes = out.nodes.size();
  return out;
}

// ---------------------------------------------------------------------------
// Pairs augmented with the observability factor of the projected string.
// Two strings reaching the same (q, p) may carry different D values, and the
// controllability and closedness conditions depend on D.

template <class Scalar>
struct AugPairGraph {
  struct Node {
    StateVector<Scalar> q;
    StateVector<Scalar> p;
    ObsFactor<Scalar> f;
    bool is_epsilon = false;
    EventString rep;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> edges;
  ExploreStats stats;
};

template <class Scalar>
AugPairGraph<Scalar> explore_aug_pairs(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                       const Attributes<Scalar>& attrs) {
  if (g.dim() != h.dim()) throw ShapeError("plant and specification dimensions differ");
  using Key = std::tuple<std::vector<Scalar>, std::vector<Scalar>, Scalar, bool, bool>;
  auto key_of = [](const typename AugPairGraph<Scalar>::Node& n) {
    return Key{std::vector<Scalar>(n.q.data(), n.q.data() + n.q.size()),
               std::vector<Scalar>(n.p.data(), n.p.data() + n.p.size()), n.f.d, n.f.empty, n.is_epsilon};
  };
  AugPairGraph<Scalar> out;
  std::map<Key, std::size_t> index;
  const auto ne = g.alphabet_size();
  out.stats.events = ne;

  out.nodes.push_back({g.initial(), h.initial(), {}, true, {}});
  out.edges.emplace_back(ne, kNoNode);
  index.emplace(key_of(out.nodes[0]), 0);
  for (std::size_t cur = 0; cur < out.nodes.size(); ++cur) {
    for (std::size_t e = 0; e < ne; ++e) {
      ++out.stats.visits;
      typename AugPairGraph<Scalar>::Node next{maxmin(out.nodes[cur].q, g.matrix(e)), maxmin(out.nodes[cur].p, h.matrix(e)),
                                               d_step(attrs, out.nodes[cur].f, e), false, append(out.nodes[cur].rep, e)};
      if (is_zero(next.p)) continue;
      auto [it, fresh] = index.emplace(key_of(next), out.nodes.size());
      if (fresh) {
        out.nodes.push_back(std::move(next));
        out.edges.emplace_back(ne, kNoNode);
      }
      out.edges[cur][e] = it->second;
    }
  }
  out.stats.nodes = out.nodes.size();
  return out;
}

// ---------------------------------------------------------------------------
// Observation-compatible product: string pairs (s, t) with P(s) = P(t).

enum class MoveKind { s_move, t_move, sync };

template <class Scalar>
struct ObsProductGraph {
  struct Node {
    StateVector<Scalar> q;   // q₀ ⊙ s
    StateVector<Scalar> p;   // p₀ ⊙ s
    StateVector<Scalar> pt;  // p₀ ⊙ t
    ObsFactor<Scalar> f;     // D(P(s)) = D(P(t))
    bool s_is_epsilon = false;
    EventString s_rep;
    EventString t_rep;
  };
  struct Edge {
    std::size_t from;
    std::size_t event;
    MoveKind kind;
    std::size_t to;
  };
  std::vector<Node> nodes;
  std::vector<Edge> edges;
  ExploreStats stats;

  std::size_t max_s_len() const {
    std::size_t m = 0;
    for (const auto& n : nodes) m = std::max(m, n.s_rep.size());
    return m;
  }
  std::size_t max_t_len() const {
    std::size_t m = 0;
    for (const auto& n : nodes) m = std::max(m, n.t_rep.size());
    return m;
  }
};

/// Builds the product. Representatives minimise |s| first and |t| second, so
/// the earliest failing node carries a shortest failing s.
template <class Scalar>
ObsProductGraph<Scalar> build_obs_product(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                          const Attributes<Scalar>& attrs) {
  if (g.dim() != h.dim()) throw ShapeError("plant and specification dimensions differ");
  using Node = typename ObsProductGraph<Scalar>::Node;
  using Key = std::tuple<std::vector<Scalar>, std::vector<Scalar>, std::vector<Scalar>, Scalar, bool, bool>;
  auto flat = [](const StateVector<Scalar>& v) { return std::vector<Scalar>(v.data(), v.data() + v.size()); };
  auto key_of = [&](const Node& n) { return Key{flat(n.q), flat(n.p), flat(n.pt), n.f.d, n.f.empty, n.s_is_epsilon}; };

  const auto ne = g.alphabet_size();
  std::vector<Node> found;
  std::vector<std::pair<std::size_t, std::size_t>> cost;  // (|s|, |t|)
  std::vector<bool> settled;
  std::vector<std::size_t> settle_order;
  struct RawEdge {
    std::size_t from, event;
    MoveKind kind;
    std::size_t to;
  };
  std::vector<RawEdge> raw_edges;
  std::map<Key, std::size_t> index;

  using Item = std::tuple<std::size_t, std::size_t, std::uint64_t, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> frontier;
  std::uint64_t seq = 0;

  auto offer = [&](Node n) -> std::size_t {
    const std::pair<std::size_t, std::size_t> c{n.s_rep.size(), n.t_rep.size()};
    auto [it, fresh] = index.emplace(key_of(n), found.size());
    if (fresh) {
      found.push_back(std::move(n));
      cost.push_back(c);
      settled.push_back(false);
      frontier.emplace(c.first, c.second, seq++, it->second);
    } else if (!settled[it->second] && c < cost[it->second]) {
      found[it->second].s_rep = std::move(n.s_rep);
      found[it->second].t_rep = std::move(n.t_rep);
      cost[it->second] = c;
      frontier.emplace(c.first, c.second, seq++, it->second);
    }
    return it->second;
  };

  ObsProductGraph<Scalar> out;
  out.stats.events = ne;
  offer(Node{g.initial(), h.initial(), h.initial(), {}, true, {}, {}});

  while (!frontier.empty()) {
    auto [sl, tl, sq, id] = frontier.top();
    frontier.pop();
    if (settled[id] || std::pair{sl, tl} != cost[id]) continue;
    settled[id] = true;
    settle_order.push_back(id);
    const Node cur = found[id];
    for (std::size_t e = 0; e < ne; ++e) {
      ++out.stats.visits;
      if (attrs.at(e).kept_by_projection()) {
        Node n{maxmin(cur.q, g.matrix(e)), maxmin(cur.p, h.matrix(e)), maxmin(cur.pt, h.matrix(e)),
               d_step(attrs, cur.f, e), false, append(cur.s_rep, e), append(cur.t_rep, e)};
        if (is_zero(n.pt) || is_zero(n.p)) continue;
        raw_edges.push_back({id, e, MoveKind::sync, offer(std::move(n))});
      } else {
        Node ns{maxmin(cur.q, g.matrix(e)), maxmin(cur.p, h.matrix(e)), cur.pt, cur.f, false, append(cur.s_rep, e), cur.t_rep};
        if (!is_zero(ns.p)) raw_edges.push_back({id, e, MoveKind::s_move, offer(std::move(ns))});
        Node nt{cur.q, cur.p, maxmin(cur.pt, h.matrix(e)), cur.f, cur.s_is_epsilon, cur.s_rep, append(cur.t_rep, e)};
        if (!is_zero(nt.pt)) raw_edges.push_back({id, e, MoveKind::t_move, offer(std::move(nt))});
      }
    }
  }

  std::vector<std::size_t> rank(found.size());
  for (std::size_t i = 0; i < settle_order.size(); ++i) rank[settle_order[i]] = i;
  out.nodes.resize(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) out.nodes[rank[i]] = std::move(found[i]);
  for (const auto& e : raw_edges) out.edges.push_back({rank[e.from], e.event, e.kind, rank[e.to]});
  std::stable_sort(out.edges.begin(), out.edges.end(),
                   [](const auto& a, const auto& b) { return std::tie(a.from, a.event) < std::tie(b.from, b.event); });
  out.stats.nodes = out.nodes.size();
  return out;
}

// ---------------------------------------------------------------------------
// Projection classes: the distinct (q₀⊙t, p₀⊙t) over all t with P(t) = w.

template <class Scalar>
struct ClassMember {
  StateVector<Scalar> q;
  StateVector<Scalar> p;
  EventString rep;  // shortest, then lexicographically first in declaration order
};

/// Enumerates the class of observation `w`, skipping members where both
/// components are zero. Members come out in length-lexicographic order of
/// their representatives.
template <class Scalar>
std::vector<ClassMember<Scalar>> projection_class(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                                  const Attributes<Scalar>& attrs, const EventString& w,
                                                  ExploreStats* stats = nullptr) {
  for (auto e : w)
    if (!attrs.at(e).kept_by_projection()) throw ContractError("projection_class: observation contains an unobservable event");
  struct State {
    std::size_t k;
    StateVector<Scalar> q, p;
    EventString rep;
  };
  using Key = std::tuple<std::size_t, std::vector<Scalar>, std::vector<Scalar>>;
  auto flat = [](const StateVector<Scalar>& v) { return std::vector<Scalar>(v.data(), v.data() + v.size()); };
  std::map<Key, bool> seen;
  std::deque<State> queue;
  std::vector<ClassMember<Scalar>> out;

  auto visit = [&](State s) {
    if (is_zero(s.q) && is_zero(s.p)) return;
    if (!seen.emplace(Key{s.k, flat(s.q), flat(s.p)}, true).second) return;
    if (s.k == w.size()) out.push_back({s.q, s.p, s.rep});
    queue.push_back(std::move(s));
  };
  visit({0, g.initial(), h.initial(), {}});
  while (!queue.empty()) {
    State cur = std::move(queue.front());
    queue.pop_front();
    for (std::size_t e = 0; e < g.alphabet_size(); ++e) {
      if (stats) ++stats->visits;
      const bool observable = attrs.at(e).kept_by_projection();
      if (observable && (cur.k == w.size() || w[cur.k] != e)) continue;
      visit({cur.k + (observable ? 1 : 0), maxmin(cur.q, g.matrix(e)), maxmin(cur.p, h.matrix(e)), append(cur.rep, e)});
    }
  }
  if (stats) stats->nodes += seen.size();
  return out;
}

// ---------------------------------------------------------------------------
// Renderings

enum class TreeMode { paper, graph };

template <class Scalar>
std::string pair_label(const StateVector<Scalar>& q, const StateVector<Scalar>& p) {
  return "(" + to_string(q) + ", " + to_string(p) + ")";
}

/// Computing tree: each vertex expands every event, a child equal to one of
/// its ancestors (or its parent) becomes a leaf. Children reaching the same
/// pair are merged under a label such as "a or b".
template <class Scalar>
struct ComputingTree {
  struct Vertex {
    StateVector<Scalar> q, p;
    std::vector<std::size_t> via;  // events leading here from the parent
    bool leaf = false;
    std::vector<std::size_t> children;
  };
  std::vector<Vertex> vertices;  // vertices[0] is the root
};

template <class Scalar>
ComputingTree<Scalar> expand_pair_tree(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                       std::size_t limit = 200000) {
  ComputingTree<Scalar> tree;
  tree.vertices.push_back({g.initial(), h.initial(), {}, false, {}});
  std::vector<std::size_t> path;

  std::function<void(std::size_t)> grow = [&](std::size_t v) {
    path.push_back(v);
    const auto q = tree.vertices[v].q;
    const auto p = tree.vertices[v].p;
    std::vector<std::size_t> kids;
    for (std::size_t e = 0; e < g.alphabet_size(); ++e) {
      auto nq = maxmin(q, g.matrix(e));
      auto np = maxmin(p, h.matrix(e));
      if (is_zero(np)) continue;
      bool merged = false;
      for (auto k : kids) {
        if (same(tree.vertices[k].q, nq) && same(tree.vertices[k].p, np)) {
          tree.vertices[k].via.push_back(e);
          merged = true;
          break;
        }
      }
      if (merged) continue;
      bool repeats = false;
      for (auto a : path)
        if (same(tree.vertices[a].q, nq) && same(tree.vertices[a].p, np)) repeats = true;
      if (tree.vertices.size() >= limit) throw std::length_error("computing tree exceeds vertex limit");
      tree.vertices.push_back({std::move(nq), std::move(np), {e}, repeats, {}});
      kids.push_back(tree.vertices.size() - 1);
    }
    tree.vertices[v].children = kids;
    for (auto k : kids)
      if (!tree.vertices[k].leaf) grow(k);
    path.pop_back();
  };
  grow(0);
  return tree;
}

template <class Scalar>
std::string render_tree(const FuzzyAutomaton<Scalar>& g, const ComputingTree<Scalar>& tree) {
  std::ostringstream os;
  std::function<void(std::size_t, int)> walk = [&](std::size_t v, int depth) {
    const auto& x = tree.vertices[v];
    os << std::string(static_cast<std::size_t>(depth) * 2, ' ');
    if (!x.via.empty()) {
      for (std::size_t i = 0; i < x.via.size(); ++i) os << (i ? " or " : "") << g.event(x.via[i]).name;
      os << ": ";
    }
    os << (x.leaf ? "_" : "") << pair_label(x.q, x.p) << (x.leaf ? "_" : "") << "\n";
    for (auto c : x.children) walk(c, depth + 1);
  };
  walk(0, 0);
  return os.str();
}

template <class Scalar>
std::string render_pair_graph(const FuzzyAutomaton<Scalar>& g, const PairGraph<Scalar>& pg, bool dot) {
  std::ostringstream os;
  if (dot) {
    os << "digraph pairs {\n";
    for (std::size_t i = 0; i < pg.nodes.size(); ++i)
      os << "  n" << i << " [label=\"" << format_event_string(g, pg.nodes[i].rep, "", "eps") << "\\n"
         << pair_label(pg.nodes[i].q, pg.nodes[i].p) << "\"];\n";
    for (std::size_t i = 0; i < pg.nodes.size(); ++i)
      for (std::size_t e = 0; e < pg.edges[i].size(); ++e)
        if (pg.edges[i][e] != kNoNode)
          os << "  n" << i << " -> n" << pg.edges[i][e] << " [label=\"" << g.event(e).name << "\"];\n";
    os << "}\n";
    return os.str();
  }
  for (std::size_t i = 0; i < pg.nodes.size(); ++i) {
    os << i << "  " << format_event_string(g, pg.nodes[i].rep) << "  " << pair_label(pg.nodes[i].q, pg.nodes[i].p);
    for (std::size_t e = 0; e < pg.edges[i].size(); ++e)
      if (pg.edges[i][e] != kNoNode) os << "  " << g.event(e).name << "->" << pg.edges[i][e];
    os << "\n";
  }
  return os.str();
}

template <class Scalar>
std::string dump_tree(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h, TreeMode mode, bool dot = false) {
  if (mode == TreeMode::paper) return render_tree(g, expand_pair_tree(g, h));
  return render_pair_graph(g, explore_pairs(g, h), dot);
}

}  // namespace fdes
