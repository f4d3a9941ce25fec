#pragma once

// Supervisor synthesis from the constructive sufficiency proof, closed-loop
// evaluation, admissibility and nonblocking.
//
// A supervisor maps observations to enablement degrees. It is stored as an
// observer: each node stands for the observations that lead to the same set of
// consistent (plant, specification) state pairs and the same observability
// factor, so a finite table covers the infinitely many observations.

#include "fdes/verify.hpp"

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace fdes {

/// An observation has no entry in the supervisor's table.
class DomainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

template <class Scalar>
struct Supervisor {
  using Part = std::pair<StateVector<Scalar>, StateVector<Scalar>>;

  struct Node {
    EventString observation;         // shortest observation reaching this node
    std::vector<Part> parts;         // consistent (q₀⊙s, p₀⊙s); empty for imported tables
    ObsFactor<Scalar> f;             // D of the observation
    std::vector<Scalar> policy;      // enablement degree per event
    std::vector<std::size_t> next;   // per observable event; kNoNode otherwise
  };

  std::vector<std::string> events;
  Attributes<Scalar> attrs;
  std::vector<Node> nodes;  // nodes[0] is the observation ε
  std::vector<std::string> notes;

  std::size_t step(std::size_t node, std::size_t e) const {
    if (!attrs.at(e).kept_by_projection()) return node;
    const auto nx = nodes.at(node).next.at(e);
    if (nx == kNoNode) throw DomainError("observation leaves the supervisor's table at event '" + events.at(e) + "'");
    return nx;
  }

  /// Node reached by an observation. Unobservable events are ignored, so a
  /// raw string may be passed as well.
  std::size_t locate(const EventString& w) const {
    std::size_t node = 0;
    for (auto e : w) node = step(node, e);
    return node;
  }

  Scalar enable(const EventString& w, std::size_t e) const { return nodes.at(locate(w)).policy.at(e); }
};

// ---------------------------------------------------------------------------
// Synthesis

namespace detail {

template <class Scalar>
using PartSet = std::set<typename Supervisor<Scalar>::Part, PairLess<Scalar>>;

/// Adds everything reachable through unobservable events.
template <class Scalar>
PartSet<Scalar> unobservable_closure(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                     const Attributes<Scalar>& attrs, PartSet<Scalar> parts, std::size_t& visits) {
  std::vector<typename Supervisor<Scalar>::Part> work(parts.begin(), parts.end());
  while (!work.empty()) {
    auto cur = std::move(work.back());
    work.pop_back();
    for (std::size_t e = 0; e < g.alphabet_size(); ++e) {
      if (attrs.at(e).kept_by_projection()) continue;
      ++visits;
      typename Supervisor<Scalar>::Part nx{maxmin(cur.first, g.matrix(e)), maxmin(cur.second, h.matrix(e))};
      if (is_zero(nx.first) && is_zero(nx.second)) continue;
      if (parts.insert(nx).second) work.push_back(std::move(nx));
    }
  }
  return parts;
}

}  // namespace detail

/// Builds the supervisor of the sufficiency construction.
///
/// S(ε)(σ) = pr(K)^f(σ). When some event is fully unobservable every string has
/// another string with the same projection, and the first construction case
/// applies everywhere; the "other string" is taken as the best one in the
/// projection class. When all events are observable, projection is injective
/// and the second case applies. If consistent strings of one observation give
/// different values, the maximum is used and the disagreement is noted.
template <class Scalar>
Supervisor<Scalar> synthesize(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                              const Attributes<Scalar>& attrs, ExploreStats* stats = nullptr) {
  using T = ScalarTraits<Scalar>;
  using Part = typename Supervisor<Scalar>::Part;
  using Key = std::tuple<std::vector<std::pair<std::vector<Scalar>, std::vector<Scalar>>>, Scalar, bool>;
  auto flat = [](const StateVector<Scalar>& v) { return std::vector<Scalar>(v.data(), v.data() + v.size()); };
  auto key_of = [&](const detail::PartSet<Scalar>& parts, const ObsFactor<Scalar>& f) {
    Key k;
    for (const auto& [q, p] : parts) std::get<0>(k).emplace_back(flat(q), flat(p));
    std::get<1>(k) = f.d;
    std::get<2>(k) = f.empty;
    return k;
  };

  Supervisor<Scalar> sup;
  const auto ne = g.alphabet_size();
  for (const auto& e : g.events()) sup.events.push_back(e.name);
  sup.attrs = attrs;
  const bool case_one = !all_events_observable(attrs);
  sup.notes.push_back(case_one ? "some event is fully unobservable: every observation uses the projection-class construction, "
                                 "with the other string chosen as the best in its class"
                               : "all events are observable: projection is injective and the single-string construction applies");

  ExploreStats local;
  local.events = ne;
  std::map<Key, std::size_t> index;
  std::vector<detail::PartSet<Scalar>> part_sets;

  auto add_node = [&](detail::PartSet<Scalar> parts, ObsFactor<Scalar> f, EventString obs) {
    const auto key = key_of(parts, f);
    auto [it, fresh] = index.emplace(key, sup.nodes.size());
    if (fresh) {
      typename Supervisor<Scalar>::Node n;
      n.observation = std::move(obs);
      n.parts.assign(parts.begin(), parts.end());
      n.f = f;
      n.next.assign(ne, kNoNode);
      sup.nodes.push_back(std::move(n));
      part_sets.push_back(std::move(parts));
    }
    return it->second;
  };

  detail::PartSet<Scalar> root_parts;
  root_parts.insert(Part{g.initial(), h.initial()});
  add_node(detail::unobservable_closure(g, h, attrs, std::move(root_parts), local.visits), {}, {});

  std::size_t divergences = 0;
  for (std::size_t cur = 0; cur < sup.nodes.size(); ++cur) {
    // Transitions first: policy computation does not change the node list.
    for (std::size_t e = 0; e < ne; ++e) {
      ++local.visits;
      if (!attrs.at(e).kept_by_projection()) continue;
      detail::PartSet<Scalar> moved;
      for (const auto& [q, p] : part_sets[cur]) {
        Part nx{maxmin(q, g.matrix(e)), maxmin(p, h.matrix(e))};
        if (!(is_zero(nx.first) && is_zero(nx.second))) moved.insert(std::move(nx));
      }
      auto closed = detail::unobservable_closure(g, h, attrs, std::move(moved), local.visits);
      const auto f2 = d_step(attrs, sup.nodes[cur].f, e);
      const auto obs = append(sup.nodes[cur].observation, e);
      const auto id = add_node(std::move(closed), f2, obs);
      sup.nodes[cur].next[e] = id;
    }

    auto& node = sup.nodes[cur];
    node.policy.assign(ne, T::zero());
    for (std::size_t e = 0; e < ne; ++e) {
      if (cur == 0) {
        // S(ε)(σ) = pr(K)^f(σ)
        node.policy[e] = eff_prefix(h, attrs, EventString{e});
        continue;
      }
      const auto f2 = d_step(attrs, node.f, e);
      const Scalar uc_f = detail::scaled(f2, attrs.at(e).unctrl);
      Scalar best_alt = T::zero();
      for (const auto& [q, p] : node.parts) best_alt = smax(best_alt, height(maxmin(p, h.matrix(e))));

      bool first = true;
      Scalar value = T::zero();
      Scalar lowest = T::zero();
      for (const auto& [q, p] : node.parts) {
        const Scalar pr_next = height(maxmin(p, h.matrix(e)));
        const Scalar l_next = detail::scaled(f2, height(maxmin(q, g.matrix(e))));
        Scalar v;
        if (case_one) {
          v = T::leq(pr_next, best_alt) ? smax(uc_f, smin(detail::scaled(f2, best_alt), l_next))
                                        : smax(uc_f, detail::scaled(f2, pr_next));
        } else {
          v = T::leq(pr_next, attrs.at(e).unctrl) ? smin(uc_f, l_next) : detail::scaled(f2, pr_next);
        }
        value = first ? v : smax(value, v);
        lowest = first ? v : smin(lowest, v);
        first = false;
      }
      if (!first && !T::eq(value, lowest)) ++divergences;
      node.policy[e] = value;
    }
  }
  if (divergences)
    sup.notes.push_back(std::to_string(divergences) +
                        " (observation, event) entries where consistent strings disagree; the maximum was used");
  local.nodes = sup.nodes.size();
  if (stats) *stats = local;
  return sup;
}

/// A supervisor that enables each event with a fixed degree after every observation.
template <class Scalar>
Supervisor<Scalar> constant_supervisor(const FuzzyAutomaton<Scalar>& g, const Attributes<Scalar>& attrs,
                                       const std::vector<Scalar>& degrees) {
  if (degrees.size() != g.alphabet_size()) throw ShapeError("one enablement degree per event expected");
  Supervisor<Scalar> sup;
  for (const auto& e : g.events()) sup.events.push_back(e.name);
  sup.attrs = attrs;
  typename Supervisor<Scalar>::Node n;
  n.policy = degrees;
  n.next.assign(g.alphabet_size(), kNoNode);
  for (std::size_t e = 0; e < g.alphabet_size(); ++e)
    if (attrs.at(e).kept_by_projection()) n.next[e] = 0;
  sup.nodes.push_back(std::move(n));
  return sup;
}

template <class Scalar>
Supervisor<Scalar> constant_supervisor(const FuzzyAutomaton<Scalar>& g, const Attributes<Scalar>& attrs, const Scalar& degree) {
  return constant_supervisor(g, attrs, std::vector<Scalar>(g.alphabet_size(), degree));
}

// ---------------------------------------------------------------------------
// Closed loop, string by string

/// Running closed-loop degree of every prefix of s, index k holding the value
/// for the first k events.
template <class Scalar>
std::vector<Scalar> closed_loop_trace(const FuzzyAutomaton<Scalar>& g, const Supervisor<Scalar>& sup,
                                      const Attributes<Scalar>& attrs, const EventString& s) {
  using T = ScalarTraits<Scalar>;
  std::vector<Scalar> out{T::one()};
  Scalar cl = T::one();
  EventString prefix;
  std::size_t node = 0;
  for (auto e : s) {
    if (T::positive(cl)) cl = smin(cl, smin(eff_generated(g, attrs, append(prefix, e)), sup.nodes.at(node).policy.at(e)));
    node = sup.step(node, e);
    prefix.push_back(e);
    out.push_back(cl);
  }
  return out;
}

template <class Scalar>
Scalar closed_loop_degree(const FuzzyAutomaton<Scalar>& g, const Supervisor<Scalar>& sup, const Attributes<Scalar>& attrs,
                          const EventString& s) {
  return closed_loop_trace(g, sup, attrs, s).back();
}

/// Intersection of the closed loop with the plant's marked language.
template <class Scalar>
Scalar closed_loop_marked(const FuzzyAutomaton<Scalar>& g, const Supervisor<Scalar>& sup, const Attributes<Scalar>& attrs,
                          const EventString& s) {
  return smin(closed_loop_degree(g, sup, attrs, s), marked_degree(g, s));
}

// ---------------------------------------------------------------------------
// Closed loop, as a finite graph

/// Everything that determines the closed loop's future: plant and
/// specification states, the observability factor, the supervisor node and
/// the running degree. The running degree ranges over a finite set, so the
/// graph is finite and suprema over extensions are maxima over reachable nodes.
template <class Scalar>
struct ClosedLoopGraph {
  struct Node {
    StateVector<Scalar> q, p;
    ObsFactor<Scalar> f;
    bool is_epsilon = false;
    std::size_t sup_node = 0;
    Scalar cl{};
    EventString rep;
  };
  std::vector<Node> nodes;
  std::vector<std::vector<std::size_t>> edges;
  ExploreStats stats;
};

template <class Scalar>
ClosedLoopGraph<Scalar> build_closed_loop(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                          const Attributes<Scalar>& attrs, const Supervisor<Scalar>& sup) {
  using T = ScalarTraits<Scalar>;
  using Node = typename ClosedLoopGraph<Scalar>::Node;
  using Key = std::tuple<std::vector<Scalar>, std::vector<Scalar>, Scalar, bool, bool, std::size_t, Scalar>;
  auto flat = [](const StateVector<Scalar>& v) { return std::vector<Scalar>(v.data(), v.data() + v.size()); };
  auto key_of = [&](const Node& n) { return Key{flat(n.q), flat(n.p), n.f.d, n.f.empty, n.is_epsilon, n.sup_node, n.cl}; };

  ClosedLoopGraph<Scalar> out;
  const auto ne = g.alphabet_size();
  out.stats.events = ne;
  std::map<Key, std::size_t> index;
  out.nodes.push_back({g.initial(), h.initial(), {}, true, 0, T::one(), {}});
  out.edges.emplace_back(ne, kNoNode);
  index.emplace(key_of(out.nodes[0]), 0);
  for (std::size_t cur = 0; cur < out.nodes.size(); ++cur) {
    for (std::size_t e = 0; e < ne; ++e) {
      ++out.stats.visits;
      const Node& n = out.nodes[cur];
      Node nx{maxmin(n.q, g.matrix(e)), maxmin(n.p, h.matrix(e)), d_step(attrs, n.f, e), false, sup.step(n.sup_node, e), n.cl,
              append(n.rep, e)};
      if (is_zero(nx.q) && is_zero(nx.p)) continue;
      if (T::positive(n.cl))
        nx.cl = smin(n.cl, smin(detail::scaled(nx.f, height(nx.q)), sup.nodes.at(n.sup_node).policy.at(e)));
      auto [it, fresh] = index.emplace(key_of(nx), out.nodes.size());
      if (fresh) {
        out.nodes.push_back(std::move(nx));
        out.edges.emplace_back(ne, kNoNode);
      }
      out.edges[cur][e] = it->second;
    }
  }
  out.stats.nodes = out.nodes.size();
  return out;
}

namespace detail {

template <class Scalar>
Scalar cl_marked(const FuzzyAutomaton<Scalar>& g, const typename ClosedLoopGraph<Scalar>::Node& n) {
  return smin(n.cl, marked_degree_at(g, n.q));
}

/// best[i] = max of value over nodes reachable from i (including i).
template <class Scalar>
std::vector<Scalar> reachable_max(const ClosedLoopGraph<Scalar>& graph, std::vector<Scalar> best) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = graph.nodes.size(); i-- > 0;)
      for (auto j : graph.edges[i])
        if (j != kNoNode && best[i] < best[j]) {
          best[i] = best[j];
          changed = true;
        }
  }
  return best;
}

inline bool within_depth(const EventString& rep, std::size_t depth) { return depth == 0 || rep.size() <= depth; }

}  // namespace detail

/// min{Σ_uc^f(σ), L^f(sσ)} ≤ S(P(s))(σ) for every s whose shortest
/// representative has length ≤ depth (0 for all reachable s).
template <class Scalar>
VerificationReport<Scalar> check_admissibility(const FuzzyAutomaton<Scalar>& g, const Attributes<Scalar>& attrs,
                                               const Supervisor<Scalar>& sup, std::size_t depth = 0) {
  using T = ScalarTraits<Scalar>;
  VerificationReport<Scalar> rep;
  rep.condition = Condition::admissibility;
  const auto graph = build_closed_loop(g, g, attrs, sup);
  rep.stats.visits = graph.stats.visits;
  for (const auto& n : graph.nodes) {
    if (!detail::within_depth(n.rep, depth)) continue;
    for (std::size_t e = 0; e < g.alphabet_size(); ++e) {
      const auto f2 = d_step(attrs, n.f, e);
      ConditionRow<Scalar> row;
      row.s = n.rep;
      row.sigma = e;
      row.x2 = attrs.at(e).unctrl;
      row.x3 = height(maxmin(n.q, g.matrix(e)));
      row.V = smin(detail::scaled(f2, row.x2), detail::scaled(f2, row.x3));
      row.W = sup.nodes.at(n.sup_node).policy.at(e);
      row.pass = T::leq(row.V, row.W);
      rep.add(std::move(row));
    }
  }
  return rep;
}

/// Generated closed-loop degree against the factored prefix closure of the
/// marked closed loop: L(s) = D(P(s))·sup_{t ⊒ s} L_m(t), with 1 at ε.
template <class Scalar>
VerificationReport<Scalar> check_nonblocking(const FuzzyAutomaton<Scalar>& g, const Attributes<Scalar>& attrs,
                                             const Supervisor<Scalar>& sup, std::size_t depth = 0) {
  using T = ScalarTraits<Scalar>;
  VerificationReport<Scalar> rep;
  rep.condition = Condition::nonblocking;
  const auto graph = build_closed_loop(g, g, attrs, sup);
  rep.stats.visits = graph.stats.visits;
  std::vector<Scalar> marked(graph.nodes.size());
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) marked[i] = detail::cl_marked(g, graph.nodes[i]);
  const auto best = detail::reachable_max(graph, marked);
  for (std::size_t i = 0; i < graph.nodes.size(); ++i) {
    const auto& n = graph.nodes[i];
    if (!detail::within_depth(n.rep, depth)) continue;
    ConditionRow<Scalar> row;
    row.s = n.rep;
    row.x1 = best[i];
    row.V = n.cl;
    row.W = n.is_epsilon ? T::one() : detail::scaled(n.f, best[i]);
    row.pass = T::eq(row.V, row.W);
    rep.add(std::move(row));
  }
  rep.notes.push_back("suprema over extensions are maxima over the finite closed-loop graph");
  return rep;
}

/// The closed-loop equalities promised by the existence theorem:
/// L_{S/G}(s) = pr(K)^f(s) (tag "generated") and L_{S/G,m}(s) = K(s)
/// (tag "marked"), for every s up to `depth` (0 for all).
template <class Scalar>
VerificationReport<Scalar> check_closed_loop(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                             const Attributes<Scalar>& attrs, const Supervisor<Scalar>& sup,
                                             std::size_t depth = 0) {
  using T = ScalarTraits<Scalar>;
  VerificationReport<Scalar> rep;
  rep.condition = Condition::closed_loop;
  const auto lang = SpecLanguage<Scalar>::of(h);
  const auto graph = build_closed_loop(g, h, attrs, sup);
  rep.stats.visits = graph.stats.visits;
  for (const auto& n : graph.nodes) {
    if (!detail::within_depth(n.rep, depth)) continue;
    ConditionRow<Scalar> gen;
    gen.s = n.rep;
    gen.tag = "generated";
    gen.x1 = height(n.p);
    gen.V = n.cl;
    gen.W = n.is_epsilon ? T::one() : detail::scaled(n.f, gen.x1);
    gen.pass = T::eq(gen.V, gen.W);
    rep.add(std::move(gen));

    ConditionRow<Scalar> mk;
    mk.s = n.rep;
    mk.tag = "marked";
    mk.x3 = marked_degree_at(g, n.q);
    mk.V = detail::cl_marked(g, n);
    mk.W = lang.at(g, h, n.q, n.p, n.f, n.is_epsilon);
    mk.pass = T::eq(mk.V, mk.W);
    rep.add(std::move(mk));
  }
  return rep;
}

}  // namespace fdes
