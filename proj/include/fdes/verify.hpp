#pragma once

// Decision procedures for controllability, observability and L_m-closedness,
// the existence decision that combines them, and the V/W tables.

#include "fdes/reach.hpp"
#include "fdes/report.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fdes {

namespace detail {

template <class Scalar>
Scalar scaled(const ObsFactor<Scalar>& f, const Scalar& v) {
  return f.empty ? ScalarTraits<Scalar>::zero() : f.d * v;
}

template <class Scalar>
Scalar min3(const Scalar& a, const Scalar& b, const Scalar& c) {
  return smin(a, smin(b, c));
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Controllability

/// Evaluates the controllability inequality at every node of the D-augmented
/// pair graph: V = min{pr(K)^f(s), Σ_uc^f(σ), L^f(sσ)} against W = pr(K)^f(sσ).
template <class Scalar>
VerificationReport<Scalar> check_controllability(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                                 const Attributes<Scalar>& attrs) {
  using T = ScalarTraits<Scalar>;
  VerificationReport<Scalar> rep;
  rep.condition = Condition::controllability;
  const auto aug = explore_aug_pairs(g, h, attrs);
  rep.stats.aug_nodes = aug.stats.nodes;
  rep.stats.visits = aug.stats.visits;
  for (const auto& n : aug.nodes) {
    const Scalar pr_s = n.is_epsilon ? T::one() : detail::scaled(n.f, height(n.p));
    for (std::size_t e = 0; e < g.alphabet_size(); ++e) {
      const auto f2 = d_step(attrs, n.f, e);
      ConditionRow<Scalar> row;
      row.s = n.rep;
      row.sigma = e;
      row.x1 = height(n.p);
      row.x2 = attrs.at(e).unctrl;
      row.x3 = height(maxmin(n.q, g.matrix(e)));
      row.y = height(maxmin(n.p, h.matrix(e)));
      row.V = detail::min3(pr_s, detail::scaled(f2, row.x2), detail::scaled(f2, row.x3));
      row.W = detail::scaled(f2, row.y);
      row.pass = T::leq(row.V, row.W);
      rep.add(std::move(row));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Observability

/// Evaluates the observability inequality at every node of the
/// observation-compatible product.
template <class Scalar>
VerificationReport<Scalar> check_observability(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                               const Attributes<Scalar>& attrs) {
  using T = ScalarTraits<Scalar>;
  VerificationReport<Scalar> rep;
  rep.condition = Condition::observability;
  const auto prod = build_obs_product(g, h, attrs);
  rep.stats.product_nodes = prod.stats.nodes;
  rep.stats.visits = prod.stats.visits;
  for (const auto& n : prod.nodes) {
    for (std::size_t e = 0; e < g.alphabet_size(); ++e) {
      // P(s) = P(t), so the factor of tσ equals the factor of sσ.
      const auto f2 = d_step(attrs, n.f, e);
      ConditionRow<Scalar> row;
      row.s = n.s_rep;
      row.t = n.t_rep;
      row.sigma = e;
      row.x1 = height(n.p);
      row.x2 = height(maxmin(n.pt, h.matrix(e)));
      row.x3 = height(maxmin(n.q, g.matrix(e)));
      row.y = height(maxmin(n.p, h.matrix(e)));
      const Scalar first = n.s_is_epsilon ? T::one() : detail::scaled(n.f, row.x1);
      row.V = detail::min3(first, detail::scaled(f2, row.x2), detail::scaled(f2, row.x3));
      row.W = detail::scaled(f2, row.y);
      row.pass = T::leq(row.V, row.W);
      rep.add(std::move(row));
    }
  }
  return rep;
}

/// The tabular form used in the worked examples: for each reachable pair
/// representative s, every distinct (q₀⊙t, p₀⊙t) with P(t) = P(s), and every σ.
/// Values are computed from the strings themselves.
template <class Scalar>
std::vector<ConditionRow<Scalar>> observability_table(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                                      const Attributes<Scalar>& attrs,
                                                      const std::vector<EventString>& s_list) {
  using T = ScalarTraits<Scalar>;
  std::vector<ConditionRow<Scalar>> rows;
  for (const auto& s : s_list) {
    const auto ps = reach(h, s);
    const auto qs = reach(g, s);
    const auto f = obs_factor_of(attrs, s);
    for (const auto& member : projection_class(g, h, attrs, project(attrs, s))) {
      for (std::size_t e = 0; e < g.alphabet_size(); ++e) {
        const auto f2 = d_step(attrs, f, e);
        ConditionRow<Scalar> row;
        row.s = s;
        row.t = member.rep;
        row.sigma = e;
        row.x1 = height(ps);
        row.x2 = height(maxmin(member.p, h.matrix(e)));
        row.x3 = height(maxmin(qs, g.matrix(e)));
        row.y = height(maxmin(ps, h.matrix(e)));
        const Scalar first = s.empty() ? T::one() : detail::scaled(f, row.x1);
        row.V = detail::min3(first, detail::scaled(f2, row.x2), detail::scaled(f2, row.x3));
        row.W = detail::scaled(f2, row.y);
        row.pass = T::leq(row.V, row.W);
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

template <class Scalar>
std::vector<ConditionRow<Scalar>> observability_table(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                                      const Attributes<Scalar>& attrs) {
  std::vector<EventString> reps;
  for (const auto& n : explore_pairs(g, h).nodes) reps.push_back(n.rep);
  return observability_table(g, h, attrs, reps);
}

// ---------------------------------------------------------------------------
// L_m-closedness

/// K = pr(K)^f ∩ L_{G,m}, checked at every D-augmented pair node. V holds K(s),
/// W the right-hand side. At ε the right-hand side is 1: K(ε) = 1 is a
/// hypothesis of the existence theorem and L(ε) carries no factor.
template <class Scalar>
VerificationReport<Scalar> check_lm_closed(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                           const Attributes<Scalar>& attrs) {
  using T = ScalarTraits<Scalar>;
  VerificationReport<Scalar> rep;
  rep.condition = Condition::lm_closed;
  const auto lang = SpecLanguage<Scalar>::of(h);
  const auto aug = explore_aug_pairs(g, h, attrs);
  rep.stats.aug_nodes = aug.stats.nodes;
  rep.stats.visits = aug.stats.visits;
  for (const auto& n : aug.nodes) {
    ConditionRow<Scalar> row;
    row.s = n.rep;
    row.x1 = height(n.p);
    row.x3 = marked_degree_at(g, n.q);
    row.y = marked_degree_at(h, n.p);
    row.V = lang.at(g, h, n.q, n.p, n.f, n.is_epsilon);
    row.W = n.is_epsilon ? T::one() : smin(detail::scaled(n.f, row.x1), row.x3);
    row.pass = T::eq(row.V, row.W);
    rep.add(std::move(row));
  }
  if (lang.closure) rep.notes.push_back("K is the L_{G,m}-closure of the language generated by the specification");
  return rep;
}

// ---------------------------------------------------------------------------
// Hypotheses of the existence theorem

/// K(ε) = 1, pr(K) ⊆ L_{G,m} and K ⊆ L_{G,m}, checked at the reachable
/// D-augmented pairs (these carry every value the languages can take).
/// Rows: V is the left side, W the plant's marked degree; the ε row compares
/// K(ε) with 1.
template <class Scalar>
VerificationReport<Scalar> check_hypotheses(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                            const Attributes<Scalar>& attrs) {
  using T = ScalarTraits<Scalar>;
  VerificationReport<Scalar> rep;
  rep.condition = Condition::hypotheses;
  const auto lang = SpecLanguage<Scalar>::of(h);
  const auto aug = explore_aug_pairs(g, h, attrs);
  rep.stats.aug_nodes = aug.stats.nodes;
  rep.stats.visits = aug.stats.visits;
  for (const auto& n : aug.nodes) {
    const Scalar mg = marked_degree_at(g, n.q);
    const Scalar k = lang.at(g, h, n.q, n.p, n.f, n.is_epsilon);
    if (n.is_epsilon) {
      ConditionRow<Scalar> row;
      row.V = k;
      row.W = T::one();
      row.pass = T::eq(k, T::one());
      if (!row.pass) rep.notes.push_back("K(ε) = " + T::str(k) + ", expected 1");
      rep.add(std::move(row));
    }
    ConditionRow<Scalar> prefix_row;
    prefix_row.s = n.rep;
    prefix_row.x1 = height(n.p);
    prefix_row.x3 = mg;
    prefix_row.V = height(n.p);
    prefix_row.W = mg;
    prefix_row.pass = T::leq(prefix_row.V, mg);
    if (!prefix_row.pass) rep.notes.push_back("pr(K) is not contained in L_{G,m}");
    rep.add(std::move(prefix_row));
    if (!n.is_epsilon) {
      ConditionRow<Scalar> k_row;
      k_row.s = n.rep;
      k_row.x3 = mg;
      k_row.V = k;
      k_row.W = mg;
      k_row.pass = T::leq(k, mg);
      if (!k_row.pass) rep.notes.push_back("K is not contained in L_{G,m}");
      rep.add(std::move(k_row));
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Existence

enum class Decision { exists, condition_fails, hypothesis_violation };

template <class Scalar>
struct TheoremDecision {
  Decision status = Decision::exists;
  VerificationReport<Scalar> hypotheses;
  std::optional<VerificationReport<Scalar>> controllability;
  std::optional<VerificationReport<Scalar>> observability;
  std::optional<VerificationReport<Scalar>> lm_closed;
  ReportStats stats;

  bool exists() const { return status == Decision::exists; }
};

template <class Scalar>
TheoremDecision<Scalar> theorem1_decision(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                          const Attributes<Scalar>& attrs) {
  TheoremDecision<Scalar> out;
  out.hypotheses = check_hypotheses(g, h, attrs);
  const auto states = explore_states(h);
  const auto pairs = explore_pairs(g, h);
  out.stats.m1 = states.stats.nodes;
  out.stats.m2 = pairs.stats.nodes;
  out.stats.visits = states.stats.visits + pairs.stats.visits;
  if (!out.hypotheses.verdict) {
    out.status = Decision::hypothesis_violation;
    return out;
  }
  out.controllability = check_controllability(g, h, attrs);
  out.observability = check_observability(g, h, attrs);
  out.lm_closed = check_lm_closed(g, h, attrs);
  out.stats.aug_nodes = out.controllability->stats.aug_nodes;
  out.stats.product_nodes = out.observability->stats.product_nodes;
  out.stats.visits += out.controllability->stats.visits + out.observability->stats.visits;
  for (auto* r : {&*out.controllability, &*out.observability, &*out.lm_closed}) r->stats = out.stats;
  out.hypotheses.stats = out.stats;
  const bool ok = out.controllability->verdict && out.observability->verdict && out.lm_closed->verdict;
  out.status = ok ? Decision::exists : Decision::condition_fails;
  return out;
}

// ---------------------------------------------------------------------------
// Prefix closure of the specification automaton

/// Whether the language generated by H is the prefix closure of its marked
/// language: at every reachable state the height must equal the best marked
/// degree reachable from it. Failures are warnings, not verdicts.
template <class Scalar>
std::vector<std::string> validate_prefix_closure(const FuzzyAutomaton<Scalar>& h) {
  using T = ScalarTraits<Scalar>;
  const auto graph = explore_states(h);
  const auto n = graph.nodes.size();
  std::vector<Scalar> best(n);
  for (std::size_t i = 0; i < n; ++i) best[i] = marked_degree_at(h, graph.nodes[i].state);
  // Propagate maxima backwards until nothing changes; the graph is small.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < n; ++i)
      for (auto j : graph.edges[i])
        if (j != kNoNode && best[i] < best[j]) {
          best[i] = best[j];
          changed = true;
        }
  }
  std::vector<std::string> warnings;
  for (std::size_t i = 0; i < n; ++i) {
    const auto hv = height(graph.nodes[i].state);
    if (!T::eq(hv, best[i]))
      warnings.push_back("state " + to_string(graph.nodes[i].state) + " (via " + format_event_string(h, graph.nodes[i].rep) +
                         ") generates " + T::str(hv) + " but its marked continuations reach only " + T::str(best[i]));
  }
  return warnings;
}

}  // namespace fdes
