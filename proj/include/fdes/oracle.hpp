#pragma once

// Brute-force reference for the checkers. Strings are enumerated explicitly
// and every quantity is evaluated from the string-level definitions in
// model.hpp; no state graph is built here.

#include "fdes/report.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace fdes {

struct OracleConfig {
  std::size_t max_len = 3;    // bound on |s|
  std::size_t max_t_len = 3;  // bound on |t| for observability
  bool controllability = true;
  bool observability = true;
  bool lm_closed = true;
};

/// All strings of length ≤ max_len over `alphabet` events, length-lexicographic
/// in declaration order.
inline std::vector<EventString> enumerate_strings(std::size_t alphabet, std::size_t max_len) {
  std::vector<EventString> out{{}};
  std::size_t level_start = 0;
  for (std::size_t len = 1; len <= max_len && alphabet > 0; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_start; i < level_end; ++i)
      for (std::size_t e = 0; e < alphabet; ++e) out.push_back(append(out[i], e));
    level_start = level_end;
  }
  return out;
}

template <class Scalar>
ConditionRow<Scalar> oracle_controllability_row(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                                const Attributes<Scalar>& attrs, const EventString& s, std::size_t e) {
  const auto se = append(s, e);
  ConditionRow<Scalar> row;
  row.s = s;
  row.sigma = e;
  row.x1 = generated_degree(h, s);
  row.x2 = attrs.at(e).unctrl;
  row.x3 = generated_degree(g, se);
  row.y = generated_degree(h, se);
  row.V = smin(eff_prefix(h, attrs, s), smin(eff_unctrl(attrs, s, e), eff_generated(g, attrs, se)));
  row.W = eff_prefix(h, attrs, se);
  row.pass = ScalarTraits<Scalar>::leq(row.V, row.W);
  return row;
}

template <class Scalar>
ConditionRow<Scalar> oracle_observability_row(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                              const Attributes<Scalar>& attrs, const EventString& s, const EventString& t,
                                              std::size_t e) {
  if (project(attrs, s) != project(attrs, t)) throw ContractError("observability row needs P(s) = P(t)");
  const auto se = append(s, e);
  const auto te = append(t, e);
  ConditionRow<Scalar> row;
  row.s = s;
  row.t = t;
  row.sigma = e;
  row.x1 = generated_degree(h, s);
  row.x2 = generated_degree(h, te);
  row.x3 = generated_degree(g, se);
  row.y = generated_degree(h, se);
  row.V = smin(eff_prefix(h, attrs, s), smin(eff_prefix(h, attrs, te), eff_generated(g, attrs, se)));
  row.W = eff_prefix(h, attrs, se);
  row.pass = ScalarTraits<Scalar>::leq(row.V, row.W);
  return row;
}

template <class Scalar>
ConditionRow<Scalar> oracle_lm_closed_row(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                          const Attributes<Scalar>& attrs, const EventString& s) {
  using T = ScalarTraits<Scalar>;
  ConditionRow<Scalar> row;
  row.s = s;
  row.x1 = generated_degree(h, s);
  row.x3 = marked_degree(g, s);
  row.y = marked_degree(h, s);
  row.V = spec_degree(g, h, attrs, s);
  row.W = s.empty() ? T::one() : smin(eff_prefix(h, attrs, s), row.x3);
  row.pass = T::eq(row.V, row.W);
  return row;
}

template <class Scalar>
struct OracleResult {
  VerificationReport<Scalar> controllability;
  VerificationReport<Scalar> observability;
  VerificationReport<Scalar> lm_closed;
  std::size_t strings = 0;
};

/// Evaluates the three conditions over every string within the bounds. Only
/// failing rows are kept; the first of each report is the length-lexicographic
/// first failure.
template <class Scalar>
OracleResult<Scalar> brute_force_check(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h,
                                       const Attributes<Scalar>& attrs, const OracleConfig& cfg) {
  OracleResult<Scalar> out;
  out.controllability.condition = Condition::controllability;
  out.observability.condition = Condition::observability;
  out.lm_closed.condition = Condition::lm_closed;
  const auto ne = g.alphabet_size();
  const auto strings = enumerate_strings(ne, cfg.max_len);
  out.strings = strings.size();

  std::map<EventString, std::vector<EventString>> by_projection;
  if (cfg.observability)
    for (auto& t : enumerate_strings(ne, cfg.max_t_len)) by_projection[project(attrs, t)].push_back(std::move(t));

  auto keep = [](VerificationReport<Scalar>& rep, ConditionRow<Scalar> row) {
    if (!row.pass) rep.add(std::move(row));
  };
  for (const auto& s : strings) {
    if (cfg.lm_closed) keep(out.lm_closed, oracle_lm_closed_row(g, h, attrs, s));
    if (cfg.controllability)
      for (std::size_t e = 0; e < ne; ++e) keep(out.controllability, oracle_controllability_row(g, h, attrs, s, e));
    if (cfg.observability) {
      const auto it = by_projection.find(project(attrs, s));
      if (it == by_projection.end()) continue;
      for (const auto& t : it->second)
        for (std::size_t e = 0; e < ne; ++e) keep(out.observability, oracle_observability_row(g, h, attrs, s, t, e));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Random models

template <class Scalar>
struct RandomInstance {
  FuzzyAutomaton<Scalar> plant;
  FuzzyAutomaton<Scalar> spec;
  std::uint64_t seed = 0;
};

/// Small random plant/specification pair. Degrees come from a fixed grid; the
/// specification is an entrywise minimum of the plant with random matrices,
/// so H ≤ G and the containment hypotheses hold. Half of the instances give
/// the specification an explicit marking.
inline RandomInstance<Degree> random_instance(std::uint64_t seed) {
  static const char* grid[] = {"0", "0.2", "0.4", "0.5", "0.7", "0.8", "0.9", "1"};
  std::mt19937_64 rng(seed);
  auto pick = [&] { return Degree::parse(grid[std::uniform_int_distribution<int>(0, 7)(rng)]); };
  const int n = std::uniform_int_distribution<int>(2, 3)(rng);
  const int ne = std::uniform_int_distribution<int>(2, 3)(rng);

  StateVector<Degree> q0(n), p0(n);
  for (int i = 0; i < n; ++i) q0(i) = pick();
  if (q0(0).is_zero()) q0(0) = Degree::parse("0.9");
  for (int i = 0; i < n; ++i) p0(i) = min(q0(i), pick());
  if (p0(0).is_zero()) p0(0) = q0(0);

  std::vector<FuzzyEvent<Degree>> ge, he;
  for (int k = 0; k < ne; ++k) {
    EventMatrix<Degree> a(n, n), b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        a(i, j) = pick();
        b(i, j) = min(a(i, j), pick());
      }
    EventAttr<Degree> attr;
    attr.obs = pick();
    attr.unctrl = pick();
    const std::string name(1, static_cast<char>('a' + k));
    ge.push_back({name, a, attr});
    he.push_back({name, b, attr});
  }
  std::optional<std::vector<StateVector<Degree>>> marking;
  if (rng() % 2) {
    StateVector<Degree> m(n);
    for (int i = 0; i < n; ++i) m(i) = pick();
    marking = std::vector<StateVector<Degree>>{m};
  }
  return {FuzzyAutomaton<Degree>(q0, ge), FuzzyAutomaton<Degree>(p0, he, marking), seed};
}

}  // namespace fdes
