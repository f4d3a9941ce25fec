#pragma once

// Compares the graph-based checkers with the brute-force oracle on one instance.

#include "fdes/oracle.hpp"
#include "fdes/verify.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <string>

namespace fdes::testing {

/// Oracle bounds large enough to visit a representative of every graph node.
inline OracleConfig bounds_for(const Model& g, const Model& h, const Attributes<Degree>& attrs) {
  OracleConfig cfg;
  std::size_t aug = 0;
  for (const auto& n : explore_aug_pairs(g, h, attrs).nodes) aug = std::max(aug, n.rep.size());
  const auto prod = build_obs_product(g, h, attrs);
  cfg.max_len = std::max(aug, prod.max_s_len());
  cfg.max_t_len = prod.max_t_len();
  return cfg;
}

/// Number of observability rows the oracle would evaluate under `cfg`, or
/// `cap + 1` once that is exceeded.
inline std::size_t oracle_work(std::size_t alphabet, const Attributes<Degree>& attrs, const OracleConfig& cfg,
                               std::size_t cap) {
  double naive = 1, level = 1;
  for (std::size_t k = 0; k < std::max(cfg.max_len, cfg.max_t_len); ++k) naive += (level *= static_cast<double>(alphabet));
  if (naive > 4e5) return cap + 1;
  std::map<EventString, std::size_t> t_count;
  for (const auto& t : enumerate_strings(alphabet, cfg.max_t_len)) ++t_count[project(attrs, t)];
  std::size_t work = 0;
  for (const auto& s : enumerate_strings(alphabet, cfg.max_len)) {
    const auto it = t_count.find(project(attrs, s));
    work += alphabet * (1 + (it == t_count.end() ? 0 : it->second));
    if (work > cap) return cap + 1;
  }
  return work;
}

struct Agreement {
  bool ok = true;
  std::string detail;
};

/// Same verdict per condition and, on failure, witnesses of the same length
/// whose values the oracle reproduces.
inline Agreement compare_with_oracle(const Model& g, const Model& h, const Attributes<Degree>& attrs) {
  Agreement out;
  std::ostringstream why;
  const auto cfg = bounds_for(g, h, attrs);
  const auto oracle = brute_force_check(g, h, attrs, cfg);
  const auto ctl = check_controllability(g, h, attrs);
  const auto obs = check_observability(g, h, attrs);
  const auto lmc = check_lm_closed(g, h, attrs);

  auto compare = [&](const VerificationReport<Degree>& mine, const VerificationReport<Degree>& ref, auto replay) {
    const char* name = condition_name(mine.condition);
    if (mine.verdict != ref.verdict) {
      out.ok = false;
      why << name << ": checker " << mine.verdict << " oracle " << ref.verdict << "; ";
      return;
    }
    const auto* w = mine.witness();
    const auto* rw = ref.witness();
    if (!w) return;
    if (w->s.size() != rw->s.size()) {
      out.ok = false;
      why << name << ": witness length " << w->s.size() << " vs " << rw->s.size() << "; ";
    }
    const auto again = replay(*w);
    if (!(again.V == w->V && again.W == w->W) || again.pass) {
      out.ok = false;
      why << name << ": witness " << format_event_string(g, w->s) << " does not replay; ";
    }
  };
  compare(ctl, oracle.controllability,
          [&](const ConditionRow<Degree>& r) { return oracle_controllability_row(g, h, attrs, r.s, *r.sigma); });
  compare(obs, oracle.observability,
          [&](const ConditionRow<Degree>& r) { return oracle_observability_row(g, h, attrs, r.s, *r.t, *r.sigma); });
  compare(lmc, oracle.lm_closed, [&](const ConditionRow<Degree>& r) { return oracle_lm_closed_row(g, h, attrs, r.s); });
  out.detail = why.str();
  return out;
}

}  // namespace fdes::testing
