#pragma once

// Result records shared by the graph-based checkers and the brute-force oracle.

#include "fdes/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace fdes {

enum class Condition { hypotheses, controllability, observability, lm_closed, admissibility, nonblocking, closed_loop };

inline const char* condition_name(Condition c) {
  switch (c) {
    case Condition::hypotheses: return "hypotheses";
    case Condition::controllability: return "controllability";
    case Condition::observability: return "observability";
    case Condition::lm_closed: return "lm_closed";
    case Condition::admissibility: return "admissibility";
    case Condition::nonblocking: return "nonblocking";
    case Condition::closed_loop: return "closed_loop";
  }
  return "?";
}

/// One evaluated instance of an inequality. For observability rows the
/// columns follow the tables: x1 = [p₀⊙s], x2 = [p₀⊙t⊙σ], x3 = [q₀⊙s⊙σ],
/// y = [p₀⊙s⊙σ]. Controllability rows reuse x2 for Σ_uc(σ). Conditions that
/// compare for equality (closedness, closed-loop checks) put the two sides in
/// V and W.
template <class Scalar>
struct ConditionRow {
  EventString s;
  std::optional<EventString> t;
  std::optional<std::size_t> sigma;
  Scalar x1{}, x2{}, x3{}, y{};
  Scalar V{}, W{};
  bool pass = true;
  std::string tag;  // which quantity an equality row compares, when a report mixes several
};

struct ReportStats {
  std::size_t m1 = 0;             // reachable specification states
  std::size_t m2 = 0;             // reachable state pairs
  std::size_t aug_nodes = 0;      // pairs with observability factor
  std::size_t product_nodes = 0;  // observation-compatible product
  std::size_t visits = 0;         // node x event evaluations, all graphs
};

template <class Scalar>
struct VerificationReport {
  Condition condition = Condition::controllability;
  bool verdict = true;
  std::vector<ConditionRow<Scalar>> rows;
  ReportStats stats;
  std::vector<std::string> notes;

  /// First failing row in canonical order, which carries a shortest failing s.
  const ConditionRow<Scalar>* witness() const {
    for (const auto& r : rows)
      if (!r.pass) return &r;
    return nullptr;
  }

  std::size_t failures() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.pass ? 0 : 1;
    return n;
  }

  void add(ConditionRow<Scalar> row) {
    verdict = verdict && row.pass;
    rows.push_back(std::move(row));
  }
};

}  // namespace fdes
