#pragma once

// Fuzzy automata, event attributes, projection and the observability factor.

#include "fdes/algebra.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace fdes {

/// Sequence of event indices into the owning automaton's alphabet; empty is ε.
using EventString = std::vector<std::size_t>;

/// A precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Unknown event name, or alphabets that do not line up.
class AlphabetError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Degrees of observability and uncontrollability of one event. The
/// complementary degrees are derived so they always sum to one.
template <class Scalar>
struct EventAttr {
  Scalar obs = ScalarTraits<Scalar>::one();
  Scalar unctrl = ScalarTraits<Scalar>::zero();

  Scalar ctrl() const { return ScalarTraits<Scalar>::complement(unctrl); }
  Scalar unobs() const { return ScalarTraits<Scalar>::complement(obs); }
  bool kept_by_projection() const { return ScalarTraits<Scalar>::positive(obs); }

  friend bool operator==(const EventAttr&, const EventAttr&) = default;
};

template <class Scalar>
using Attributes = std::vector<EventAttr<Scalar>>;

template <class Scalar>
struct FuzzyEvent {
  std::string name;
  EventMatrix<Scalar> matrix;
  EventAttr<Scalar> attr;
};

template <class Scalar>
class FuzzyAutomaton {
 public:
  FuzzyAutomaton() = default;

  FuzzyAutomaton(StateVector<Scalar> initial, std::vector<FuzzyEvent<Scalar>> events,
                 std::optional<std::vector<StateVector<Scalar>>> marked = std::nullopt)
      : initial_(std::move(initial)), events_(std::move(events)), marked_(std::move(marked)) {
    validate();
  }

  Eigen::Index dim() const { return initial_.cols(); }
  const StateVector<Scalar>& initial() const { return initial_; }
  const std::vector<FuzzyEvent<Scalar>>& events() const { return events_; }
  std::size_t alphabet_size() const { return events_.size(); }
  const FuzzyEvent<Scalar>& event(std::size_t i) const { return events_.at(i); }
  const EventMatrix<Scalar>& matrix(std::size_t i) const { return events_.at(i).matrix; }

  /// True when the marking came from the input rather than the all-ones default.
  bool has_explicit_marking() const { return marked_.has_value(); }
  const std::optional<std::vector<StateVector<Scalar>>>& explicit_marking() const { return marked_; }

  std::vector<StateVector<Scalar>> marked() const {
    if (marked_) return *marked_;
    return {constant_vector<Scalar>(dim(), ScalarTraits<Scalar>::one())};
  }

  Attributes<Scalar> attributes() const {
    Attributes<Scalar> out;
    out.reserve(events_.size());
    for (const auto& e : events_) out.push_back(e.attr);
    return out;
  }

  std::optional<std::size_t> find(std::string_view name) const {
    for (std::size_t i = 0; i < events_.size(); ++i)
      if (events_[i].name == name) return i;
    return std::nullopt;
  }

  std::size_t index_of(std::string_view name) const {
    if (auto i = find(name)) return *i;
    throw AlphabetError("unknown event '" + std::string(name) + "'");
  }

  template <class Other>
  FuzzyAutomaton<Other> cast() const {
    std::vector<FuzzyEvent<Other>> ev;
    for (const auto& e : events_)
      ev.push_back({e.name, e.matrix.template cast<Other>(), {static_cast<Other>(e.attr.obs), static_cast<Other>(e.attr.unctrl)}});
    std::optional<std::vector<StateVector<Other>>> mk;
    if (marked_) {
      mk.emplace();
      for (const auto& m : *marked_) mk->push_back(m.template cast<Other>());
    }
    return FuzzyAutomaton<Other>(initial_.template cast<Other>(), std::move(ev), std::move(mk));
  }

 private:
  void validate() const {
    const auto n = initial_.cols();
    if (n < 1) throw ShapeError("automaton needs at least one crisp state");
    for (std::size_t i = 0; i < events_.size(); ++i) {
      const auto& e = events_[i];
      if (e.name.empty()) throw ShapeError("event name must be non-empty");
      if (e.matrix.rows() != n || e.matrix.cols() != n)
        throw ShapeError("event '" + e.name + "' matrix is " + std::to_string(e.matrix.rows()) + "x" +
                         std::to_string(e.matrix.cols()) + ", expected " + std::to_string(n) + "x" + std::to_string(n));
      for (std::size_t j = 0; j < i; ++j)
        if (events_[j].name == e.name) throw ShapeError("duplicate event name '" + e.name + "'");
    }
    if (marked_)
      for (const auto& m : *marked_)
        if (m.cols() != n) throw ShapeError("marked vector has wrong length");
  }

  StateVector<Scalar> initial_;
  std::vector<FuzzyEvent<Scalar>> events_;
  std::optional<std::vector<StateVector<Scalar>>> marked_;
};

// ---------------------------------------------------------------------------
// Strings

template <class Scalar>
EventString parse_event_string(const FuzzyAutomaton<Scalar>& a, std::string_view csv) {
  EventString out;
  std::size_t start = 0;
  auto trim = [](std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
  };
  if (trim(csv).empty()) return out;
  while (start <= csv.size()) {
    const auto comma = csv.find(',', start);
    const auto part = trim(csv.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    out.push_back(a.index_of(part));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

/// Event names joined by `sep`; `epsilon` for the empty string.
template <class Scalar>
std::string format_event_string(const FuzzyAutomaton<Scalar>& a, const EventString& s, std::string_view sep = "",
                                 std::string_view epsilon = "ε") {
  if (s.empty()) return std::string(epsilon);
  std::string out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (i) out += sep;
    out += a.event(s[i]).name;
  }
  return out;
}

inline EventString append(EventString s, std::size_t e) {
  s.push_back(e);
  return s;
}

// ---------------------------------------------------------------------------
// Languages

/// v ⊙ σ₁ ⊙ … ⊙ σₖ
template <class Scalar>
StateVector<Scalar> run(const FuzzyAutomaton<Scalar>& a, StateVector<Scalar> v, const EventString& s) {
  for (auto e : s) v = maxmin(v, a.matrix(e));
  return v;
}

template <class Scalar>
StateVector<Scalar> reach(const FuzzyAutomaton<Scalar>& a, const EventString& s) {
  return run(a, a.initial(), s);
}

/// Degree to which `s` is possible. For ε this is height(initial).
template <class Scalar>
Scalar generated_degree(const FuzzyAutomaton<Scalar>& a, const EventString& s) {
  return height(reach(a, s));
}

/// Marked degree of a fuzzy state: max over marked vectors m of v ⊙ mᵀ.
template <class Scalar>
Scalar marked_degree_at(const FuzzyAutomaton<Scalar>& a, const StateVector<Scalar>& v) {
  Scalar best = ScalarTraits<Scalar>::zero();
  for (const auto& m : a.marked()) best = smax(best, inner(v, m));
  return best;
}

template <class Scalar>
Scalar marked_degree(const FuzzyAutomaton<Scalar>& a, const EventString& s) {
  return marked_degree_at(a, reach(a, s));
}

// ---------------------------------------------------------------------------
// Projection and the observability factor

/// Erases events whose observability degree is exactly zero.
template <class Scalar>
EventString project(const Attributes<Scalar>& attrs, const EventString& s) {
  EventString out;
  for (auto e : s)
    if (attrs.at(e).kept_by_projection()) out.push_back(e);
  return out;
}

/// min of Σ_o over the events of an observation; 0 for ε.
template <class Scalar>
Scalar obs_factor(const Attributes<Scalar>& attrs, const EventString& w) {
  if (w.empty()) return ScalarTraits<Scalar>::zero();
  Scalar d = ScalarTraits<Scalar>::one();
  for (auto e : w) {
    if (!attrs.at(e).kept_by_projection())
      throw ContractError("obs_factor: event with zero observability inside an observation");
    d = smin(d, attrs.at(e).obs);
  }
  return d;
}

/// Running value of obs_factor(project(s)); `empty` tracks whether project(s) = ε.
template <class Scalar>
struct ObsFactor {
  Scalar d = ScalarTraits<Scalar>::zero();
  bool empty = true;

  friend bool operator==(const ObsFactor&, const ObsFactor&) = default;
};

template <class Scalar>
ObsFactor<Scalar> d_step(const Attributes<Scalar>& attrs, const ObsFactor<Scalar>& f, std::size_t e) {
  const auto& a = attrs.at(e);
  if (!a.kept_by_projection()) return f;
  return {f.empty ? a.obs : smin(f.d, a.obs), false};
}

template <class Scalar>
ObsFactor<Scalar> obs_factor_of(const Attributes<Scalar>& attrs, const EventString& s) {
  ObsFactor<Scalar> f;
  for (auto e : s) f = d_step(attrs, f, e);
  return f;
}

// ---------------------------------------------------------------------------
// Effective (D-scaled) quantities

template <class Scalar>
Scalar eff_generated(const FuzzyAutomaton<Scalar>& g, const Attributes<Scalar>& attrs, const EventString& s) {
  if (s.empty()) return ScalarTraits<Scalar>::one();
  return obs_factor_of(attrs, s).d * generated_degree(g, s);
}

/// pr(K)^f with pr(K) the language generated by `h`.
template <class Scalar>
Scalar eff_prefix(const FuzzyAutomaton<Scalar>& h, const Attributes<Scalar>& attrs, const EventString& s) {
  if (s.empty()) return ScalarTraits<Scalar>::one();
  return obs_factor_of(attrs, s).d * generated_degree(h, s);
}

/// Σ_uc^f(σ) as a continuation of s: D(P(sσ)) · Σ_uc(σ).
template <class Scalar>
Scalar eff_unctrl(const Attributes<Scalar>& attrs, const EventString& s, std::size_t e) {
  return obs_factor_of(attrs, append(s, e)).d * attrs.at(e).unctrl;
}

template <class Scalar>
bool all_events_observable(const Attributes<Scalar>& attrs) {
  for (const auto& a : attrs)
    if (!a.kept_by_projection()) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Plant / specification pairing

/// Reorders the specification's alphabet to the plant's declaration order.
/// Both alphabets must hold the same names with the same attributes.
template <class Scalar>
FuzzyAutomaton<Scalar> align_to(const FuzzyAutomaton<Scalar>& plant, const FuzzyAutomaton<Scalar>& spec) {
  if (plant.dim() != spec.dim())
    throw ShapeError("plant has " + std::to_string(plant.dim()) + " crisp states, specification has " +
                     std::to_string(spec.dim()));
  if (plant.alphabet_size() != spec.alphabet_size())
    throw AlphabetError("plant and specification alphabets differ in size");
  std::vector<FuzzyEvent<Scalar>> events;
  for (const auto& pe : plant.events()) {
    const auto j = spec.find(pe.name);
    if (!j) throw AlphabetError("event '" + pe.name + "' missing from specification");
    const auto& se = spec.event(*j);
    if (!(se.attr == pe.attr)) throw AlphabetError("event '" + pe.name + "' has different attributes in plant and specification");
    events.push_back(se);
  }
  return FuzzyAutomaton<Scalar>(spec.initial(), std::move(events), spec.explicit_marking());
}

/// Specification language K. Either H's own marked language, or, when H carries
/// no marking, the L_{G,m}-closed language determined by pr(K) = L_H:
/// K(ε) = 1, K(s) = min{pr(K)^f(s), L_{G,m}(s)}.
template <class Scalar>
struct SpecLanguage {
  bool closure = true;

  template <class Vec>
  Scalar at(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h, const Vec& q, const Vec& p,
            const ObsFactor<Scalar>& f, bool is_epsilon) const {
    if (!closure) return marked_degree_at(h, p);
    if (is_epsilon) return ScalarTraits<Scalar>::one();
    return smin(f.d * height(p), marked_degree_at(g, q));
  }

  static SpecLanguage of(const FuzzyAutomaton<Scalar>& h) { return {!h.has_explicit_marking()}; }
};

template <class Scalar>
Scalar spec_degree(const FuzzyAutomaton<Scalar>& g, const FuzzyAutomaton<Scalar>& h, const Attributes<Scalar>& attrs,
                   const EventString& s) {
  return SpecLanguage<Scalar>::of(h).at(g, h, reach(g, s), reach(h, s), obs_factor_of(attrs, s), s.empty());
}

}  // namespace fdes
