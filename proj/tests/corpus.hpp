#pragma once

#include "fdes/io.hpp"

#include <string>
#include <vector>

namespace fdes::testing {

struct Example {
  std::string name;
  Model plant;
  Model spec;

  Attributes<Degree> attrs() const { return plant.attributes(); }
};

inline std::string corpus_path(const std::string& file) { return std::string(FDES_CORPUS_DIR) + "/" + file; }

inline Example load_example(const std::string& name, const std::string& plant, const std::string& spec) {
  auto g = load_model(corpus_path(plant));
  auto h = align_to(g, load_model(corpus_path(spec)));
  return {name, std::move(g), std::move(h)};
}

inline Example ex1() { return load_example("ex1", "ex1_plant.json", "ex1_spec.json"); }
inline Example ex1_low_uc() { return load_example("ex1_low_uc", "ex1_plant_low_uc.json", "ex1_spec_low_uc.json"); }
inline Example ex2() { return load_example("ex2", "ex2_plant.json", "ex2_spec.json"); }
inline Example ex3() { return load_example("ex3", "ex3_plant.crisp.json", "ex3_spec.crisp.json"); }
inline Example ex4() { return load_example("ex4", "ex4_plant.json", "ex4_spec.json"); }

inline std::vector<Example> corpus() { return {ex1(), ex1_low_uc(), ex2(), ex3(), ex4()}; }

inline Degree dg(const char* s) { return Degree::parse(s); }

inline StateVector<Degree> vec(std::initializer_list<const char*> xs) {
  StateVector<Degree> v(static_cast<Eigen::Index>(xs.size()));
  Eigen::Index i = 0;
  for (auto x : xs) v(i++) = Degree::parse(x);
  return v;
}

template <class Scalar>
EventString str(const FuzzyAutomaton<Scalar>& a, const char* csv) {
  return parse_event_string(a, csv);
}

/// Same automaton with every event's attributes replaced.
inline Model with_attrs(const Model& m, const Attributes<Degree>& attrs) {
  std::vector<FuzzyEvent<Degree>> ev = m.events();
  for (std::size_t i = 0; i < ev.size(); ++i) ev[i].attr = attrs[i];
  return Model(m.initial(), ev, m.explicit_marking());
}

}  // namespace fdes::testing
