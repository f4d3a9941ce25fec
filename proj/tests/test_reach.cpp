#include "corpus.hpp"

#include <doctest.h>

#include <set>

using namespace fdes;
using namespace fdes::testing;

namespace {

std::set<std::string> rep_names(const Model& g, const PairGraph<Degree>& pg) {
  std::set<std::string> out;
  for (const auto& n : pg.nodes) out.insert(format_event_string(g, n.rep));
  return out;
}

}  // namespace

TEST_CASE("specification states") {
  CHECK(explore_states(ex3().spec).nodes.size() == 3);
  CHECK(explore_states(ex4().spec).nodes.size() == 8);
  const Model fixed(vec({"0.5", "1"}), {{"e", identity_matrix<Degree>(2), {}}});
  const auto g = explore_states(fixed);
  CHECK(g.nodes.size() == 1);
  CHECK(g.edges[0][0] == 0);
}

TEST_CASE("state pairs of example 4") {
  const auto e4 = ex4();
  const auto pg = explore_pairs(e4.plant, e4.spec);
  REQUIRE(pg.nodes.size() == 8);
  CHECK(rep_names(e4.plant, pg) == std::set<std::string>{"ε", "a", "b", "c", "ac", "ba", "bc", "ca"});
  const std::map<std::string, std::pair<StateVector<Degree>, StateVector<Degree>>> expected{
      {"ε", {vec({"0.9", "0"}), vec({"0.9", "0"})}},        {"a", {vec({"0.9", "0.4"}), vec({"0.9", "0.4"})}},
      {"b", {vec({"0.4", "0.9"}), vec({"0.4", "0.9"})}},    {"c", {vec({"0.4", "0"}), vec({"0.2", "0"})}},
      {"ba", {vec({"0.4", "0.4"}), vec({"0.4", "0.4"})}},   {"bc", {vec({"0.4", "0.9"}), vec({"0.2", "0.9"})}},
      {"ca", {vec({"0.4", "0.4"}), vec({"0.2", "0.2"})}},   {"bac", {vec({"0.4", "0.4"}), vec({"0.2", "0.4"})}},
  };
  // The shortest representative of ([0.4,0.4],[0.2,0.4]) is "ac"; the table lists "bac".
  for (const auto& n : pg.nodes) {
    const auto name = format_event_string(e4.plant, n.rep);
    const auto key = name == "ac" ? std::string("bac") : name;
    REQUIRE(expected.count(key));
    CHECK(same(n.q, expected.at(key).first));
    CHECK(same(n.p, expected.at(key).second));
  }
}

TEST_CASE("state pairs of example 3") {
  const auto e3 = ex3();
  const auto pg = explore_pairs(e3.plant, e3.spec);
  CHECK(rep_names(e3.plant, pg) == std::set<std::string>{"ε", "u", "ub"});
}

TEST_CASE("identical crisp deterministic automata give diagonal pairs") {
  const auto e3 = ex3();
  for (const auto& n : explore_pairs(e3.plant, e3.plant).nodes) CHECK(same(n.q, n.p));
}

TEST_CASE("representatives are shortest and replay") {
  for (const auto& ex : corpus()) {
    const auto pg = explore_pairs(ex.plant, ex.spec);
    for (const auto& n : pg.nodes) {
      CHECK(same(reach(ex.plant, n.rep), n.q));
      CHECK(same(reach(ex.spec, n.rep), n.p));
    }
    // BFS: representative lengths never decrease with node index.
    for (std::size_t i = 1; i < pg.nodes.size(); ++i) CHECK(pg.nodes[i - 1].rep.size() <= pg.nodes[i].rep.size());
  }
}

TEST_CASE("observation-compatible product invariants") {
  for (const auto& ex : corpus()) {
    const auto attrs = ex.attrs();
    const auto prod = build_obs_product(ex.plant, ex.spec, attrs);
    REQUIRE_FALSE(prod.nodes.empty());
    CHECK(prod.nodes[0].s_rep.empty());
    CHECK(prod.nodes[0].t_rep.empty());
    for (const auto& n : prod.nodes) {
      CHECK(same(reach(ex.plant, n.s_rep), n.q));
      CHECK(same(reach(ex.spec, n.s_rep), n.p));
      CHECK(same(reach(ex.spec, n.t_rep), n.pt));
      CHECK(project(attrs, n.s_rep) == project(attrs, n.t_rep));
      CHECK(n.f == obs_factor_of(attrs, n.s_rep));
      CHECK(n.f.empty == n.f.d.is_zero());
      CHECK(n.s_is_epsilon == n.s_rep.empty());
    }
    for (const auto& e : prod.edges) {
      const bool observable = attrs[e.event].kept_by_projection();
      CHECK(observable == (e.kind == MoveKind::sync));
    }
  }
}

TEST_CASE("product nodes quoted in the examples") {
  const auto e4 = ex4();
  const auto prod = build_obs_product(e4.plant, e4.spec, e4.attrs());
  bool found = false;
  for (const auto& n : prod.nodes)
    if (same(n.q, reach(e4.plant, str(e4.plant, "a"))) && same(n.p, reach(e4.spec, str(e4.spec, "a"))) &&
        same(n.pt, reach(e4.spec, str(e4.spec, "c,a"))) && n.f.d == dg("0.4"))
      found = true;
  CHECK(found);

  const auto e3 = ex3();
  const auto prod3 = build_obs_product(e3.plant, e3.spec, e3.attrs());
  found = false;
  for (const auto& n : prod3.nodes)
    if (n.s_rep.empty() && n.t_rep == str(e3.plant, "u") && n.f.empty) found = true;
  CHECK(found);
}

TEST_CASE("fully observable events keep the two specification components equal") {
  auto e1 = ex1();
  const auto prod = build_obs_product(e1.plant, e1.spec, e1.attrs());
  for (const auto& n : prod.nodes) CHECK(same(n.p, n.pt));
}

TEST_CASE("computing-tree rendering") {
  const auto e4 = ex4();
  const auto text = dump_tree(e4.plant, e4.spec, TreeMode::paper);
  CHECK(text.find("a: _([0.9,0.4], [0.9,0.4])_") != std::string::npos);
  CHECK(text.find("a or b: ([0.4,0.4], [0.2,0.2])") != std::string::npos);
  CHECK(text.find("a or b or c: _([0.4,0.4], [0.2,0.2])_") != std::string::npos);

  const Model fixed(vec({"1", "0"}), {{"e", identity_matrix<Degree>(2), {}}, {"f", identity_matrix<Degree>(2), {}}});
  const auto tree = expand_pair_tree(fixed, fixed);
  REQUIRE(tree.vertices.size() == 2);
  CHECK(tree.vertices[1].leaf);
  CHECK(tree.vertices[1].via.size() == 2);
}

TEST_CASE("tree and graph modes cover the same pairs") {
  for (const auto& ex : corpus()) {
    const auto tree = expand_pair_tree(ex.plant, ex.spec);
    std::set<std::string> from_tree, from_graph;
    for (const auto& v : tree.vertices) from_tree.insert(pair_label(v.q, v.p));
    for (const auto& n : explore_pairs(ex.plant, ex.spec).nodes) from_graph.insert(pair_label(n.q, n.p));
    CHECK(from_tree == from_graph);
  }
}

TEST_CASE("graph dumps") {
  const auto e4 = ex4();
  const auto dot = dump_tree(e4.plant, e4.spec, TreeMode::graph, true);
  CHECK(dot.rfind("digraph pairs {", 0) == 0);
  CHECK(dot.find("n0 -> n1 [label=\"a\"]") != std::string::npos);
  const auto text = dump_tree(e4.plant, e4.spec, TreeMode::graph);
  CHECK(std::count(text.begin(), text.end(), '\n') == 8);
}

TEST_CASE("projection classes") {
  const auto e4 = ex4();
  const auto attrs = e4.attrs();
  const auto cls = projection_class(e4.plant, e4.spec, attrs, str(e4.plant, "a"));
  std::set<std::string> reps;
  for (const auto& m : cls) reps.insert(format_event_string(e4.plant, m.rep));
  CHECK(reps == std::set<std::string>{"a", "ac", "ca"});
  CHECK_THROWS_AS(projection_class(e4.plant, e4.spec, attrs, str(e4.plant, "c")), ContractError);
}

TEST_CASE("visit counters stay within node count times alphabet size") {
  for (const auto& ex : corpus()) {
    const auto attrs = ex.attrs();
    CHECK(explore_states(ex.spec).stats.within_bound());
    CHECK(explore_pairs(ex.plant, ex.spec).stats.within_bound());
    CHECK(explore_aug_pairs(ex.plant, ex.spec, attrs).stats.within_bound());
    CHECK(build_obs_product(ex.plant, ex.spec, attrs).stats.within_bound());
  }
}
