#include "fdes/io.hpp"

#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace fdes {

using nlohmann::json;

namespace {

Degree degree_at(const json& v, const std::string& where) {
  try {
    if (v.is_string()) return Degree::parse(v.get<std::string>());
    if (v.is_number_integer() || v.is_number_unsigned()) {
      const auto i = v.get<std::int64_t>();
      if (i < 0 || i > 1) throw std::out_of_range("outside [0,1]");
      return Degree(static_cast<int>(i));
    }
  } catch (const std::exception& e) {
    throw InputError(where + ": " + e.what());
  }
  if (v.is_number_float()) throw InputError(where + ": write fractional degrees as strings, e.g. \"0.35\"");
  throw InputError(where + ": expected a degree");
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw InputError(where + ": expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) throw InputError(where + ": missing \"" + key + "\"");
  return *it;
}

StateVector<Degree> vector_at(const json& v, Eigen::Index n, const std::string& where) {
  if (!v.is_array()) throw InputError(where + ": expected an array");
  if (static_cast<Eigen::Index>(v.size()) != n)
    throw InputError(where + ": expected " + std::to_string(n) + " entries, got " + std::to_string(v.size()));
  StateVector<Degree> out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = degree_at(v[static_cast<std::size_t>(i)], where + "[" + std::to_string(i) + "]");
  return out;
}

json degree_json(const Degree& d) { return d.str(); }

json vector_json(const StateVector<Degree>& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.cols(); ++i) out.push_back(degree_json(v(i)));
  return out;
}

Model build(StateVector<Degree> initial, std::vector<FuzzyEvent<Degree>> events,
            std::optional<std::vector<StateVector<Degree>>> marked) {
  try {
    return Model(std::move(initial), std::move(events), std::move(marked));
  } catch (const ShapeError& e) {
    throw InputError(e.what());
  }
}

}  // namespace

Model model_from_json(const json& doc) {
  const auto& n_field = field(doc, "n", "model");
  if (!n_field.is_number_integer() || n_field.get<std::int64_t>() < 1) throw InputError("n: expected a positive integer");
  const auto n = static_cast<Eigen::Index>(n_field.get<std::int64_t>());
  auto initial = vector_at(field(doc, "initial", "model"), n, "initial");

  const auto& evs = field(doc, "events", "model");
  if (!evs.is_array()) throw InputError("events: expected an array");
  std::vector<FuzzyEvent<Degree>> events;
  for (std::size_t k = 0; k < evs.size(); ++k) {
    const std::string where = "events[" + std::to_string(k) + "]";
    const auto& ev = evs[k];
    FuzzyEvent<Degree> e;
    const auto& name = field(ev, "name", where);
    if (!name.is_string()) throw InputError(where + ".name: expected a string");
    e.name = name.get<std::string>();
    const auto& rows = field(ev, "matrix", where);
    if (!rows.is_array() || static_cast<Eigen::Index>(rows.size()) != n)
      throw InputError(where + ".matrix: expected " + std::to_string(n) + " rows");
    e.matrix.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
      e.matrix.row(i) = vector_at(rows[static_cast<std::size_t>(i)], n, where + ".matrix[" + std::to_string(i) + "]");
    e.attr.obs = ev.contains("obs") ? degree_at(ev["obs"], where + ".obs") : Degree::one();
    e.attr.unctrl = ev.contains("unctrl") ? degree_at(ev["unctrl"], where + ".unctrl") : Degree::zero();
    events.push_back(std::move(e));
  }

  std::optional<std::vector<StateVector<Degree>>> marked;
  if (doc.contains("marked")) {
    const auto& mk = doc["marked"];
    if (!mk.is_array()) throw InputError("marked: expected an array of vectors");
    marked.emplace();
    for (std::size_t k = 0; k < mk.size(); ++k) marked->push_back(vector_at(mk[k], n, "marked[" + std::to_string(k) + "]"));
  }
  return build(std::move(initial), std::move(events), std::move(marked));
}

json model_to_json(const Model& m) {
  json doc;
  doc["n"] = m.dim();
  doc["initial"] = vector_json(m.initial());
  json evs = json::array();
  for (const auto& e : m.events()) {
    json rows = json::array();
    for (Eigen::Index i = 0; i < e.matrix.rows(); ++i) rows.push_back(vector_json(e.matrix.row(i)));
    evs.push_back({{"name", e.name}, {"matrix", rows}, {"obs", degree_json(e.attr.obs)}, {"unctrl", degree_json(e.attr.unctrl)}});
  }
  doc["events"] = evs;
  if (m.has_explicit_marking()) {
    json mk = json::array();
    for (const auto& v : *m.explicit_marking()) mk.push_back(vector_json(v));
    doc["marked"] = mk;
  }
  return doc;
}

bool is_crisp_document(const json& doc) { return doc.is_object() && doc.contains("states"); }

Model crisp_from_json(const json& doc) {
  const auto& states = field(doc, "states", "crisp model");
  if (!states.is_array() || states.empty()) throw InputError("states: expected a non-empty array of names");
  std::map<std::string, Eigen::Index> state_index;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto name = states[i].is_string() ? states[i].get<std::string>() : states[i].dump();
    if (!state_index.emplace(name, static_cast<Eigen::Index>(i)).second) throw InputError("states: duplicate '" + name + "'");
  }
  auto state_of = [&](const json& v, const std::string& where) {
    const auto name = v.is_string() ? v.get<std::string>() : v.dump();
    const auto it = state_index.find(name);
    if (it == state_index.end()) throw InputError(where + ": unknown state '" + name + "'");
    return it->second;
  };
  const auto n = static_cast<Eigen::Index>(states.size());

  const auto& evs = field(doc, "events", "crisp model");
  if (!evs.is_array()) throw InputError("events: expected an array of names");
  std::vector<std::string> names;
  for (const auto& e : evs) {
    if (!e.is_string()) throw InputError("events: names must be strings");
    names.push_back(e.get<std::string>());
  }
  auto event_of = [&](const json& v, const std::string& where) {
    if (!v.is_string()) throw InputError(where + ": expected an event name");
    for (std::size_t k = 0; k < names.size(); ++k)
      if (names[k] == v.get<std::string>()) return k;
    throw InputError(where + ": unknown event '" + v.get<std::string>() + "'");
  };
  auto name_set = [&](const char* key) {
    std::set<std::size_t> out;
    const auto& arr = field(doc, key, "crisp model");
    if (!arr.is_array()) throw InputError(std::string(key) + ": expected an array of event names");
    for (std::size_t k = 0; k < arr.size(); ++k) out.insert(event_of(arr[k], std::string(key) + "[" + std::to_string(k) + "]"));
    return out;
  };
  const auto observable = name_set("observable");
  const auto controllable = name_set("controllable");

  StateVector<Degree> initial = constant_vector<Degree>(n, Degree::zero());
  initial(state_of(field(doc, "initial", "crisp model"), "initial")) = Degree::one();

  std::vector<FuzzyEvent<Degree>> events;
  for (std::size_t k = 0; k < names.size(); ++k) {
    FuzzyEvent<Degree> e;
    e.name = names[k];
    e.matrix = EventMatrix<Degree>::Constant(n, n, Degree::zero());
    e.attr.obs = observable.count(k) ? Degree::one() : Degree::zero();
    e.attr.unctrl = controllable.count(k) ? Degree::zero() : Degree::one();
    events.push_back(std::move(e));
  }
  if (doc.contains("transitions")) {
    const auto& tr = doc["transitions"];
    if (!tr.is_array()) throw InputError("transitions: expected an array");
    for (std::size_t k = 0; k < tr.size(); ++k) {
      const std::string where = "transitions[" + std::to_string(k) + "]";
      const auto from = state_of(field(tr[k], "from", where), where + ".from");
      const auto ev = event_of(field(tr[k], "event", where), where + ".event");
      const auto& to = field(tr[k], "to", where);
      if (to.is_array()) {
        for (const auto& t : to) events[ev].matrix(from, state_of(t, where + ".to")) = Degree::one();
      } else {
        events[ev].matrix(from, state_of(to, where + ".to")) = Degree::one();
      }
    }
  }
  std::optional<std::vector<StateVector<Degree>>> marked;
  if (doc.contains("marked")) {
    StateVector<Degree> m = constant_vector<Degree>(n, Degree::zero());
    for (const auto& s : doc["marked"]) m(state_of(s, "marked")) = Degree::one();
    marked = std::vector<StateVector<Degree>>{m};
  }
  return build(std::move(initial), std::move(events), std::move(marked));
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError(path + ": cannot open");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    // e.byte is an offset into the file; report it as line:column.
    std::ifstream again(path);
    std::string text((std::istreambuf_iterator<char>(again)), std::istreambuf_iterator<char>());
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

Model load_model(const std::string& path) {
  const auto doc = read_json_file(path);
  try {
    return is_crisp_document(doc) ? crisp_from_json(doc) : model_from_json(doc);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void save_model(const Model& m, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw InputError(path + ": cannot write");
  out << model_to_json(m).dump(2) << "\n";
}

// ---------------------------------------------------------------------------

json supervisor_to_json(const Supervisor<Degree>& s) {
  json doc;
  doc["kind"] = "supervisor";
  json evs = json::array();
  for (std::size_t e = 0; e < s.events.size(); ++e)
    evs.push_back({{"name", s.events[e]}, {"obs", degree_json(s.attrs[e].obs)}, {"unctrl", degree_json(s.attrs[e].unctrl)}});
  doc["events"] = evs;
  json nodes = json::array();
  for (const auto& n : s.nodes) {
    json obs = json::array();
    for (auto e : n.observation) obs.push_back(s.events[e]);
    json policy = json::object();
    json next = json::object();
    for (std::size_t e = 0; e < s.events.size(); ++e) {
      policy[s.events[e]] = degree_json(n.policy[e]);
      if (n.next[e] != kNoNode) next[s.events[e]] = n.next[e];
    }
    nodes.push_back({{"observation", obs}, {"policy", policy}, {"next", next}});
  }
  doc["nodes"] = nodes;
  if (!s.notes.empty()) doc["notes"] = s.notes;
  return doc;
}

Supervisor<Degree> supervisor_from_json(const json& doc) {
  Supervisor<Degree> s;
  const auto& evs = field(doc, "events", "supervisor");
  if (!evs.is_array()) throw InputError("events: expected an array");
  for (std::size_t k = 0; k < evs.size(); ++k) {
    const std::string where = "events[" + std::to_string(k) + "]";
    s.events.push_back(field(evs[k], "name", where).get<std::string>());
    EventAttr<Degree> a;
    a.obs = degree_at(field(evs[k], "obs", where), where + ".obs");
    a.unctrl = degree_at(field(evs[k], "unctrl", where), where + ".unctrl");
    s.attrs.push_back(a);
  }
  auto event_of = [&](const std::string& name, const std::string& where) {
    for (std::size_t k = 0; k < s.events.size(); ++k)
      if (s.events[k] == name) return k;
    throw InputError(where + ": unknown event '" + name + "'");
  };
  const auto& nodes = field(doc, "nodes", "supervisor");
  if (!nodes.is_array() || nodes.empty()) throw InputError("nodes: expected a non-empty array");
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    const std::string where = "nodes[" + std::to_string(k) + "]";
    Supervisor<Degree>::Node n;
    for (const auto& e : field(nodes[k], "observation", where)) n.observation.push_back(event_of(e.get<std::string>(), where));
    n.policy.assign(s.events.size(), Degree::zero());
    n.next.assign(s.events.size(), kNoNode);
    for (const auto& [name, v] : field(nodes[k], "policy", where).items())
      n.policy[event_of(name, where + ".policy")] = degree_at(v, where + ".policy." + name);
    for (const auto& [name, v] : field(nodes[k], "next", where).items()) {
      if (!v.is_number_unsigned() || v.get<std::size_t>() >= nodes.size())
        throw InputError(where + ".next." + name + ": expected a node index");
      n.next[event_of(name, where + ".next")] = v.get<std::size_t>();
    }
    s.nodes.push_back(std::move(n));
  }
  if (doc.contains("notes"))
    for (const auto& note : doc["notes"]) s.notes.push_back(note.get<std::string>());
  return s;
}

Supervisor<Degree> load_supervisor(const std::string& path) {
  const auto doc = read_json_file(path);
  try {
    return supervisor_from_json(doc);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  } catch (const json::exception& e) {
    throw InputError(path + ": " + e.what());
  }
}

}  // namespace fdes
