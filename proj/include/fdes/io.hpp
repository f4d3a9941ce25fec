#pragma once

// Model, crisp-model and supervisor files (JSON, degrees as decimal strings).

#include "fdes/supervisor.hpp"

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace fdes {

/// Malformed or inconsistent input. The message names the offending field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Model = FuzzyAutomaton<Degree>;

/// {"n", "initial", "events": [{"name", "matrix", "obs", "unctrl"}], "marked"?}
Model model_from_json(const nlohmann::json& doc);
nlohmann::json model_to_json(const Model& m);

/// {"states", "initial", "events", "transitions": [{"from", "event", "to"}],
///  "marked"?, "observable", "controllable"}
Model crisp_from_json(const nlohmann::json& doc);

bool is_crisp_document(const nlohmann::json& doc);

/// Reads either format, chosen by the presence of "states".
Model load_model(const std::string& path);
void save_model(const Model& m, const std::string& path);

nlohmann::json supervisor_to_json(const Supervisor<Degree>& s);
Supervisor<Degree> supervisor_from_json(const nlohmann::json& doc);
Supervisor<Degree> load_supervisor(const std::string& path);

nlohmann::json read_json_file(const std::string& path);

}  // namespace fdes
