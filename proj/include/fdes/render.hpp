#pragma once

// Text, CSV and JSON renderings of condition reports.

#include "fdes/supervisor.hpp"

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

namespace fdes {

enum class ReportFormat { table, csv, json };
enum class RowSelection { all, failures };

template <class Scalar>
std::vector<std::string> row_cells(const FuzzyAutomaton<Scalar>& g, const ConditionRow<Scalar>& r) {
  using T = ScalarTraits<Scalar>;
  return {format_event_string(g, r.s),
          r.t ? format_event_string(g, *r.t) : std::string("-"),
          r.sigma ? g.event(*r.sigma).name : (r.tag.empty() ? std::string("-") : r.tag),
          T::str(r.x1),
          T::str(r.x2),
          T::str(r.x3),
          T::str(r.y),
          T::str(r.V),
          T::str(r.W),
          r.pass ? "T" : "F"};
}

inline const std::vector<std::string>& row_header() {
  static const std::vector<std::string> h{"s", "t", "sigma", "x1", "x2", "x3", "y", "V", "W", "pass"};
  return h;
}

/// Column width by code points, so "ε" counts as one.
inline std::size_t display_width(const std::string& s) {
  std::size_t n = 0;
  for (unsigned char c : s) n += (c & 0xC0) != 0x80 ? 1 : 0;
  return n;
}

template <class Scalar>
std::string render_rows(const FuzzyAutomaton<Scalar>& g, const std::vector<ConditionRow<Scalar>>& rows, ReportFormat fmt,
                        RowSelection sel) {
  std::vector<std::vector<std::string>> cells;
  for (const auto& r : rows)
    if (sel == RowSelection::all || !r.pass) cells.push_back(row_cells(g, r));
  std::ostringstream os;
  if (fmt == ReportFormat::csv) {
    const auto& h = row_header();
    for (std::size_t i = 0; i < h.size(); ++i) os << (i ? "," : "") << h[i];
    os << "\n";
    for (const auto& c : cells) {
      for (std::size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
      os << "\n";
    }
    return os.str();
  }
  std::vector<std::size_t> width;
  for (const auto& h : row_header()) width.push_back(h.size());
  for (const auto& c : cells)
    for (std::size_t i = 0; i < c.size(); ++i) width[i] = std::max(width[i], display_width(c[i]));
  auto line = [&](const std::vector<std::string>& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      os << c[i];
      if (i + 1 < c.size()) os << std::string(width[i] - display_width(c[i]) + 2, ' ');
    }
    os << "\n";
  };
  line(row_header());
  for (const auto& c : cells) line(c);
  return os.str();
}

template <class Scalar>
nlohmann::json report_json(const FuzzyAutomaton<Scalar>& g, const VerificationReport<Scalar>& rep, RowSelection sel) {
  nlohmann::json out;
  out["condition"] = condition_name(rep.condition);
  out["verdict"] = rep.verdict;
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : rep.rows) {
    if (sel == RowSelection::failures && r.pass) continue;
    const auto c = row_cells(g, r);
    nlohmann::json row;
    for (std::size_t i = 0; i < c.size(); ++i) row[row_header()[i]] = c[i];
    row["pass"] = r.pass;
    rows.push_back(row);
  }
  out["rows"] = rows;
  if (const auto* w = rep.witness()) {
    const auto c = row_cells(g, *w);
    nlohmann::json wit;
    for (std::size_t i = 0; i < c.size(); ++i) wit[row_header()[i]] = c[i];
    wit["pass"] = false;
    out["witness"] = wit;
  }
  out["stats"] = {{"m1", rep.stats.m1},
                  {"m2", rep.stats.m2},
                  {"aug_nodes", rep.stats.aug_nodes},
                  {"product_nodes", rep.stats.product_nodes},
                  {"visits", rep.stats.visits}};
  if (!rep.notes.empty()) out["notes"] = rep.notes;
  return out;
}

template <class Scalar>
std::string render_report(const FuzzyAutomaton<Scalar>& g, const VerificationReport<Scalar>& rep, ReportFormat fmt,
                          RowSelection sel) {
  if (fmt == ReportFormat::json) return report_json(g, rep, sel).dump(2) + "\n";
  if (fmt == ReportFormat::csv) return render_rows(g, rep.rows, fmt, sel);
  std::ostringstream os;
  os << condition_name(rep.condition) << ": " << (rep.verdict ? "holds" : "fails");
  if (const auto* w = rep.witness()) {
    os << " (witness s=" << format_event_string(g, w->s);
    if (w->t) os << ", t=" << format_event_string(g, *w->t);
    if (w->sigma) os << ", sigma=" << g.event(*w->sigma).name;
    os << ", V=" << ScalarTraits<Scalar>::str(w->V) << ", W=" << ScalarTraits<Scalar>::str(w->W) << ")";
  }
  os << "\n";
  for (const auto& n : rep.notes) os << "  note: " << n << "\n";
  os << render_rows(g, rep.rows, fmt, sel);
  return os.str();
}

inline std::string stats_line(const ReportStats& s, std::size_t events) {
  std::ostringstream os;
  os << "m1=" << s.m1 << " m2=" << s.m2 << " aug=" << s.aug_nodes << " product=" << s.product_nodes
     << " visits=" << s.visits << " bound=" << (s.m1 + s.m2 + s.aug_nodes + s.product_nodes) * events + 4;
  return os.str();
}

}  // namespace fdes
