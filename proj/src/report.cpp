#include "maxtype/report.hpp"

#include <algorithm>
#include <stdexcept>

#include "json.hpp"

namespace maxtype {

namespace {

using ordered_json = nlohmann::ordered_json;

ordered_json number_json(const ExtScalar& x) {
  ordered_json j;
  j["dec"] = x.to_decimal();
  j["exp2"] = x.to_exp2();
  return j;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string verdict(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

const ExtScalar& Row::number(const std::string& name) const {
  for (const Cell& c : cells) {
    if (c.name == name) {
      if (const auto* v = std::get_if<ExtScalar>(&c.value)) return *v;
      throw std::invalid_argument("cell '" + name + "' is not numeric");
    }
  }
  throw std::out_of_range("no cell '" + name + "'");
}

std::string Row::text(const std::string& name) const {
  for (const Cell& c : cells) {
    if (c.name == name) {
      if (const auto* v = std::get_if<std::string>(&c.value)) return *v;
      return std::get<ExtScalar>(c.value).to_decimal();
    }
  }
  throw std::out_of_range("no cell '" + name + "'");
}

Row& Row::num(std::string name, ExtScalar value) {
  cells.push_back({std::move(name), std::move(value)});
  return *this;
}

Row& Row::txt(std::string name, std::string value) {
  cells.push_back({std::move(name), std::move(value)});
  return *this;
}

Row& Row::assert_that(std::string cell, std::string relation, ExtScalar limit, std::string source, double rel_tol) {
  bounds.push_back({std::move(cell), std::move(relation), std::move(limit), std::move(source), rel_tol});
  return *this;
}

bool Row::holds(const Bound& b) const {
  const ExtScalar& v = number(b.cell);
  if (b.relation == "<=") return leq_rel(v, b.limit, b.rel_tol);
  if (b.relation == ">=") return leq_rel(b.limit, v, b.rel_tol);
  if (b.relation == "==") return b.rel_tol == 0.0 ? v.identical(b.limit) : approx_equal(v, b.limit, b.rel_tol);
  throw std::invalid_argument("unknown relation " + b.relation);
}

bool Row::passes() const {
  for (const Bound& b : bounds) {
    if (!holds(b)) return false;
  }
  return true;
}

bool Report::passes() const {
  for (const Row& r : rows) {
    if (!r.passes()) return false;
  }
  return true;
}

void write_json(std::ostream& os, const Report& report) {
  ordered_json j;
  j["experiment"] = report.experiment;
  ordered_json params = ordered_json::object();
  for (const auto& [k, v] : report.params) params[k] = v;
  j["params"] = params;
  ordered_json rows = ordered_json::array();
  for (const Row& r : report.rows) {
    ordered_json row;
    for (const Cell& c : r.cells) {
      if (const auto* v = std::get_if<ExtScalar>(&c.value)) {
        row[c.name] = number_json(*v);
      } else {
        row[c.name] = std::get<std::string>(c.value);
      }
    }
    if (!r.bounds.empty()) {
      ordered_json bounds = ordered_json::array();
      for (const Bound& bd : r.bounds) {
        ordered_json b;
        b["cell"] = bd.cell;
        b["relation"] = bd.relation;
        b["limit"] = number_json(bd.limit);
        b["source"] = bd.source;
        if (bd.rel_tol != 0.0) b["rel_tol"] = bd.rel_tol;
        b["verdict"] = verdict(r.holds(bd));
        bounds.push_back(std::move(b));
      }
      row["bounds"] = bounds;
      row["verdict"] = verdict(r.passes());
    }
    rows.push_back(std::move(row));
  }
  j["rows"] = rows;
  if (!report.notes.empty()) j["notes"] = report.notes;
  j["verdict"] = verdict(report.passes());
  if (report.golden_ref) j["golden_ref"] = *report.golden_ref;
  os << j.dump(2) << "\n";
}

void write_csv(std::ostream& os, const Report& report) {
  std::vector<std::string> columns;
  for (const Row& r : report.rows) {
    for (const Cell& c : r.cells) {
      if (std::find(columns.begin(), columns.end(), c.name) == columns.end()) columns.push_back(c.name);
    }
  }
  bool any_bound = false;
  for (const Row& r : report.rows) any_bound = any_bound || !r.bounds.empty();
  std::string header;
  for (const auto& c : columns) header += (header.empty() ? "" : ",") + csv_field(c);
  if (any_bound) header += ",bound,source,verdict";
  os << header << "\n";
  for (const Row& r : report.rows) {
    std::string line;
    for (std::size_t k = 0; k < columns.size(); ++k) {
      if (k) line += ",";
      for (const Cell& c : r.cells) {
        if (c.name == columns[k]) {
          line += csv_field(r.text(c.name));
          break;
        }
      }
    }
    if (any_bound) {
      std::string bounds;
      std::string sources;
      for (const Bound& b : r.bounds) {
        bounds += (bounds.empty() ? "" : "; ") + b.cell + " " + b.relation + " " + b.limit.to_decimal();
        sources += (sources.empty() ? "" : "; ") + b.source;
      }
      line += "," + csv_field(bounds) + "," + csv_field(sources) + "," + (r.bounds.empty() ? "" : verdict(r.passes()));
    }
    os << line << "\n";
  }
}

}  // namespace maxtype
