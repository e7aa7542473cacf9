#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "maxtype/ext_scalar.hpp"

namespace maxtype {

struct Cell {
  std::string name;
  std::variant<ExtScalar, std::string> value;
};

/// An asserted comparison `cell relation limit`.
struct Bound {
  std::string cell;
  std::string relation;  // "<=", ">=" or "=="
  ExtScalar limit;
  std::string source;
  double rel_tol = 0.0;
};

struct Row {
  std::vector<Cell> cells;
  std::vector<Bound> bounds;

  Row& num(std::string name, ExtScalar value);
  Row& txt(std::string name, std::string value);
  Row& assert_that(std::string cell, std::string relation, ExtScalar limit, std::string source, double rel_tol = 0.0);

  const ExtScalar& number(const std::string& name) const;
  std::string text(const std::string& name) const;
  bool holds(const Bound& b) const;
  /// True when every bound holds.
  bool passes() const;
};

struct Report {
  std::string experiment;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<Row> rows;
  std::vector<std::string> notes;
  std::optional<std::string> golden_ref;

  bool passes() const;
  void add_param(std::string key, std::string value) { params.emplace_back(std::move(key), std::move(value)); }
};

void write_json(std::ostream& os, const Report& report);
void write_csv(std::ostream& os, const Report& report);

}  // namespace maxtype
