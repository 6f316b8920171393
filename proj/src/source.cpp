// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "vldsrc/source.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "vldsrc/errors.hpp"

namespace vldsrc {

namespace {

using json = nlohmann::json;

std::string cell_path(std::size_t i, std::size_t j) {
  return "pmf[" + std::to_string(i) + "][" + std::to_string(j) + "]";
}

void check_alphabets(const std::vector<std::string>& xs,
                     const std::vector<std::string>& ys, std::size_t rows,
                     const std::vector<std::size_t>& row_sizes) {
  if (xs.empty()) throw ValidationError("x_alphabet: empty alphabet");
  if (ys.empty()) throw ValidationError("y_alphabet: empty alphabet");
  if (std::set<std::string>(xs.begin(), xs.end()).size() != xs.size()) {
    throw ValidationError("x_alphabet: duplicate label");
  }
  if (std::set<std::string>(ys.begin(), ys.end()).size() != ys.size()) {
    throw ValidationError("y_alphabet: duplicate label");
  }
  if (rows != xs.size()) {
    throw ValidationError("pmf: expected " + std::to_string(xs.size()) +
                          " rows (one per x symbol), got " + std::to_string(rows));
  }
  for (std::size_t i = 0; i < rows; ++i) {
    if (row_sizes[i] != ys.size()) {
      throw ValidationError("pmf[" + std::to_string(i) + "]: expected " +
                            std::to_string(ys.size()) + " columns (one per y symbol)");
    }
  }
}

template <class Num>
void build_tables(const std::vector<Num>& joint, std::size_t nx, std::size_t ny,
                  SourceTables<Num>& out) {
  out.joint = joint;
  out.marginal_y.assign(ny, Num(0));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) out.marginal_y[y] += joint[x * ny + y];
  }
  out.conditional.assign(nx * ny, Num(0));
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t y = 0; y < ny; ++y) {
      out.conditional[x * ny + y] = joint[x * ny + y] / out.marginal_y[y];
    }
  }
}

}  // namespace

std::string_view mode_name(ProbabilityMode mode) {
  return mode == ProbabilityMode::kRational ? "rational" : "float";
}

void JointSource::finish(const std::vector<Rational>& joint_in) {
  const std::size_t nx = x_alphabet_.size();
  const std::size_t ny_in = y_alphabet_.size();
  // Drop side-information symbols that never occur.
  std::vector<std::size_t> keep;
  for (std::size_t y = 0; y < ny_in; ++y) {
    Rational col = 0;
    for (std::size_t x = 0; x < nx; ++x) col += joint_in[x * ny_in + y];
    if (sgn(col) > 0) keep.push_back(y);
  }
  std::vector<std::string> ys;
  for (std::size_t y : keep) ys.push_back(y_alphabet_[y]);
  const std::size_t ny = keep.size();
  std::vector<Rational> joint(nx * ny);
  for (std::size_t x = 0; x < nx; ++x) {
    for (std::size_t k = 0; k < ny; ++k) joint[x * ny + k] = joint_in[x * ny_in + keep[k]];
  }
  y_alphabet_ = std::move(ys);

  build_tables(joint, nx, ny, exact_);
  std::vector<double> joint_d(joint.size());
  for (std::size_t k = 0; k < joint.size(); ++k) joint_d[k] = to_double(joint[k]);
  build_tables(joint_d, nx, ny, approx_);

  support_.assign(ny, {});
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t x = 0; x < nx; ++x) {
      if (sgn(exact_.joint[x * ny + y]) > 0) support_[y].push_back(x);
    }
  }
}

JointSource JointSource::from_rational(std::vector<std::string> x_alphabet,
                                       std::vector<std::string> y_alphabet,
                                       const std::vector<std::vector<Rational>>& pmf) {
  std::vector<std::size_t> sizes;
  for (const auto& row : pmf) sizes.push_back(row.size());
  check_alphabets(x_alphabet, y_alphabet, pmf.size(), sizes);
  const std::size_t ny = y_alphabet.size();
  std::vector<Rational> joint(x_alphabet.size() * ny);
  Rational total = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      if (sgn(pmf[i][j]) < 0) throw ValidationError(cell_path(i, j) + ": negative mass");
      joint[i * ny + j] = pmf[i][j];
      total += pmf[i][j];
    }
  }
  if (total != 1) {
    throw ValidationError("pmf: non-unit total (" + format_rational(total) + ")");
  }
  JointSource src;
  src.mode_ = ProbabilityMode::kRational;
  src.x_alphabet_ = std::move(x_alphabet);
  src.y_alphabet_ = std::move(y_alphabet);
  src.finish(joint);
  return src;
}

JointSource JointSource::from_float(std::vector<std::string> x_alphabet,
                                    std::vector<std::string> y_alphabet,
                                    const std::vector<std::vector<double>>& pmf) {
  std::vector<std::size_t> sizes;
  for (const auto& row : pmf) sizes.push_back(row.size());
  check_alphabets(x_alphabet, y_alphabet, pmf.size(), sizes);
  const std::size_t ny = y_alphabet.size();
  std::vector<Rational> joint(x_alphabet.size() * ny);
  Rational total = 0;
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      double v = pmf[i][j];
      if (!std::isfinite(v)) throw ValidationError(cell_path(i, j) + ": non-finite mass");
      if (v < 0) throw ValidationError(cell_path(i, j) + ": negative mass");
      joint[i * ny + j] = Rational(v);
      total += joint[i * ny + j];
    }
  }
  if (std::abs(to_double(total) - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "pmf: non-unit total (" << to_double(total) << ")";
    throw ValidationError(msg.str());
  }
  for (auto& q : joint) q /= total;
  JointSource src;
  src.mode_ = ProbabilityMode::kFloat;
  src.x_alphabet_ = std::move(x_alphabet);
  src.y_alphabet_ = std::move(y_alphabet);
  src.finish(joint);
  return src;
}

std::size_t JointSource::x_index(std::string_view label) const {
  auto it = std::find(x_alphabet_.begin(), x_alphabet_.end(), label);
  if (it == x_alphabet_.end()) {
    throw ValidationError("unknown x symbol '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - x_alphabet_.begin());
}

std::size_t JointSource::y_index(std::string_view label) const {
  auto it = std::find(y_alphabet_.begin(), y_alphabet_.end(), label);
  if (it == y_alphabet_.end()) {
    throw ValidationError("unknown y symbol '" + std::string(label) + "'");
  }
  return static_cast<std::size_t>(it - y_alphabet_.begin());
}

std::size_t JointSource::joint_support_size() const {
  std::size_t m = 0;
  for (const auto& s : support_) m += s.size();
  return m;
}

JointSource JointSource::as_float() const {
  JointSource copy = *this;
  copy.mode_ = ProbabilityMode::kFloat;
  return copy;
}

JointSource load_source(std::string_view document) {
  json doc;
  try {
    doc = json::parse(document);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("source document: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("source document: expected an object");
  for (const char* field : {"mode", "x_alphabet", "y_alphabet", "pmf"}) {
    if (!doc.contains(field)) {
      throw ValidationError(std::string(field) + ": missing field");
    }
  }
  if (!doc["mode"].is_string()) throw ValidationError("mode: expected a string");
  const std::string mode = doc["mode"].get<std::string>();
  if (mode != "rational" && mode != "float") {
    throw ValidationError("mode: expected \"rational\" or \"float\", got \"" + mode + "\"");
  }
  auto read_alphabet = [&](const char* field) {
    const json& a = doc[field];
    if (!a.is_array()) throw ValidationError(std::string(field) + ": expected an array");
    std::vector<std::string> out;
    for (std::size_t k = 0; k < a.size(); ++k) {
      if (!a[k].is_string()) {
        throw ValidationError(std::string(field) + "[" + std::to_string(k) +
                              "]: expected a string");
      }
      out.push_back(a[k].get<std::string>());
    }
    return out;
  };
  auto xs = read_alphabet("x_alphabet");
  auto ys = read_alphabet("y_alphabet");
  const json& pmf = doc["pmf"];
  if (!pmf.is_array()) throw ValidationError("pmf: expected an array of rows");
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    if (!pmf[i].is_array()) {
      throw ValidationError("pmf[" + std::to_string(i) + "]: expected an array");
    }
  }
  if (mode == "rational") {
    std::vector<std::vector<Rational>> table(pmf.size());
    for (std::size_t i = 0; i < pmf.size(); ++i) {
      for (std::size_t j = 0; j < pmf[i].size(); ++j) {
        const json& cell = pmf[i][j];
        if (!cell.is_string()) {
          throw ValidationError(cell_path(i, j) + ": expected a rational string \"p/q\"");
        }
        try {
          table[i].push_back(parse_rational(cell.get<std::string>()));
        } catch (const ValidationError& e) {
          throw ValidationError(cell_path(i, j) + ": " + e.what());
        }
      }
    }
    return JointSource::from_rational(std::move(xs), std::move(ys), table);
  }
  std::vector<std::vector<double>> table(pmf.size());
  for (std::size_t i = 0; i < pmf.size(); ++i) {
    for (std::size_t j = 0; j < pmf[i].size(); ++j) {
      const json& cell = pmf[i][j];
      if (!cell.is_number()) throw ValidationError(cell_path(i, j) + ": expected a number");
      table[i].push_back(cell.get<double>());
    }
  }
  return JointSource::from_float(std::move(xs), std::move(ys), table);
}

JointSource load_source_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open source file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return load_source(buffer.str());
}

std::string dump_source(const JointSource& src) {
  json doc;
  doc["mode"] = std::string(mode_name(src.mode()));
  doc["x_alphabet"] = src.x_alphabet();
  doc["y_alphabet"] = src.y_alphabet();
  json rows = json::array();
  const std::size_t ny = src.y_size();
  for (std::size_t x = 0; x < src.x_size(); ++x) {
    json row = json::array();
    for (std::size_t y = 0; y < ny; ++y) {
      if (src.is_exact()) {
        row.push_back(format_rational(src.exact().joint[x * ny + y]));
      } else {
        row.push_back(src.approx().joint[x * ny + y]);
      }
    }
    rows.push_back(row);
  }
  doc["pmf"] = rows;
  return doc.dump();
}

double info_density(const JointSource& src, std::size_t x, std::size_t y) {
  if (x >= src.x_size() || y >= src.y_size()) throw ValidationError("symbol index out of range");
  const Rational& p = src.exact().conditional[x * src.y_size() + y];
  if (sgn(p) == 0) {
    throw DomainError("information density undefined: P(" + src.x_alphabet()[x] + " | " +
                      src.y_alphabet()[y] + ") = 0");
  }
  if (src.is_exact()) return -log2_rational(p);
  return -std::log2(src.approx().conditional[x * src.y_size() + y]);
}

double info_density(const JointSource& src, std::string_view x, std::string_view y) {
  return info_density(src, src.x_index(x), src.y_index(y));
}

template <class Num>
std::vector<ConditionalRow<Num>> sorted_rows(const JointSource& src) {
  const auto& t = src.tables<Num>();
  const std::size_t ny = src.y_size();
  std::vector<ConditionalRow<Num>> rows;
  rows.reserve(ny);
  for (std::size_t y = 0; y < ny; ++y) {
    ConditionalRow<Num> row;
    row.y = y;
    row.perm = src.support(y);
    std::stable_sort(row.perm.begin(), row.perm.end(), [&](std::size_t a, std::size_t b) {
      return t.conditional[a * ny + y] > t.conditional[b * ny + y];
    });
    for (std::size_t x : row.perm) row.probs_sorted.push_back(t.conditional[x * ny + y]);
    rows.push_back(std::move(row));
  }
  return rows;
}

template std::vector<ConditionalRow<double>> sorted_rows<double>(const JointSource&);
template std::vector<ConditionalRow<Rational>> sorted_rows<Rational>(const JointSource&);

namespace {

template <class Num>
MeasureSet measures_impl(const JointSource& src) {
  const auto& t = src.tables<Num>();
  const std::size_t ny = src.y_size();
  MeasureSet m;
  m.per_y.resize(ny);
  // Information densities are always evaluated from the exact masses so both
  // modes see identical logarithms.
  auto iota = [&](std::size_t x, std::size_t y) {
    return src.is_exact() ? -log2_rational(src.exact().conditional[x * ny + y])
                          : -std::log2(src.approx().conditional[x * ny + y]);
  };
  std::vector<std::pair<double, Num>> h_terms, v_terms;
  for (std::size_t y = 0; y < ny; ++y) {
    std::vector<std::pair<double, Num>> terms;
    for (std::size_t x : src.support(y)) terms.emplace_back(iota(x, y), t.conditional[x * ny + y]);
    PerSymbolMeasures& per = m.per_y[y];
    per.entropy = grouped_sum(terms);
    std::vector<std::pair<double, Num>> sq, cube;
    for (const auto& [v, w] : terms) {
      double d = v - per.entropy;
      sq.emplace_back(d * d, w);
      cube.emplace_back(std::abs(d) * d * d, w);
    }
    per.variance = grouped_sum(std::move(sq));
    per.third_moment = grouped_sum(std::move(cube));
    h_terms.emplace_back(per.entropy, t.marginal_y[y]);
    v_terms.emplace_back(per.variance, t.marginal_y[y]);
  }
  m.H = grouped_sum(std::move(h_terms));
  m.V_c = grouped_sum(std::move(v_terms));
  std::vector<std::pair<double, Num>> vu, tu;
  for (std::size_t y = 0; y < ny; ++y) {
    for (std::size_t x : src.support(y)) {
      double d = iota(x, y) - m.H;
      vu.emplace_back(d * d, t.joint[x * ny + y]);
      tu.emplace_back(std::abs(d) * d * d, t.joint[x * ny + y]);
    }
  }
  m.V_u = grouped_sum(std::move(vu));
  m.T_u = grouped_sum(std::move(tu));
  return m;
}

}  // namespace

MeasureSet measures(const JointSource& src) {
  return src.is_exact() ? measures_impl<Rational>(src) : measures_impl<double>(src);
}

}  // namespace vldsrc
