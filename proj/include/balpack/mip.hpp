#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "balpack/errors.hpp"
#include "balpack/instance.hpp"
#include "balpack/rational.hpp"

namespace balpack {

enum class ModelKind { classic_bp, bfbp, kbfbp, bmbp };

inline const char* model_kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::classic_bp: return "classic_bp";
    case ModelKind::bfbp: return "bfbp";
    case ModelKind::kbfbp: return "kbfbp";
    case ModelKind::bmbp: return "bmbp";
  }
  return "?";
}

struct MipOptions {
  std::optional<int> bins;
  std::optional<int> split_bound;
  std::optional<int> stages;
  bool symmetry_breaking = false;
};

namespace detail {

struct Term {
  long long coef;
  std::string var;
};

inline std::string format_row(const std::string& name, const std::vector<Term>& terms,
                              const std::string& op, long long rhs) {
  std::ostringstream os;
  os << " " << name << ":";
  bool first = true;
  for (const auto& t : terms) {
    if (t.coef == 0) continue;
    long long mag = t.coef < 0 ? -t.coef : t.coef;
    if (first) {
      os << " ";
      if (t.coef < 0) os << "- ";
    } else {
      os << (t.coef < 0 ? " - " : " + ");
    }
    if (mag != 1) os << mag << " ";
    os << t.var;
    first = false;
  }
  os << " " << op << " " << rhs;
  return os.str();
}

inline std::string vname(const std::string& base, std::initializer_list<int> idx) {
  std::string s = base;
  for (int i : idx) s += "_" + std::to_string(i);
  return s;
}

}  // namespace detail

/// Emits the requested formulation as an LP-format document. Rows touching
/// the capacity are multiplied through by the capacity's denominator, so
/// every coefficient and right-hand side in the file is an integer.
inline std::string export_model(const Instance& inst, ModelKind kind, const MipOptions& opts = {}) {
  using detail::Term;
  using detail::format_row;
  using detail::vname;

  const int n = inst.n();
  const int m = static_cast<int>(
      opts.bins ? *opts.bins : (inst.bins ? *inst.bins : n));
  if (m < 1) throw Error(Errc::unsupported_kind_parameter, "bin count must be positive");

  int split = 0, stages = 0;
  if (kind == ModelKind::kbfbp) {
    if (opts.split_bound)
      split = *opts.split_bound;
    else if (inst.split_bound)
      split = *inst.split_bound;
    else
      throw Error(Errc::unsupported_kind_parameter, "kbfbp needs a split bound");
    if (split < 1) throw Error(Errc::unsupported_kind_parameter, "split bound must be positive");
  }
  if (kind == ModelKind::bmbp) {
    if (opts.stages)
      stages = *opts.stages;
    else if (inst.stages)
      stages = *inst.stages;
    else
      throw Error(Errc::unsupported_kind_parameter, "bmbp needs a stage count");
    if (stages < 1) throw Error(Errc::unsupported_kind_parameter, "stage count must be positive");
  }

  const long long cden = inst.capacity.den_ll();
  const long long cnum = inst.capacity.num_ll();
  std::vector<std::int64_t> sizes = inst.original_sizes();
  const bool fractional = kind != ModelKind::classic_bp;
  const bool fix_bins = kind == ModelKind::kbfbp;  // fixed-m decision variant
  const char* share = fractional ? "l" : "x";

  std::vector<std::string> rows;
  std::vector<std::string> bounds;
  std::vector<std::string> binaries;

  auto stage_list = [&]() {
    std::vector<int> s;
    if (kind == ModelKind::bmbp)
      for (int t = 1; t <= stages; ++t) s.push_back(t);
    else
      s.push_back(0);  // 0 = no stage suffix
    return s;
  }();
  auto suffixed = [&](const std::string& base, std::initializer_list<int> idx, int s) {
    std::string v = detail::vname(base, idx);
    if (s > 0) v += "_" + std::to_string(s);
    return v;
  };

  // capacity rows, scaled by the capacity denominator
  for (int j = 1; j <= m; ++j) {
    std::vector<Term> terms;
    for (int i = 1; i <= n; ++i)
      for (int s : stage_list)
        terms.push_back({sizes[i - 1] * cden, suffixed(share, {i, j}, s)});
    terms.push_back({-cnum, vname("y", {j})});
    rows.push_back(format_row(vname("cap", {j}), terms, "<=", 0));
  }
  // demand rows
  for (int i = 1; i <= n; ++i) {
    std::vector<Term> terms;
    for (int j = 1; j <= m; ++j)
      for (int s : stage_list) terms.push_back({1, suffixed(share, {i, j}, s)});
    rows.push_back(format_row(vname("dem", {i}), terms, "=", 1));
  }
  // linearization of the balance product, per (object, bin[, stage])
  if (fractional) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= m; ++j)
        for (int s : stage_list) {
          std::string l = suffixed("l", {i, j}, s);
          std::string x = suffixed("x", {i, j}, s);
          std::string a = s > 0 ? suffixed("a", {j}, s) : vname("a", {j});
          std::string tag = s > 0 ? "_" + std::to_string(i) + "_" + std::to_string(j) + "_" +
                                        std::to_string(s)
                                  : "_" + std::to_string(i) + "_" + std::to_string(j);
          rows.push_back(format_row("lin1" + tag, {{1, l}, {-1, x}}, "<=", 0));
          rows.push_back(format_row("lin2" + tag, {{1, l}, {-1, a}}, "<=", 0));
          rows.push_back(format_row("lin3" + tag, {{1, l}, {-1, a}, {-1, x}}, ">=", -1));
        }
  }
  // split bound rows
  if (kind == ModelKind::kbfbp) {
    for (int i = 1; i <= n; ++i) {
      std::vector<Term> terms;
      for (int j = 1; j <= m; ++j) terms.push_back({1, vname("x", {i, j})});
      rows.push_back(format_row(vname("split", {i}), terms, "<=", split));
    }
  }
  // one bin per object per stage
  if (kind == ModelKind::bmbp) {
    for (int i = 1; i <= n; ++i)
      for (int s = 1; s <= stages; ++s) {
        std::vector<Term> terms;
        for (int j = 1; j <= m; ++j) terms.push_back({1, suffixed("x", {i, j}, s)});
        rows.push_back(format_row(vname("onebin", {i, s}), terms, "<=", 1));
      }
  }
  // optional bin symmetry breaking, feasibility-neutral
  if (opts.symmetry_breaking)
    for (int j = 1; j < m; ++j)
      rows.push_back(
          format_row(vname("sym", {j}), {{1, vname("y", {j})}, {-1, vname("y", {j + 1})}}, ">=", 0));

  // bounds for the continuous variables
  if (fractional) {
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= m; ++j)
        for (int s : stage_list) bounds.push_back(" 0 <= " + suffixed("l", {i, j}, s) + " <= 1");
    for (int j = 1; j <= m; ++j)
      for (int s : stage_list)
        bounds.push_back(" 0 <= " + (s > 0 ? suffixed("a", {j}, s) : vname("a", {j})) + " <= 1");
  }
  if (fix_bins)
    for (int j = 1; j <= m; ++j) bounds.push_back(" " + vname("y", {j}) + " = 1");

  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= m; ++j)
      for (int s : stage_list) binaries.push_back(suffixed("x", {i, j}, s));
  for (int j = 1; j <= m; ++j) binaries.push_back(vname("y", {j}));

  std::ostringstream os;
  os << "Minimize\n obj:";
  for (int j = 1; j <= m; ++j) os << (j == 1 ? " " : " + ") << vname("y", {j});
  os << "\nSubject To\n";
  for (const auto& r : rows) os << r << "\n";
  if (!bounds.empty()) {
    os << "Bounds\n";
    for (const auto& b : bounds) os << b << "\n";
  }
  os << "Binary\n";
  for (const auto& b : binaries) os << " " << b << "\n";
  os << "End\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// LP grammar checker
// ---------------------------------------------------------------------------

struct LpConstraint {
  std::string name;
  int terms = 0;
  std::string op;
  long long rhs = 0;
};

struct LpModel {
  std::vector<std::string> objective_vars;
  std::vector<LpConstraint> constraints;
  int bounds_lines = 0;
  std::vector<std::string> binaries;
  std::set<std::string> variables;
};

namespace detail {

inline bool is_ident(const std::string& t) {
  if (t.empty() || t.size() > 255) return false;
  if (!std::isalpha(static_cast<unsigned char>(t[0])) && t[0] != '_') return false;
  for (char c : t)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

inline bool is_integer_literal(const std::string& t) {
  if (t.empty()) return false;
  std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
  if (i == t.size()) return false;
  for (; i < t.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
  return true;
}

inline std::vector<std::string> lp_tokens(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream is(line);
  std::string t;
  while (is >> t) out.push_back(t);
  return out;
}

/// Parses "[coef] var ((+|-) [coef] var)*  op  int" starting at tokens[from].
inline LpConstraint parse_linear(const std::vector<std::string>& toks, std::size_t from,
                                 std::set<std::string>& vars, const std::string& ctx) {
  LpConstraint c;
  std::size_t i = from;
  bool expect_term = true;
  if (i < toks.size() && (toks[i] == "-" || toks[i] == "+")) ++i;
  while (i < toks.size()) {
    const std::string& t = toks[i];
    if (t == "<=" || t == ">=" || t == "=") {
      if (expect_term) throw Error(Errc::invalid_input, ctx + ": operator before any term");
      c.op = t;
      ++i;
      break;
    }
    if (!expect_term) {
      if (t == "+" || t == "-") {
        expect_term = true;
        ++i;
        continue;
      }
      throw Error(Errc::invalid_input, ctx + ": expected '+', '-' or an operator, got '" + t + "'");
    }
    if (is_integer_literal(t)) {
      if (i + 1 >= toks.size() || !is_ident(toks[i + 1]))
        throw Error(Errc::invalid_input, ctx + ": coefficient without a variable");
      vars.insert(toks[i + 1]);
      ++c.terms;
      i += 2;
    } else if (is_ident(t)) {
      vars.insert(t);
      ++c.terms;
      ++i;
    } else {
      throw Error(Errc::invalid_input, ctx + ": non-integer coefficient or bad token '" + t + "'");
    }
    expect_term = false;
  }
  if (c.op.empty()) throw Error(Errc::invalid_input, ctx + ": missing relational operator");
  if (i >= toks.size() || !is_integer_literal(toks[i]))
    throw Error(Errc::invalid_input, ctx + ": right-hand side is not an integer");
  c.rhs = std::stoll(toks[i]);
  if (i + 1 != toks.size()) throw Error(Errc::invalid_input, ctx + ": trailing tokens");
  return c;
}

}  // namespace detail

/// Validates an LP-format document against the grammar this module emits
/// (sections Minimize / Subject To / Bounds / Binary / End, one constraint
/// per line, integer coefficients) and returns its structure.
inline LpModel lp_check(const std::string& text) {
  std::vector<std::string> lines;
  {
    std::istringstream is(text);
    std::string l;
    while (std::getline(is, l)) {
      while (!l.empty() && (l.back() == '\r' || l.back() == ' ')) l.pop_back();
      if (!l.empty()) lines.push_back(l);
    }
  }
  LpModel model;
  std::size_t i = 0;
  auto expect = [&](const std::string& section) {
    if (i >= lines.size() || lines[i] != section)
      throw Error(Errc::invalid_input, "expected section '" + section + "'");
    ++i;
  };

  expect("Minimize");
  {
    if (i >= lines.size()) throw Error(Errc::invalid_input, "missing objective");
    auto toks = detail::lp_tokens(lines[i]);
    if (toks.empty() || toks[0].back() != ':')
      throw Error(Errc::invalid_input, "objective must be named");
    for (std::size_t t = 1; t < toks.size(); ++t) {
      if (toks[t] == "+" || toks[t] == "-") continue;
      if (detail::is_integer_literal(toks[t])) continue;
      if (!detail::is_ident(toks[t]))
        throw Error(Errc::invalid_input, "bad objective token '" + toks[t] + "'");
      model.objective_vars.push_back(toks[t]);
      model.variables.insert(toks[t]);
    }
    ++i;
  }

  expect("Subject To");
  while (i < lines.size() && lines[i] != "Bounds" && lines[i] != "Binary" && lines[i] != "End") {
    auto toks = detail::lp_tokens(lines[i]);
    if (toks.empty() || toks[0].back() != ':')
      throw Error(Errc::invalid_input, "constraint line without a name: '" + lines[i] + "'");
    std::string name = toks[0].substr(0, toks[0].size() - 1);
    if (!detail::is_ident(name))
      throw Error(Errc::invalid_input, "bad constraint name '" + name + "'");
    auto c = detail::parse_linear(toks, 1, model.variables, name);
    c.name = std::move(name);
    model.constraints.push_back(std::move(c));
    ++i;
  }

  if (i < lines.size() && lines[i] == "Bounds") {
    ++i;
    while (i < lines.size() && lines[i] != "Binary" && lines[i] != "End") {
      auto toks = detail::lp_tokens(lines[i]);
      bool ok = false;
      if (toks.size() == 5 && detail::is_integer_literal(toks[0]) && toks[1] == "<=" &&
          detail::is_ident(toks[2]) && toks[3] == "<=" && detail::is_integer_literal(toks[4])) {
        model.variables.insert(toks[2]);
        ok = true;
      } else if (toks.size() == 3 && detail::is_ident(toks[0]) &&
                 (toks[1] == "=" || toks[1] == "<=" || toks[1] == ">=") &&
                 detail::is_integer_literal(toks[2])) {
        model.variables.insert(toks[0]);
        ok = true;
      }
      if (!ok) throw Error(Errc::invalid_input, "bad bounds line: '" + lines[i] + "'");
      ++model.bounds_lines;
      ++i;
    }
  }

  if (i < lines.size() && lines[i] == "Binary") {
    ++i;
    while (i < lines.size() && lines[i] != "End") {
      auto toks = detail::lp_tokens(lines[i]);
      for (const auto& t : toks) {
        if (!detail::is_ident(t)) throw Error(Errc::invalid_input, "bad binary entry '" + t + "'");
        model.binaries.push_back(t);
        model.variables.insert(t);
      }
      ++i;
    }
  }

  expect("End");
  if (i != lines.size()) throw Error(Errc::invalid_input, "content after End");
  return model;
}

}  // namespace balpack
