#include "liesym/borninfeld.hpp"

#include <map>
#include <sstream>

#include "fixtures_data.hpp"
#include "liesym/parser.hpp"

namespace liesym {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string part;
  while (std::getline(ss, part, sep)) {
    part = trim(part);
    if (!part.empty()) out.push_back(part);
  }
  return out;
}

std::size_t generator_index(const std::string& label) {
  if (label.size() < 2 || label[0] != 'v') {
    throw Error(ErrorCode::InvalidArgument, "expected a generator label v1..v7, got '" + label + "'");
  }
  const int i = std::stoi(label.substr(1));
  if (i < 1 || i > 7) throw Error(ErrorCode::InvalidArgument, "generator index out of range: " + label);
  return static_cast<std::size_t>(i - 1);
}

Rational parse_rational(const std::string& text) {
  const Expr e = parse(text);
  if (!e.is_constant()) throw Error(ErrorCode::InvalidArgument, "expected a rational number, got '" + text + "'");
  return e.constant_value();
}

Element element_from_expr(const Expr& e, const std::vector<std::string>& labels) {
  std::vector<Symbol> vars;
  for (const auto& l : labels) vars.push_back(Symbol::parameter(l));
  Element out(labels.size(), Rational(0));
  for (const auto& [mono, c] : poly_coeffs(e, vars)) {
    int degree = 0;
    std::size_t at = 0;
    for (std::size_t k = 0; k < mono.size(); ++k) {
      degree += mono[k];
      if (mono[k]) at = k;
    }
    if (degree != 1 || !c.is_constant()) {
      throw Error(ErrorCode::InvalidArgument, "'" + to_string(e) + "' is not a rational combination of " +
                                                  labels.front() + ".." + labels.back());
    }
    out[at] = c.constant_value();
  }
  return out;
}

}  // namespace

const std::string& embedded_fixture(const std::string& name) {
  static const std::map<std::string, std::string> table = [] {
    std::map<std::string, std::string> m;
    for (const auto& [k, v] : generated::kFixtures) m.emplace(k, v);
    return m;
  }();
  const auto it = table.find(name);
  if (it == table.end()) throw Error(ErrorCode::InvalidArgument, "no embedded fixture '" + name + "'");
  return it->second;
}

std::vector<std::string> embedded_fixture_names() {
  std::vector<std::string> out;
  for (const auto& entry : generated::kFixtures) out.emplace_back(entry.first);
  return out;
}

FixtureFile load_embedded(const std::string& name) { return parse_fixture(embedded_fixture(name)); }

Pde born_infeld_pde() { return pde_from_text(embedded_fixture("borninfeld.pde")); }

std::vector<NamedField> born_infeld_generators() {
  const FixtureFile f = load_embedded("generators.fix");
  std::vector<NamedField> out;
  for (int i = 1; i <= 7; ++i) {
    const auto& s = f.get("v" + std::to_string(i));
    out.push_back({s.name, s.get("anchor"), make_field(s.get("xi1"), s.get("xi2"), s.get("eta"))});
  }
  return out;
}

std::vector<VectorField> fields_of(const std::vector<NamedField>& named) {
  std::vector<VectorField> out;
  for (const auto& n : named) out.push_back(n.field);
  return out;
}

LieAlgebra born_infeld_algebra() {
  const auto gens = born_infeld_generators();
  std::vector<std::string> labels;
  for (const auto& g : gens) labels.push_back(g.label);
  return structure_constants(fields_of(gens), labels);
}

Element parse_element(const std::string& text, const std::vector<std::string>& labels) {
  return element_from_expr(parse(text), labels);
}

std::vector<std::vector<Element>> fixture_table(const FixtureSection& section,
                                                const std::vector<std::string>& labels) {
  std::vector<std::vector<Element>> out;
  for (const auto& row_label : labels) {
    const auto cells = split(section.get(row_label), ',');
    if (cells.size() != labels.size()) {
      throw Error(ErrorCode::InvalidArgument, "row " + row_label + " of [" + section.name + "] has " +
                                                  std::to_string(cells.size()) + " entries");
    }
    std::vector<Element> row;
    for (const auto& c : cells) row.push_back(parse_element(c, labels));
    out.push_back(std::move(row));
  }
  return out;
}

std::vector<std::vector<Element>> bracket_table(const LieAlgebra& g) {
  std::vector<std::vector<Element>> out(g.dim());
  for (std::size_t i = 0; i < g.dim(); ++i)
    for (std::size_t j = 0; j < g.dim(); ++j) out[i].push_back(g.bracket(g.basis(i), g.basis(j)));
  return out;
}

std::vector<AdjointFixture> adjoint_fixtures() {
  const FixtureFile f = load_embedded("adjoint.fix");
  std::vector<AdjointFixture> out;
  for (std::size_t i = 1; i <= 7; ++i) {
    const auto& s = f.get("M" + std::to_string(i));
    AdjointFixture a{s.name, s.get("anchor"), i - 1, {}, {}};
    for (std::size_t j = 1; j <= 7; ++j) {
      std::vector<Expr> row;
      for (const auto& cell : split(s.get("r" + std::to_string(j)), ',')) row.push_back(parse(cell));
      if (row.size() != 7) throw Error(ErrorCode::InvalidArgument, "bad row length in [" + s.name + "]");
      a.rows.push_back(std::move(row));
    }
    for (const auto& flag : split(s.find("flags").value_or(""), ',')) {
      const auto rc = split(flag, ':');
      if (rc.size() != 2) throw Error(ErrorCode::InvalidArgument, "bad typo flag '" + flag + "'");
      a.flags.emplace(std::stoul(rc[0]) - 1, std::stoul(rc[1]) - 1);
    }
    out.push_back(std::move(a));
  }
  return out;
}

std::vector<OptimalFixture> optimal_fixtures() {
  const FixtureFile f = load_embedded("optimal.fix");
  std::vector<OptimalFixture> out;
  for (const auto& s : f.sections) {
    if (s.name.empty()) continue;
    OptimalFixture o{s.name, s.get("anchor"), s.get("element"), {}};
    for (const auto& axis : split(s.find("grid").value_or(""), ';')) {
      const auto eq = axis.find('=');
      if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "bad grid axis '" + axis + "'");
      std::vector<Rational> values;
      for (const auto& v : split(axis.substr(eq + 1), ',')) values.push_back(parse_rational(v));
      o.grid.emplace_back(trim(axis.substr(0, eq)), std::move(values));
    }
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<std::pair<std::string, Element>> expand_optimal(const OptimalFixture& f,
                                                            const std::vector<std::string>& labels) {
  const Expr element = parse(f.element);
  std::vector<std::pair<std::string, Element>> out;
  std::vector<std::size_t> at(f.grid.size(), 0);
  while (true) {
    Bindings b;
    std::string label = f.label;
    if (!f.grid.empty()) label += "[";
    for (std::size_t k = 0; k < f.grid.size(); ++k) {
      const Rational& v = f.grid[k].second[at[k]];
      b.emplace(Symbol::parameter(f.grid[k].first), Expr(v));
      label += (k ? "," : "") + f.grid[k].first + "=" + v.get_str();
    }
    if (!f.grid.empty()) label += "]";
    out.emplace_back(label, element_from_expr(substitute(element, b), labels));
    // Odometer over the grid, last axis fastest.
    std::size_t k = f.grid.size();
    while (k > 0) {
      --k;
      if (++at[k] < f.grid[k].second.size()) break;
      at[k] = 0;
      if (k == 0) return out;
    }
    if (f.grid.empty()) return out;
  }
}

std::vector<ActionFixture> action_fixtures() {
  const FixtureFile f = load_embedded("actions.fix");
  std::vector<ActionFixture> out;
  for (int i = 1; i <= 7; ++i) {
    const auto& s = f.get("G" + std::to_string(i));
    out.push_back({s.get("anchor"), generator_index(s.get("generator")),
                   make_action(s.name, s.get("x"), s.get("t"), s.get("u"))});
  }
  return out;
}

std::vector<PrintedImage> printed_images() {
  const FixtureFile f = load_embedded("actions.fix");
  std::vector<PrintedImage> out;
  for (int i = 1; i <= 7; ++i) {
    const auto& s = f.get("u" + std::to_string(i));
    out.push_back({s.name, s.get("anchor"), s.get("action"), s.get("u"), s.find("corrected"), s.get("fx"),
                   s.get("ft")});
  }
  return out;
}

SolutionCandidate instantiate_image(const PrintedImage& img, const std::string& form, const SolutionCandidate& f) {
  if (f.form != SolutionCandidate::Form::Explicit) {
    throw Error(ErrorCode::InvalidArgument, "image templates need an explicit u = f(x, t)");
  }
  const Expr moved = change_coordinates(f.expr, {parse(img.fx), parse(img.ft), std::nullopt});
  const Expr value = substitute(parse(form), {{Symbol::parameter("F"), moved}});
  SolutionCandidate out;
  out.params = f.params;
  out.label = img.label + "(" + f.label + ")";
  if (depends_on(value, u_symbol())) {
    out.form = SolutionCandidate::Form::Implicit;
    out.expr = normalize(Expr(u_symbol()) - value);
    out.guess = f.expr;
    out.continuation = "eps";
  } else {
    out.expr = value;
  }
  return out;
}

std::map<std::string, double> parse_params(const std::string& text) {
  std::map<std::string, double> out;
  for (const auto& item : split(text, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "bad parameter '" + item + "'");
    const std::string value = trim(item.substr(eq + 1));
    try {
      out[trim(item.substr(0, eq))] = std::stod(value);
    } catch (const std::exception&) {
      throw Error(ErrorCode::InvalidArgument, "parameter value '" + value + "' is not a number");
    }
  }
  return out;
}

std::vector<SolutionFixture> solution_fixtures() {
  const FixtureFile f = load_embedded("solutions.fix");
  std::vector<SolutionFixture> out;
  for (const auto& s : f.sections) {
    if (s.name.empty()) continue;
    SolutionFixture sf;
    sf.label = s.name;
    sf.anchor = s.get("anchor");
    sf.generator = s.get("generator");
    sf.text = s.get("solution");
    sf.candidate = parse_solution(sf.text);
    sf.candidate.label = s.name;
    sf.candidate.params = parse_params(s.find("params").value_or(""));
    sf.grid = parse_grid(s.get("grid"));
    sf.corrected = s.find("corrected");
    sf.baseline = s.name.rfind("base/", 0) == 0;
    out.push_back(std::move(sf));
  }
  return out;
}

std::vector<ReductionFixture> reduction_fixtures() {
  const FixtureFile f = load_embedded("reductions.fix");
  std::vector<ReductionFixture> out;
  for (const auto& s : f.sections) {
    if (s.name.empty()) continue;
    const std::string chart = s.get("chart");
    const auto eq = chart.find('=');
    if (eq == std::string::npos) throw Error(ErrorCode::InvalidArgument, "bad chart '" + chart + "'");
    ReductionFixture r;
    r.anchor = s.get("anchor");
    r.ansatz.generator = s.name;
    r.ansatz.y = parse(s.get("y"));
    r.ansatz.g = parse(s.get("g"));
    r.ansatz.chart.emplace(parse_symbol(trim(chart.substr(0, eq))), parse(chart.substr(eq + 1)));
    r.chart_text = chart;
    r.check = s.find("check");
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace liesym
