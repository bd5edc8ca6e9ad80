// Command-line front end. Talks to the engine only through the C API.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "liesym/liesym.h"

namespace {

using Json = nlohmann::ordered_json;

constexpr int kExitMismatch = 1;
constexpr int kExitUsage = 2;

struct Failure {
  int code;
  std::string message;
};

// Bad input (syntax, arguments, files, missing parameters) is a usage error; the rest are engine failures.
void check(ls_status st) {
  if (st == LS_OK) return;
  const bool usage =
      st == LS_ERR_PARSE || st == LS_ERR_INVALID_ARGUMENT || st == LS_ERR_IO || st == LS_ERR_UNBOUND_SYMBOL;
  throw Failure{usage ? kExitUsage : kExitMismatch, std::string(ls_status_name(st)) + ": " + ls_last_error()};
}

struct StringOut {
  char* p = nullptr;
  ~StringOut() { ls_string_free(p); }
  std::string str() const { return p ? p : ""; }
};

using PdePtr = std::unique_ptr<ls_pde, decltype(&ls_pde_free)>;
using AlgebraPtr = std::unique_ptr<ls_algebra, decltype(&ls_algebra_free)>;

PdePtr open_pde(const std::string& path) {
  ls_pde* p = nullptr;
  check(path.empty() ? ls_pde_born_infeld(&p) : ls_pde_load(path.c_str(), &p));
  return {p, &ls_pde_free};
}

AlgebraPtr born_infeld() {
  ls_algebra* g = nullptr;
  check(ls_algebra_born_infeld(&g));
  return {g, &ls_algebra_free};
}

std::string pad(const std::string& s, std::size_t w) { return s.size() >= w ? s : s + std::string(w - s.size(), ' '); }

std::string num(double v, int prec = 6) {
  std::ostringstream ss;
  ss << std::setprecision(prec) << v;
  return ss.str();
}

void print_grid(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> w(head.size(), 0);
  for (std::size_t c = 0; c < head.size(); ++c) {
    w[c] = head[c].size();
    for (const auto& r : rows) w[c] = std::max(w[c], r[c].size());
  }
  auto line = [&](const std::vector<std::string>& r) {
    std::string out;
    for (std::size_t c = 0; c < r.size(); ++c) out += (c ? "  " : "") + pad(r[c], w[c]);
    while (!out.empty() && out.back() == ' ') out.pop_back();
    std::cout << out << "\n";
  };
  line(head);
  for (const auto& r : rows) line(r);
}

std::string str(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void table_symmetries(const Json& j) {
  std::cout << "pde: " << str(j["pde"]) << " = 0\n"
            << "principal: " << str(j["principal"]) << "\n"
            << "ansatz degree: " << j["ansatz_degree"] << "\n"
            << "dimension: " << j["dimension"] << "\n";
  if (j.contains("determining")) {
    const auto& d = j["determining"];
    std::cout << "determining equations: " << d["raw_count"] << " raw, " << d["reduced_count"] << " reduced\n";
    for (const auto& e : d["reduced"]) std::cout << "  " << str(e) << " = 0\n";
  }
  if (j.contains("basis")) {
    int k = 0;
    for (const auto& f : j["basis"]) std::cout << "  X" << ++k << " = " << str(f["field"]) << "\n";
  }
}

void table_brackets(const Json& j) {
  std::vector<std::string> head{"[ , ]"};
  for (const auto& l : j["labels"]) head.push_back(str(l));
  std::vector<std::vector<std::string>> rows;
  for (std::size_t i = 0; i < j["table"].size(); ++i) {
    std::vector<std::string> r{str(j["labels"][i])};
    for (const auto& e : j["table"][i]) r.push_back(str(e));
    rows.push_back(std::move(r));
  }
  print_grid(head, rows);
  std::cout << "antisymmetric: " << j["antisymmetric"] << "\njacobi: " << j["jacobi"] << "\n";
  if (j.contains("fixture")) {
    const auto& f = j["fixture"];
    std::cout << "corrected fixture entries matching: " << f["corrected_entries_matching"] << "/" << f["entries"]
              << "\n";
    for (const auto& d : f["printed_deviations"])
      std::cout << "printed deviation " << str(d["entry"]) << ": printed " << str(d["printed"]) << ", computed "
                << str(d["computed"]) << "\n";
  }
}

std::string join(const Json& list) {
  std::string out;
  for (const auto& e : list) out += (out.empty() ? "" : ", ") + str(e);
  return "{" + out + "}";
}

void table_structure(const Json& j) {
  std::cout << "radical: " << join(j["radical_basis"]) << "\n";
  std::cout << "levi complement: " << (j["levi_basis"].is_null() ? "none" : join(j["levi_basis"])) << "\n";
  std::cout << "derived series dims:";
  for (const auto& s : j["derived_series"]) std::cout << " " << s["dim"];
  std::cout << "\nlower central series dims:";
  for (const auto& s : j["lower_central_series"]) std::cout << " " << s["dim"];
  std::cout << "\n";
  for (const auto& [k, v] : j["centralizers"].items()) std::cout << "centralizer " << k << ": " << join(v) << "\n";
  for (const auto& [k, v] : j["minimal_ideals"].items())
    std::cout << "minimal ideal containing " << k << ": " << join(v) << "\n";
  if (j.contains("levi_killing")) {
    std::cout << "killing form of the levi factor:";
    for (const auto& r : j["levi_killing"]) std::cout << " " << join(r);
    std::cout << "\n";
  }
  if (!j["quotient"].is_null()) {
    std::cout << "quotient on " << join(j["quotient"]["representatives"]) << ":\n";
    std::vector<std::string> head{"[ , ]"};
    for (const auto& l : j["quotient"]["labels"]) head.push_back(str(l));
    std::vector<std::vector<std::string>> rows;
    for (std::size_t i = 0; i < j["quotient"]["table"].size(); ++i) {
      std::vector<std::string> r{str(j["quotient"]["labels"][i])};
      for (const auto& e : j["quotient"]["table"][i]) r.push_back(str(e));
      rows.push_back(std::move(r));
    }
    print_grid(head, rows);
  }
  std::cout << "solvable: " << j["solvable"] << "\nsemisimple: " << j["semisimple"] << "\n";
}

void table_adjoint(const Json& j) {
  std::cout << "Ad(exp(" << num(j["epsilon"].get<double>()) << " " << str(j["generator"]) << "))"
            << (j["exact"].get<bool>() ? " (exact)" : "") << ", row k = image of v_k\n";
  for (const auto& row : j["matrix"]) {
    std::string line;
    for (const auto& v : row) {
      std::ostringstream ss;
      ss << std::fixed << std::setprecision(6) << std::setw(11) << (v.get<double>() == 0.0 ? 0.0 : v.get<double>());
      line += ss.str();
    }
    std::cout << line << "\n";
  }
}

void table_optimal(const Json& j) {
  std::vector<std::vector<std::string>> rows;
  const bool vet = j.contains("max_drift");
  for (const auto& r : j["records"]) {
    std::vector<std::string> row{str(r["label"]), str(r["element"]), str(r["killing"]), r["ad_rank"].dump()};
    if (vet) row.push_back(num(r["max_drift"].get<double>(), 3));
    rows.push_back(std::move(row));
  }
  std::vector<std::string> head{"label", "element", "killing", "ad_rank"};
  if (vet) head.push_back("max_drift");
  print_grid(head, rows);
  if (vet)
    std::cout << "seed " << j["seed"] << ", max drift " << num(j["max_drift"].get<double>(), 3)
              << (j["stable"].get<bool>() ? " (stable)" : " (UNSTABLE)") << "\n";
}

void table_solution(const Json& j) {
  const auto& r = j["residual"];
  std::cout << "solution: " << str(j["solution"]) << " (" << str(j["form"]) << ")\n"
            << "points: " << r["points"] << ", rejected: " << r["rejected"]
            << ", newton failures: " << r["newton_failures"] << "\n"
            << "max |residual|: " << num(r["max_abs"].get<double>(), 3) << " (tol "
            << num(j["tolerance"].get<double>(), 3) << ")\n"
            << (j["pass"].get<bool>() ? "PASS" : "FAIL") << "\n";
}

void table_reduce(const Json& j) {
  std::cout << "generator: " << str(j["generator"]) << "\n"
            << "y = " << str(j["y"]) << ", u = " << str(j["u"]) << ", chart " << str(j["chart"]) << "\n"
            << "reduced equation: " << str(j["ode"]) << " = 0\n"
            << "prefactor: " << str(j["prefactor"]) << "\n";
  if (j.contains("check"))
    std::cout << "v = " << str(j["check"]["v"]) << " gives " << str(j["check"]["substituted"]) << "\n";
}

void add_format(CLI::App* sub, std::string& format) {
  sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "table"}))->capture_default_str();
}

void output(const std::string& json_text, const std::string& format, void (*table)(const Json&)) {
  if (format == "json") {
    std::cout << json_text;
  } else {
    table(Json::parse(json_text));
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lie point symmetries of the Born-Infeld equation", "liesym"};
  app.require_subcommand(1);

  std::string pde_path;
  std::string format = "json";

  auto* sym = app.add_subcommand("symmetries", "Determining system and symmetry basis from a polynomial ansatz");
  int degree = 2;
  std::string emit = "all";
  sym->add_option("--pde", pde_path, "PDE file (key/value or JSON); default: Born-Infeld");
  sym->add_option("--ansatz-degree", degree, "Total degree of the polynomial ansatz")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  sym->add_option("--emit", emit, "What to print")
      ->check(CLI::IsMember({"determining", "basis", "all"}))
      ->capture_default_str();
  add_format(sym, format);

  auto* brackets = app.add_subcommand("bracket-table", "Commutator table of the symmetry algebra");
  add_format(brackets, format);

  auto* structure = app.add_subcommand("algebra-structure", "Radical, Levi complement, quotient, centralizers");
  add_format(structure, format);

  auto* adjoint = app.add_subcommand("adjoint", "Matrix of Ad(exp(eps v_i)) in the basis v1..v7");
  int generator = 0;
  double epsilon = 0.0;
  adjoint->add_option("--generator", generator, "Generator index 1..7")->required()->check(CLI::Range(1, 7));
  adjoint->add_option("--epsilon", epsilon, "Group parameter")->capture_default_str();
  add_format(adjoint, format);

  auto* optimal = app.add_subcommand("optimal-system", "Orbit invariants of the optimal-system representatives");
  bool vet = false;
  std::uint64_t seed = 1;
  optimal->add_flag("--vet", vet, "Check invariants under random adjoint compositions");
  optimal->add_option("--seed", seed, "Seed for the compositions")->capture_default_str();
  add_format(optimal, format);

  auto* verify = app.add_subcommand("verify-solution", "PDE residual of a candidate solution on a grid");
  std::string solution;
  std::string params;
  std::string grid = "x=-0.5:0.5:41,t=1.2:2:41";
  double tol = 1e-8;
  bool strict = false;
  verify->add_option("--pde", pde_path, "PDE file; default: Born-Infeld");
  verify->add_option("--solution", solution, "Expression f(x,t) for u = f, or implicit:F(x,t,u) for F = 0")->required();
  verify->add_option("--param", params, "Parameter values, e.g. c1=0.4,c2=1.3");
  verify->add_option("--grid", grid, "Sampling grid")->capture_default_str();
  verify->add_option("--tol", tol, "Residual tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  verify->add_flag("--strict", strict, "Exit 1 when the residual exceeds the tolerance");
  add_format(verify, format);

  auto* red = app.add_subcommand("reduce", "Similarity reduction to an ODE");
  std::string gen_label;
  red->add_option("--pde", pde_path, "PDE file; default: Born-Infeld");
  red->add_option("--generator", gen_label, "Generator label: v1, v2, v4, v5, v6, v7")->required();
  add_format(red, format);

  auto* repro = app.add_subcommand("reproduce-paper", "Run every fixture check and write the claim report");
  std::string out_path;
  std::uint64_t repro_seed = 1;
  bool repro_strict = false;
  repro->add_option("--out", out_path, "Report file; default: standard output");
  repro->add_option("--seed", repro_seed, "Seed for the optimal-system vetting")->capture_default_str();
  repro->add_flag("--strict", repro_strict, "Exit 1 when any claim is a mismatch");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    StringOut out;
    if (sym->parsed()) {
      auto p = open_pde(pde_path);
      check(ls_symmetries(p.get(), degree, emit.c_str(), &out.p));
      output(out.str(), format, table_symmetries);
    } else if (brackets->parsed()) {
      check(ls_bracket_table(born_infeld().get(), &out.p));
      output(out.str(), format, table_brackets);
    } else if (structure->parsed()) {
      check(ls_algebra_structure(born_infeld().get(), &out.p));
      output(out.str(), format, table_structure);
    } else if (adjoint->parsed()) {
      check(ls_adjoint(born_infeld().get(), generator, epsilon, &out.p));
      output(out.str(), format, table_adjoint);
    } else if (optimal->parsed()) {
      check(ls_optimal_system(born_infeld().get(), vet ? 1 : 0, seed, &out.p));
      output(out.str(), format, table_optimal);
    } else if (verify->parsed()) {
      auto p = open_pde(pde_path);
      check(ls_verify_solution(p.get(), solution.c_str(), params.empty() ? nullptr : params.c_str(), grid.c_str(),
                               tol, &out.p));
      output(out.str(), format, table_solution);
      if (strict && !Json::parse(out.str())["pass"].get<bool>()) return kExitMismatch;
    } else if (red->parsed()) {
      auto p = open_pde(pde_path);
      check(ls_reduce(p.get(), gen_label.c_str(), &out.p));
      output(out.str(), format, table_reduce);
    } else if (repro->parsed()) {
      check(ls_reproduce_paper(repro_seed, &out.p));
      const std::string report = out.str();
      if (out_path.empty()) {
        std::cout << report;
      } else {
        std::ofstream f(out_path, std::ios::binary);
        if (!f || !(f << report)) throw Failure{kExitUsage, "cannot write " + out_path};
      }
      int total = 0;
      std::cerr << "claims:";
      for (const char* status : {"match", "match-after-typo-correction", "mismatch", "out-of-scope"}) {
        int n = 0;
        check(ls_report_count(report.c_str(), status, &n));
        total += n;
        std::cerr << " " << status << "=" << n;
      }
      std::cerr << " total=" << total << "\n";
      int mismatches = 0;
      check(ls_report_count(report.c_str(), "mismatch", &mismatches));
      if (repro_strict && mismatches > 0) return kExitMismatch;
    }
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  }
  return 0;
}
