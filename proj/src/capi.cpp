#include "liesym/liesym.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "liesym/borninfeld.hpp"
#include "liesym/parser.hpp"
#include "liesym/report.hpp"

struct ls_expr {
  liesym::Expr value;
};

struct ls_pde {
  liesym::Pde value;
};

struct ls_algebra {
  liesym::LieAlgebra value;
};

namespace {

thread_local std::string last_error;

ls_status status_of(liesym::ErrorCode code) {
  switch (code) {
    case liesym::ErrorCode::Parse: return LS_ERR_PARSE;
    case liesym::ErrorCode::Domain: return LS_ERR_DOMAIN;
    case liesym::ErrorCode::UnboundSymbol: return LS_ERR_UNBOUND_SYMBOL;
    case liesym::ErrorCode::NotPolynomial: return LS_ERR_NOT_POLYNOMIAL;
    case liesym::ErrorCode::CyclicBinding: return LS_ERR_CYCLIC_BINDING;
    case liesym::ErrorCode::NotCertifiable: return LS_ERR_NOT_CERTIFIABLE;
    case liesym::ErrorCode::NotClosed: return LS_ERR_NOT_CLOSED;
    case liesym::ErrorCode::NotIdeal: return LS_ERR_NOT_IDEAL;
    case liesym::ErrorCode::NoComplement: return LS_ERR_NO_COMPLEMENT;
    case liesym::ErrorCode::SelfCheck: return LS_ERR_SELF_CHECK;
    case liesym::ErrorCode::InvalidArgument: return LS_ERR_INVALID_ARGUMENT;
    case liesym::ErrorCode::Io: return LS_ERR_IO;
  }
  return LS_ERR_INTERNAL;
}

template <class F>
ls_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return LS_OK;
  } catch (const liesym::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = e.what();
    return LS_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return LS_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return LS_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (!p) throw liesym::Error(liesym::ErrorCode::InvalidArgument, std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const liesym::Json& j, char** out) { *out = copy_string(j.dump(2) + "\n"); }

}  // namespace

extern "C" {

const char* ls_last_error(void) { return last_error.c_str(); }

const char* ls_status_name(ls_status status) {
  switch (status) {
    case LS_OK: return "ok";
    case LS_ERR_PARSE: return "parse error";
    case LS_ERR_DOMAIN: return "domain error";
    case LS_ERR_UNBOUND_SYMBOL: return "unbound symbol";
    case LS_ERR_NOT_POLYNOMIAL: return "not polynomial";
    case LS_ERR_CYCLIC_BINDING: return "cyclic binding";
    case LS_ERR_NOT_CERTIFIABLE: return "not certifiable";
    case LS_ERR_NOT_CLOSED: return "not closed";
    case LS_ERR_NOT_IDEAL: return "not an ideal";
    case LS_ERR_NO_COMPLEMENT: return "no complement";
    case LS_ERR_SELF_CHECK: return "self-check failed";
    case LS_ERR_INVALID_ARGUMENT: return "invalid argument";
    case LS_ERR_IO: return "i/o error";
    case LS_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void ls_string_free(char* s) { std::free(s); }

ls_status ls_expr_parse(const char* text, ls_expr** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new ls_expr{liesym::parse(text)};
  });
}

void ls_expr_free(ls_expr* e) { delete e; }

ls_status ls_expr_to_string(const ls_expr* e, char** out) {
  return guard([&] {
    require(e, "expr");
    require(out, "out");
    *out = copy_string(liesym::to_string(e->value));
  });
}

ls_status ls_expr_diff(const ls_expr* e, const char* symbol, ls_expr** out) {
  return guard([&] {
    require(e, "expr");
    require(symbol, "symbol");
    require(out, "out");
    *out = new ls_expr{liesym::differentiate(e->value, liesym::parse_symbol(symbol))};
  });
}

ls_status ls_expr_eval(const ls_expr* e, const char* bindings_json, double* out) {
  return guard([&] {
    require(e, "expr");
    require(out, "out");
    liesym::NumericBindings b;
    if (bindings_json) {
      const auto parsed = nlohmann::json::parse(bindings_json);
      for (const auto& [k, v] : parsed.items()) b[k] = v.get<double>();
    }
    *out = liesym::eval_numeric(e->value, b);
  });
}

int ls_expr_equal(const ls_expr* a, const ls_expr* b) {
  if (!a || !b) return 0;
  return liesym::equivalent(a->value, b->value) ? 1 : 0;
}

ls_status ls_pde_parse(const char* text, ls_pde** out) {
  return guard([&] {
    require(text, "text");
    require(out, "out");
    *out = new ls_pde{liesym::pde_from_text(text)};
  });
}

ls_status ls_pde_load(const char* path, ls_pde** out) {
  return guard([&] {
    require(path, "path");
    require(out, "out");
    *out = new ls_pde{liesym::load_pde(path)};
  });
}

ls_status ls_pde_born_infeld(ls_pde** out) {
  return guard([&] {
    require(out, "out");
    *out = new ls_pde{liesym::born_infeld_pde()};
  });
}

void ls_pde_free(ls_pde* p) { delete p; }

ls_status ls_pde_to_json(const ls_pde* p, char** out) {
  return guard([&] {
    require(p, "pde");
    require(out, "out");
    emit(liesym::Json::parse(liesym::pde_to_json(p->value)), out);
  });
}

ls_status ls_symmetries(const ls_pde* p, int ansatz_degree, const char* emit_kind, char** out_json) {
  return guard([&] {
    require(p, "pde");
    require(out_json, "out");
    const auto e = liesym::parse_emit(emit_kind ? emit_kind : "all");
    emit(liesym::symmetries_json(p->value, ansatz_degree, e), out_json);
  });
}

ls_status ls_verify_symmetry(const ls_pde* p, const char* xi1, const char* xi2, const char* eta, int* is_symmetry,
                             char** residual) {
  return guard([&] {
    require(p, "pde");
    require(xi1, "xi1");
    require(xi2, "xi2");
    require(eta, "eta");
    require(is_symmetry, "is_symmetry");
    const auto chk = liesym::verify_symmetry(liesym::make_field(xi1, xi2, eta), p->value);
    *is_symmetry = chk.exact_zero ? 1 : 0;
    if (residual) *residual = copy_string(liesym::to_string(chk.residual));
  });
}

ls_status ls_algebra_born_infeld(ls_algebra** out) {
  return guard([&] {
    require(out, "out");
    *out = new ls_algebra{liesym::born_infeld_algebra()};
  });
}

ls_status ls_algebra_from_fields(const char* fields_json, ls_algebra** out) {
  return guard([&] {
    require(fields_json, "fields_json");
    require(out, "out");
    std::vector<liesym::VectorField> fields;
    std::vector<std::string> labels;
    for (const auto& f : nlohmann::json::parse(fields_json)) {
      if (!f.is_array() || f.size() != 3) {
        throw liesym::Error(liesym::ErrorCode::InvalidArgument, "each field must be [xi1, xi2, eta]");
      }
      fields.push_back(liesym::make_field(f[0].get<std::string>(), f[1].get<std::string>(), f[2].get<std::string>()));
      labels.push_back("v" + std::to_string(fields.size()));
    }
    *out = new ls_algebra{liesym::structure_constants(fields, labels)};
  });
}

void ls_algebra_free(ls_algebra* g) { delete g; }

int ls_algebra_dim(const ls_algebra* g) { return g ? static_cast<int>(g->value.dim()) : 0; }

ls_status ls_bracket_table(const ls_algebra* g, char** out_json) {
  return guard([&] {
    require(g, "algebra");
    require(out_json, "out");
    emit(liesym::bracket_table_json(g->value), out_json);
  });
}

ls_status ls_algebra_structure(const ls_algebra* g, char** out_json) {
  return guard([&] {
    require(g, "algebra");
    require(out_json, "out");
    emit(liesym::algebra_structure_json(g->value), out_json);
  });
}

ls_status ls_adjoint(const ls_algebra* g, int generator, double epsilon, char** out_json) {
  return guard([&] {
    require(g, "algebra");
    require(out_json, "out");
    if (generator < 1 || generator > static_cast<int>(g->value.dim())) {
      throw liesym::Error(liesym::ErrorCode::InvalidArgument,
                          "generator must be in 1.." + std::to_string(g->value.dim()));
    }
    emit(liesym::adjoint_json(g->value, static_cast<std::size_t>(generator - 1), epsilon), out_json);
  });
}

ls_status ls_optimal_system(const ls_algebra* g, int vet, uint64_t seed, char** out_json) {
  return guard([&] {
    require(g, "algebra");
    require(out_json, "out");
    emit(liesym::optimal_system_json(g->value, vet != 0, seed), out_json);
  });
}

ls_status ls_verify_solution(const ls_pde* p, const char* solution, const char* params, const char* grid, double tol,
                             char** out_json) {
  return guard([&] {
    require(p, "pde");
    require(solution, "solution");
    require(grid, "grid");
    require(out_json, "out");
    auto s = liesym::parse_solution(solution);
    if (params) s.params = liesym::parse_params(params);
    emit(liesym::verify_solution_json(p->value, s, liesym::parse_grid(grid), tol), out_json);
  });
}

ls_status ls_reduce(const ls_pde* p, const char* generator, char** out_json) {
  return guard([&] {
    require(p, "pde");
    require(generator, "generator");
    require(out_json, "out");
    emit(liesym::reduce_json(p->value, generator), out_json);
  });
}

ls_status ls_reproduce_paper(uint64_t seed, char** out_json) {
  return guard([&] {
    require(out_json, "out");
    emit(liesym::report_json(liesym::reproduce_paper(seed)), out_json);
  });
}

ls_status ls_report_count(const char* report_json, const char* status, int* out) {
  return guard([&] {
    require(report_json, "report_json");
    require(status, "status");
    require(out, "out");
    int n = 0;
    for (const auto& c : nlohmann::json::parse(report_json))
      if (c.at("status").get<std::string>() == status) ++n;
    *out = n;
  });
}

}  // extern "C"
