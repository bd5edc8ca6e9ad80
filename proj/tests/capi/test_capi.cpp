#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "liesym/liesym.h"

using Json = nlohmann::json;

namespace {

// Takes ownership of a returned string.
std::string take(char* s) {
  REQUIRE(s != nullptr);
  std::string out(s);
  ls_string_free(s);
  return out;
}

}  // namespace

TEST_CASE("expressions") {
  ls_expr* e = nullptr;
  REQUIRE(ls_expr_parse("(x+u)^2 - x^2", &e) == LS_OK);
  char* text = nullptr;
  REQUIRE(ls_expr_to_string(e, &text) == LS_OK);
  CHECK(take(text) == "2*x*u + u^2");
  ls_expr* d = nullptr;
  REQUIRE(ls_expr_diff(e, "u", &d) == LS_OK);
  double v = 0;
  REQUIRE(ls_expr_eval(d, R"({"x": 1.5, "u": 2})", &v) == LS_OK);
  CHECK(v == doctest::Approx(7.0));
  ls_expr* same = nullptr;
  REQUIRE(ls_expr_parse("u*(2*x + u)", &same) == LS_OK);
  CHECK(ls_expr_equal(e, same) == 1);
  CHECK(ls_expr_equal(e, d) == 0);
  ls_expr_free(e);
  ls_expr_free(d);
  ls_expr_free(same);
}

TEST_CASE("errors carry a status and a message") {
  ls_expr* e = nullptr;
  CHECK(ls_expr_parse("(x", &e) == LS_ERR_PARSE);
  CHECK(e == nullptr);
  CHECK(std::string(ls_last_error()).find("position") != std::string::npos);
  CHECK(ls_expr_parse(nullptr, &e) == LS_ERR_INVALID_ARGUMENT);
  REQUIRE(ls_expr_parse("1/x", &e) == LS_OK);
  double v = 0;
  CHECK(ls_expr_eval(e, R"({"x": 0})", &v) == LS_ERR_DOMAIN);
  CHECK(ls_expr_eval(e, "{}", &v) == LS_ERR_UNBOUND_SYMBOL);
  CHECK(ls_expr_eval(e, "not json", &v) == LS_ERR_INVALID_ARGUMENT);
  CHECK(ls_expr_eval(e, R"({"x": 4})", &v) == LS_OK);
  CHECK(std::string(ls_last_error()).empty());
  ls_expr_free(e);
  CHECK(std::string(ls_status_name(LS_ERR_NOT_CERTIFIABLE)) == "not certifiable");
  ls_pde* p = nullptr;
  CHECK(ls_pde_parse("lhs = \"u_tt*u_tt - u_xx\"\nprincipal = \"u_tt\"\n", &p) == LS_ERR_NOT_CERTIFIABLE);
  CHECK(ls_pde_load("/nonexistent/file.pde", &p) == LS_ERR_IO);
  ls_string_free(nullptr);
  ls_expr_free(nullptr);
}

TEST_CASE("pde and symmetries") {
  ls_pde* p = nullptr;
  REQUIRE(ls_pde_born_infeld(&p) == LS_OK);
  char* out = nullptr;
  REQUIRE(ls_pde_to_json(p, &out) == LS_OK);
  const Json pde = Json::parse(take(out));
  CHECK(pde["principal"] == "u_tt");
  CHECK(pde["clearing_power"] == 1);

  REQUIRE(ls_symmetries(p, 1, "basis", &out) == LS_OK);
  const Json sym = Json::parse(take(out));
  CHECK(sym["dimension"] == 7);
  CHECK(sym["basis"].size() == 7);
  CHECK_FALSE(sym.contains("determining"));
  CHECK(ls_symmetries(p, 1, "everything", &out) == LS_ERR_INVALID_ARGUMENT);

  int is_sym = -1;
  REQUIRE(ls_verify_symmetry(p, "0", "u", "t", &is_sym, nullptr) == LS_OK);
  CHECK(is_sym == 1);
  char* residual = nullptr;
  REQUIRE(ls_verify_symmetry(p, "0", "0", "u", &is_sym, &residual) == LS_OK);
  CHECK(is_sym == 0);
  CHECK(take(residual) != "0");
  ls_pde_free(p);
}

TEST_CASE("algebra") {
  ls_algebra* g = nullptr;
  REQUIRE(ls_algebra_born_infeld(&g) == LS_OK);
  CHECK(ls_algebra_dim(g) == 7);
  char* out = nullptr;
  REQUIRE(ls_bracket_table(g, &out) == LS_OK);
  const Json table = Json::parse(take(out));
  CHECK(table["table"][0][3] == "v2");
  CHECK(table["fixture"]["corrected_entries_matching"] == 49);
  REQUIRE(ls_algebra_structure(g, &out) == LS_OK);
  const Json st = Json::parse(take(out));
  CHECK(st["radical_basis"] == Json::array({"v1", "v2", "v3", "v7"}));
  CHECK(st["levi_basis"] == Json::array({"v4", "v5", "v6"}));
  REQUIRE(ls_adjoint(g, 7, 0.0, &out) == LS_OK);
  const Json adj = Json::parse(take(out));
  for (int r = 0; r < 7; ++r)
    for (int c = 0; c < 7; ++c) CHECK(adj["matrix"][r][c].get<double>() == (r == c ? 1.0 : 0.0));
  CHECK(ls_adjoint(g, 0, 0.1, &out) == LS_ERR_INVALID_ARGUMENT);
  REQUIRE(ls_optimal_system(g, 0, 1, &out) == LS_OK);
  CHECK(Json::parse(take(out))["records"].size() == 152);
  ls_algebra_free(g);

  ls_algebra* sl2 = nullptr;
  REQUIRE(ls_algebra_from_fields(R"([["t","x","0"],["-u","0","x"],["0","u","t"]])", &sl2) == LS_OK);
  CHECK(ls_algebra_dim(sl2) == 3);
  REQUIRE(ls_algebra_structure(sl2, &out) == LS_OK);
  CHECK(Json::parse(take(out))["semisimple"] == true);
  ls_algebra_free(sl2);
  CHECK(ls_algebra_from_fields(R"([["1","0","0"],["x","0","0"],["x^2","0","0"],["x^3","0","0"]])", &sl2) ==
        LS_ERR_NOT_CLOSED);
  CHECK(ls_algebra_from_fields(R"([["1","0"]])", &sl2) == LS_ERR_INVALID_ARGUMENT);
}

TEST_CASE("solutions and reductions") {
  ls_pde* p = nullptr;
  REQUIRE(ls_pde_born_infeld(&p) == LS_OK);
  char* out = nullptr;
  REQUIRE(ls_verify_solution(p, "sqrt(t^2 - x^2)", nullptr, "x=-0.5:0.5:41,t=1.2:2:41", 1e-9, &out) == LS_OK);
  const Json sol = Json::parse(take(out));
  CHECK(sol["pass"] == true);
  CHECK(sol["residual"]["points"] == 1681);
  REQUIRE(ls_verify_solution(p, "c1*x^2", "c1=1", "x=-0.5:0.5:5,t=1.2:2:5", 1e-9, &out) == LS_OK);
  CHECK(Json::parse(take(out))["pass"] == false);
  CHECK(ls_verify_solution(p, "c1*x", nullptr, "x=-0.5:0.5:5,t=1.2:2:5", 1e-9, &out) == LS_ERR_UNBOUND_SYMBOL);
  CHECK(ls_verify_solution(p, "x", nullptr, "x=0:1", 1e-9, &out) == LS_ERR_PARSE);
  REQUIRE(ls_reduce(p, "v7", &out) == LS_OK);
  const Json red = Json::parse(take(out));
  CHECK(red["check"]["zero"] == true);
  CHECK(ls_reduce(p, "v3", &out) == LS_ERR_INVALID_ARGUMENT);
  ls_pde_free(p);
}

TEST_CASE("report counting") {
  int n = -1;
  const char* report = R"([{"claim_id":"a","status":"match"},{"claim_id":"b","status":"mismatch"},
                           {"claim_id":"c","status":"match"}])";
  REQUIRE(ls_report_count(report, "match", &n) == LS_OK);
  CHECK(n == 2);
  CHECK(ls_report_count("[{}]", "match", &n) == LS_ERR_INVALID_ARGUMENT);
}
