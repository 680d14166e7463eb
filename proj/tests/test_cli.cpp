#include <doctest.h>

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rho/cli.hpp"

using nlohmann::json;

namespace {

struct CliResult {
  int code;
  std::string out, err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = rho::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_CASE("cohomology subcommand emits the su6 betti table") {
  auto r = run({"cohomology", "su6_su3su3", "--max-degree", "19", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  std::vector<int> nonzero;
  for (const auto& row : j["betti"])
    if (row["betti"].get<int>() != 0) nonzero.push_back(row["degree"].get<int>());
  CHECK(nonzero == std::vector<int>{0, 4, 6, 13, 15, 19});
}

TEST_CASE("rigidity subcommand reports the su6 witness") {
  auto r = run({"rigidity", "su6_su3su3", "--torus-dim", "2", "--rank", "6", "--mode",
                "model", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["rigidity"]["verdict"] == "not_rigid");
  REQUIRE(j["rigidity"]["witnesses"].size() >= 1);
  CHECK(j["rigidity"]["witnesses"][0]["degree"] == -2);
  // The witness element is the degree-6 class.
  CHECK(j["rigidity"]["witnesses"][0]["char_element"]["text"] == "h6_0");
}

TEST_CASE("catalog list is deterministic") {
  auto a = run({"catalog", "list"});
  auto b = run({"catalog", "list"});
  REQUIRE(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out.find("su6_su3su3") != std::string::npos);
  CHECK(a.out.find("yamaguchi14") != std::string::npos);
}

TEST_CASE("exit codes: usage 2, domain 1, success 0") {
  CHECK(run({"definitely-not-a-command"}).code == 2);
  CHECK(run({"cohomology"}).code == 2);                       // missing args
  CHECK(run({"cohomology", "no_such_model", "--max-degree", "4"}).code == 1);
  CHECK(run({"catalog", "list"}).code == 0);
}

TEST_CASE("morphism-check validates the Bazaikin isomorphism") {
  auto good = run({"morphism-check", "bazaikin:0", "bazaikin:2", "--assign",
                   "y9=y9 - 2 y5*x2^2", "--json"});
  REQUIRE(good.code == 0);
  CHECK(json::parse(good.out)["commutes"] == true);

  auto bad = run({"morphism-check", "bazaikin:0", "bazaikin:2", "--json"});
  REQUIRE(bad.code == 0);
  CHECK(json::parse(bad.out)["commutes"] == false);
}

TEST_CASE("cartan and lower-grading subcommands") {
  auto c = run({"cartan", "su2_u1", "--json"});
  REQUIRE(c.code == 0);
  json j = json::parse(c.out);
  CHECK(j["pure"] == true);

  auto lg = run({"lower-grading", "su2_u1", "--max-degree", "4", "--json"});
  REQUIRE(lg.code == 0);
  json j2 = json::parse(lg.out);
  CHECK(j2["lower_grading"]["table"][0]["dims"][0] == 1);
  CHECK(j2["lower_grading"]["table"][2]["dims"][0] == 1);
  CHECK(j2["lower_grading"]["table"][2]["dims"][1] == 0);
}

TEST_CASE("derivations and chain-derivations subcommands") {
  auto d = run({"derivations", "yamaguchi14", "--degree", "-8", "--json"});
  REQUIRE(d.code == 0);
  json j = json::parse(d.out);
  CHECK(j["spaces"][0]["dim"] == 1);

  auto cd = run({"chain-derivations", "su6_su3su3", "--degree", "-2", "--induced", "--json"});
  REQUIRE(cd.code == 0);
  json j2 = json::parse(cd.out);
  CHECK(j2["dim"] == 1);
  CHECK(j2["basis"][0]["assignments"].contains("y6"));
  CHECK(j2["induced"].size() == 1);
}

TEST_CASE("ring subcommand names the yamaguchi pairings") {
  auto r = run({"ring", "yamaguchi14", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["ring"]["top"] == 14);
  // Exactly three nonzero products among positive-degree classes.
  CHECK(j["ring"]["products"].size() == 3);
}

TEST_CASE("peel subcommand reads an automorphism file") {
  // The degree -2 derivation automorphism over the su6 ring, torus dim 2:
  // commutation ties the degree-15 block to the degree-6 one.
  std::string path = "/tmp/rho_cli_peel_test.auto";
  {
    std::ofstream f(path);
    f << "# derivation-built automorphism at x1*x2\n";
    f << "h6_0 = h6_0 + h4_0 x1 * x2\n";
    f << "h15_0 = h15_0 + 1/2 h13_0 x1*x2\n";
  }
  auto r = run({"peel", "su6_su3su3", "--torus-dim", "2", path, "--rank", "6", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  CHECK(j["peel"]["residual_identity"] == true);
  CHECK(j["char_fixed"] == false);
  // The x1*x2 step carries the derivation.
  bool found = false;
  for (const auto& s : j["peel"]["steps"]) {
    if (s["torus_monomial"] == "x1*x2" && !s["derivation"]["assignments"].empty())
      found = true;
  }
  CHECK(found);
}

TEST_CASE("model files load from disk") {
  std::string path = "/tmp/rho_cli_model_test.rho";
  {
    std::ofstream f(path);
    f << "model s3xs5 {\n  gen a : 3\n  gen b : 5\n  top 8\n}\n";
  }
  auto r = run({"cohomology", path, "--max-degree", "8", "--json"});
  REQUIRE(r.code == 0);
  json j = json::parse(r.out);
  int betti8 = j["betti"][8]["betti"].get<int>();
  CHECK(betti8 == 1);
}
