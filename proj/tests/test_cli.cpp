#include <catch_amalgamated.hpp>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "l1gv/bounds.hpp"
#include "l1gv/entropy.hpp"

using namespace l1gv;
using json = nlohmann::json;

namespace {

struct CmdResult {
  int exit_code;
  std::string out;
};

CmdResult run_cmd(const std::string& args) {
  std::string cmd = std::string(GVBOUNDS_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf{};
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  int status = pclose(p);
  return {WEXITSTATUS(status), out};
}

struct CsvRow {
  std::string space, params, bound;
  double delta, rate;
  std::string aux;
};

std::vector<CsvRow> parse_csv(const std::string& text) {
  std::vector<CsvRow> rows;
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);
  REQUIRE(line == "space,params,bound,delta,rate,aux");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> f;
    std::string cur;
    for (char c : line) {
      if (c == ',') {
        f.push_back(cur);
        cur.clear();
      } else
        cur += c;
    }
    f.push_back(cur);
    REQUIRE(f.size() == 6);
    rows.push_back({f[0], f[1], f[2], std::stod(f[3]), std::stod(f[4]), f[5]});
  }
  return rows;
}

}  // namespace

TEST_CASE("identical invocations produce byte-identical CSV") {
  auto a = run_cmd("curve --preset fig3");
  auto b = run_cmd("curve --preset fig3");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());
}

TEST_CASE("CSV rows round-trip through the library to 1e-12") {
  auto res = run_cmd("curve --space hypercube --q 4 --bounds gv,gvmr,lee --delta 0:1.3:0.05");
  REQUIRE(res.exit_code == 0);
  auto rows = parse_csv(res.out);
  REQUIRE(!rows.empty());
  SpaceFamily h4 = make_family(SpaceKind::Hypercube, 0, 0, 4);
  for (const auto& r : rows) {
    REQUIRE(r.space == "hypercube");
    REQUIRE(r.params == "q=4");
    double expect = 0;
    if (r.bound == "gv")
      expect = gv_rate(h4, r.delta);
    else if (r.bound == "gvmr")
      expect = gvmr_rate(h4, r.delta).rate;
    else
      expect = comparison_rate(BoundKind::Lee, h4, r.delta);
    CHECK(std::fabs(expect - r.rate) < 1e-12);
  }
}

TEST_CASE("round-trip for the optimized-rho figure") {
  auto res = run_cmd("curve --space pos-simplex --opt-rho --bounds gv,gvmr,kk --delta 0:0.6:0.02");
  REQUIRE(res.exit_code == 0);
  auto rows = parse_csv(res.out);
  SpaceFamily pos = make_family(SpaceKind::PosSimplex, 0.5);
  int checked = 0;
  for (const auto& r : rows) {
    REQUIRE(r.params == "rho=opt");
    double expect = 0;
    if (r.bound == "gv")
      expect = gv_rate_optimized_rho(pos, r.delta).rate;
    else if (r.bound == "gvmr")
      expect = gvmr_rate_optimized_rho(pos, r.delta).rate;
    else
      expect = comparison_rate(BoundKind::KolesnikKrachkovsky, pos, r.delta);
    CHECK(std::fabs(expect - r.rate) < 1e-12);
    ++checked;
    if (r.delta == 0) CHECK(r.rate == Catch::Approx(1.0).margin(1e-9));
  }
  CHECK(checked > 60);
}

TEST_CASE("exit codes: 0 ok, 1 bad arguments, 2 numerical failure") {
  CHECK(run_cmd("curve --preset fig1 --out /dev/null").exit_code == 0);
  CHECK(run_cmd("curve --space no-such-space --delta 0:1:0.1").exit_code == 1);
  CHECK(run_cmd("curve --space std-simplex --rho 2 --delta 0:1:-1").exit_code == 1);
  CHECK(run_cmd("nonsense-subcommand").exit_code == 1);
  // every requested point lies outside the KK domain: no successful samples
  CHECK(run_cmd("curve --space pos-simplex --rho 0.5 --bounds kk --delta 0.6:0.9:0.1").exit_code ==
        2);
}

TEST_CASE("validate reports clean oracle agreement") {
  auto std5 = run_cmd("validate --space std-simplex --n-max 5");
  CHECK(std5.exit_code == 0);
  CHECK(std5.out.find("PASS") != std::string::npos);
  CHECK(std5.out.find("MISMATCH") == std::string::npos);

  auto h3 = run_cmd("validate --space hypercube --q 3 --n-max 4");
  CHECK(h3.exit_code == 0);
  CHECK(h3.out.find("PASS") != std::string::npos);

  auto inv = run_cmd("validate --space inv-simplex --n-max 5");
  CHECK(inv.exit_code == 0);
  CHECK(inv.out.find("inv-vs-pos") != std::string::npos);

  auto zeros = run_cmd("validate --space std-simplex --tau 0.5 --n-max 4 --format json");
  CHECK(zeros.exit_code == 0);
  auto j = json::parse(zeros.out);
  CHECK(j["mismatches"] == 0);
}

TEST_CASE("critical queries emit stable JSON") {
  auto res = run_cmd("critical --space std-simplex --rho 2 --delta 1");
  REQUIRE(res.exit_code == 0);
  auto j = json::parse(res.out);
  CHECK(j["source"] == "closed_form");
  CHECK(j["point"]["x"].get<double>() == Catch::Approx(0.4472135954999579).margin(1e-9));
  CHECK(j["point"]["y"].get<double>() == Catch::Approx(0.4944271909999159).margin(1e-9));
  double xz = j["point"]["x"].get<double>() * j["point"]["z"].get<double>();
  CHECK(xz == Catch::Approx(0.2360679774997897).margin(1e-9));
  CHECK(j["residual_H"].get<double>() < 1e-9);
  CHECK(j["residual_prop"].get<double>() < 1e-9);
  CHECK(j["agreement"].get<double>() < 1e-8);

  auto h2 = run_cmd("critical --space hypercube --q 2 --delta 0.25");
  REQUIRE(h2.exit_code == 0);
  auto j2 = json::parse(h2.out);
  CHECK(j2["point"]["y"].get<double>() == Catch::Approx(1.0 / 3).margin(1e-12));

  auto z0 = run_cmd("critical --space std-simplex --rho 2 --delta 0");
  REQUIRE(z0.exit_code == 0);
  auto j0 = json::parse(z0.out);
  CHECK(j0["rate"].get<double>() ==
        Catch::Approx(capacity(make_family(SpaceKind::StdSimplex, 2))).margin(1e-12));
  CHECK(j0["point"].empty());
}

TEST_CASE("fig1 dataset hits the GV zero at delta 1.5") {
  auto res = run_cmd("curve --preset fig1");
  REQUIRE(res.exit_code == 0);
  auto rows = parse_csv(res.out);
  bool found = false;
  for (const auto& r : rows)
    if (r.bound == "gv" && std::fabs(r.delta - 1.5) < 1e-12) {
      CHECK(std::fabs(r.rate) <= 1e-9);
      found = true;
    }
  CHECK(found);
}
