#include "rcpkit/error.hpp"
#include "rcpkit/io.hpp"
#include "rcpkit/manifest.hpp"
#include "rcpkit/pushbroom.hpp"
#include "rcpkit/report.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <limits>
#include <sstream>

using namespace rcpkit;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("rcpkit_test_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("double formatting round-trips exactly") {
  for (double v : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::nextafter(1.0, 2.0)}) {
    CHECK(parse_double(format_double(v)) == v);
  }
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_optional(std::nullopt) == missing_value);
  CHECK(format_optional(2.0) == "2");
  CHECK_THROWS_AS(parse_double("1.5x"), Error);
  CHECK_THROWS_AS(parse_double(""), Error);
  CHECK_THROWS_AS(parse_double("1,5"), Error);
}

TEST_CASE("csv matrices") {
  Matrix m(2, 3);
  m << 1, 0.1, -3e-7, 4, 1.0 / 3.0, 6;
  const std::string text = matrix_to_csv(m);
  CHECK(lines(text).size() == 2);
  CHECK(matrix_from_csv(text) == m);
  CHECK(matrix_from_csv("1,2\r\n3,4\n") == (Matrix(2, 2) << 1, 2, 3, 4).finished());
  CHECK_THROWS_AS(matrix_from_csv("1,2\n3\n"), Error);
  CHECK_THROWS_AS(matrix_from_csv(""), Error);
  CHECK_THROWS_AS(matrix_from_csv("1,a\n"), Error);
}

TEST_CASE("pgm images") {
  const Matrix p2 = parse_pgm("P2\n# comment\n3 2\n255\n0 1 2\n3 4 255\n");
  CHECK(p2.rows() == 2);
  CHECK(p2.cols() == 3);
  CHECK(p2(1, 2) == 255);
  CHECK(p2(0, 1) == 1);

  std::string p5 = "P5 2 2 255\n";
  p5 += std::string{'\x00', '\x10', '\x7f', '\xff'};
  const Matrix m5 = parse_pgm(p5);
  CHECK(m5(0, 1) == 16);
  CHECK(m5(1, 1) == 255);

  std::string p16 = "P5\n1 1\n65535\n";
  p16 += std::string{'\x01', '\x02'};
  CHECK(parse_pgm(p16)(0, 0) == 258);

  CHECK_THROWS_AS(parse_pgm("P3\n1 1\n255\n0 0 0\n"), Error);
  CHECK_THROWS_AS(parse_pgm("P5 2 2 255\n\x01"), Error);
  CHECK_THROWS_AS(parse_pgm("P2 1 1 10\n11\n"), Error);
}

TEST_CASE("sha256 known vectors") {
  CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("output stage commits files and manifest together") {
  const fs::path dir = fresh_dir("stage");
  OutputStage stage(dir.string());
  stage.add("a.csv", "1,2\n");
  stage.add("b.json", "{}\n");
  CHECK_THROWS_AS(stage.add("../evil", "x"), Error);
  CHECK_FALSE(fs::exists(dir));

  RunManifest man;
  man.subcommand = "gen";
  man.seeds = {7};
  man.version = "test";
  man.extra["dims"] = {1, 2};
  const std::vector<std::string> written = stage.commit(man);
  CHECK(written.size() == 3);
  const nlohmann::json j = nlohmann::json::parse(read_file((dir / "manifest.json").string()));
  CHECK(j["subcommand"] == "gen");
  CHECK(j["digest_algorithm"] == "sha256");
  CHECK(j["dims"] == nlohmann::json({1, 2}));
  REQUIRE(j["outputs"].size() == 2);
  CHECK(j["outputs"][0]["file"] == "a.csv");
  CHECK(j["outputs"][0]["sha256"] == sha256_hex("1,2\n"));
  CHECK(read_file((dir / "b.json").string()) == "{}\n");
  for (const auto& e : fs::directory_iterator(dir)) CHECK(e.path().extension() != ".tmp");
  fs::remove_all(dir);
}

TEST_CASE("report serialization") {
  BoundInterval b;
  b.lower = -std::numeric_limits<double>::infinity();
  b.upper = 0.5;
  const nlohmann::json j = to_json(b);
  CHECK(j.dump().find("inf") == std::string::npos);

  RcpRow empty;
  empty.index = 3;
  const std::vector<std::string> rows = lines(rcp_table_csv({empty}));
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] ==
        "index,xi,cos_alpha,cos_beta,jl_lower,jl_upper,ip_lower,ip_upper,sandwich_holds,epsilon,delta_u,delta_v,"
        "delta_joint,jl_rigorous_lower,jl_rigorous_upper,support_mode");
  CHECK(rows[1].rfind("3,NA,NA,NA", 0) == 0);

  CurveSeries e{CurveLabel::energy_X, {1.0, 2.0, 3.0}};
  CurveSeries mu{CurveLabel::mu_X, {0.5, std::nullopt}};
  const std::vector<std::string> c = lines(curves_csv({e, mu}));
  REQUIRE(c.size() == 4);
  CHECK(c[0] == "column,energy_X,mu_X");
  CHECK(c[1] == "0,1,0.5");
  CHECK(c[2] == "1,2,NA");
  CHECK(c[3] == "2,3,NA");

  PassRateCell cell{256, 128, 16, 4, 3};
  const std::vector<std::string> p = lines(pass_rate_csv({cell}));
  CHECK(p[0] == "M,supp_size,pass_rate,N,tests,passes");
  CHECK(p[1] == "128,16,0.75,256,4,3");
}
