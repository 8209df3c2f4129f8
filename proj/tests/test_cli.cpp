#include "rcpkit/io.hpp"
#include "rcpkit/manifest.hpp"

#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

using namespace rcpkit;
namespace fs = std::filesystem;

namespace {

const fs::path root = fs::temp_directory_path() / "rcpkit_cli_test";

int run(const std::string& args) {
  const std::string cmd = std::string(RCPKIT_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

fs::path dir(const std::string& name) {
  const fs::path p = root / name;
  fs::remove_all(p);
  return p;
}

nlohmann::json manifest(const fs::path& d, const std::string& name = "manifest.json") {
  return nlohmann::json::parse(read_file((d / name).string()));
}

bool empty_or_missing(const fs::path& d) { return !fs::exists(d) || fs::is_empty(d); }

}  // namespace

TEST_CASE("gen writes the file and a manifest with its digest") {
  const fs::path d = dir("gen");
  REQUIRE(run("gen --what gaussian --M 4 --N 6 --seed 3 --out-dir " + d.string()) == 0);
  const nlohmann::json m = manifest(d);
  CHECK(m["subcommand"] == "gen");
  CHECK(m["digest_algorithm"] == "sha256");
  REQUIRE(m["outputs"].size() == 1);
  const std::string file = m["outputs"][0]["file"];
  CHECK(m["outputs"][0]["sha256"] == sha256_hex(read_file((d / file).string())));
  const Matrix phi = matrix_from_csv(read_file((d / file).string()));
  CHECK(phi.rows() == 4);
  CHECK(phi.cols() == 6);
}

TEST_CASE("runs are reproducible and independent of the thread count") {
  const std::string pushbroom = "pushbroom --N 64 --L 12 --M 32 --seed 9";
  const fs::path a = dir("push_a"), b = dir("push_b");
  REQUIRE(run(pushbroom + " --threads 1 --out-dir " + a.string()) == 0);
  REQUIRE(run(pushbroom + " --threads 3 --out-dir " + b.string()) == 0);
  const nlohmann::json ma = manifest(a, "run.json"), mb = manifest(b, "run.json");
  CHECK(ma["outputs"] == mb["outputs"]);
  CHECK(ma["outputs"].size() == 2);
  CHECK(read_file((a / "curves.csv").string()) == read_file((b / "curves.csv").string()));

  const std::string wishart = "wishart --M 32 --N 64 --supp 4 --trials 20 --seed 5";
  const fs::path c = dir("wish_a"), e = dir("wish_b");
  REQUIRE(run(wishart + " --threads 1 --out-dir " + c.string()) == 0);
  REQUIRE(run(wishart + " --threads 2 --out-dir " + e.string()) == 0);
  CHECK(manifest(c)["outputs"] == manifest(e)["outputs"]);

  const fs::path f = dir("rcp_a"), g = dir("rcp_b");
  REQUIRE(run("rcp --M 32 --N 64 --seed 2 --out-dir " + f.string()) == 0);
  REQUIRE(run("rcp --M 32 --N 64 --seed 2 --out-dir " + g.string()) == 0);
  CHECK(manifest(f)["outputs"] == manifest(g)["outputs"]);
}

TEST_CASE("invalid arguments exit 1 and write nothing") {
  const fs::path d = dir("invalid");
  CHECK(run("rip --K 0 --out-dir " + d.string()) == 1);
  CHECK(run("rip --no-such-flag --out-dir " + d.string()) == 1);
  CHECK(run("wishart --supp 200 --M 64 --N 128 --out-dir " + d.string()) == 1);
  CHECK(run("pushbroom --image /nonexistent.pgm --out-dir " + d.string()) == 1);
  CHECK(run("") == 1);
  CHECK(empty_or_missing(d));
}

TEST_CASE("numeric failure exits 2 and leaves no partial output") {
  const fs::path d = dir("numeric");
  fs::create_directories(root);
  // Identical columns make mu_X constant, so its correlation with mu_Y is undefined.
  const fs::path img = root / "flat.csv";
  {
    std::ofstream out(img);
    for (int r = 0; r < 16; ++r) out << "1,1,1,1\n";
  }
  CHECK(run("pushbroom --image " + img.string() + " --M 8 --basis none --out-dir " + d.string()) == 2);
  CHECK(empty_or_missing(d));
}
