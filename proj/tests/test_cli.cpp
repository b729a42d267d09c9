#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "omegalab/artifacts.hpp"
#include "support.hpp"

using namespace omegalab;
namespace fs = std::filesystem;

namespace {

fs::path workdir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("omegalab_cli_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

int cli(const std::string& args, const std::string& stdout_file = "/dev/null") {
  const std::string cmd = "cd '" + workdir().string() + "' && '" OMEGALAB_CLI "' " + args + " > " +
                          stdout_file + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Json json_file(const std::string& name) { return Json::parse(slurp(workdir() / name)); }

}  // namespace

TEST_CASE("log write and replay") {
  const Enumeration& run = testing_support::run_at(10);
  const std::string text = log_text(run, Provenance{"default", "cmd"});
  std::istringstream in(text);
  const LoadedLog back = read_log(in, Machine(default_registry()));
  CHECK(back.run.events().size() == run.events().size());
  CHECK(back.run.budget() == run.budget());
  CHECK(back.run.exhaustive());
  CHECK(back.provenance.command == "cmd");
  CHECK(log_text(back.run, back.provenance) == text);

  std::istringstream wrong(text);
  CHECK_THROWS_AS(read_log(wrong, Machine(registry_preset("bare"))), MalformedLog);

  std::istringstream truncated(text.substr(0, text.size() / 2));
  CHECK_THROWS_AS(read_log(truncated), MalformedLog);
  std::istringstream garbage("not json\n");
  CHECK_THROWS_AS(read_log(garbage), MalformedLog);
}

TEST_CASE("enumerate") {
  REQUIRE(cli("enumerate --max-len 14 --out run.jsonl", "summary.txt") == 0);
  CHECK(slurp(workdir() / "summary.txt").find("exhaustive: true") != std::string::npos);
  const std::string first = slurp(workdir() / "run.jsonl");
  REQUIRE(cli("enumerate --max-len 14 --out run2.jsonl --workers 3") == 0);
  const std::string second = slurp(workdir() / "run2.jsonl");
  CHECK(second.substr(second.find('\n')) == first.substr(first.find('\n')));
  REQUIRE(cli("enumerate --max-len 14 --out run.jsonl") == 0);
  CHECK(slurp(workdir() / "run.jsonl") == first);

  CHECK(cli("enumerate --max-len 0 --out x.jsonl") == 2);
  CHECK(cli("enumerate --out x.jsonl") == 2);
  CHECK(cli("enumerate --max-len 4 --registry nope --out x.jsonl") == 2);
  CHECK(cli("enumerate --max-len 4 --out /nonexistent/dir/x.jsonl") == 1);
  CHECK(cli("frobnicate") == 2);
}

TEST_CASE("measure") {
  REQUIRE(cli("enumerate --max-len 14 --out run.jsonl") == 0);
  REQUIRE(cli("measure --quantity cs --log run.jsonl --out cs.json") == 0);
  Json j = json_file("cs.json");
  CHECK(j["quantity"] == "cs");
  CHECK(j["exact"] == true);
  CHECK(j["lo"] == j["hi"]);
  CHECK(j["machine"] == Machine(default_registry()).digest());
  CHECK(j["budget"]["max_len"] == 14);

  REQUIRE(cli("measure --quantity omega --log run.jsonl --out omega.json") == 0);
  CHECK(json_file("omega.json")["lo"] == "0.826171875");  // 423/512

  REQUIRE(cli("measure --quantity cst --T 2/3 --prec 64 --out cst.json") == 0);
  j = json_file("cst.json");
  CHECK(j["exact"] == false);
  CHECK(j["T"] == "2/3");
  CHECK(j["divergent_family"] == false);

  REQUIRE(cli("measure --quantity csbt --T 3/2 --log run.jsonl --out csbt.json") == 0);
  j = json_file("csbt.json");
  CHECK(j["divergent_family"] == true);
  CHECK(j.contains("note"));

  CHECK(cli("measure --quantity nope --log run.jsonl") == 2);
  CHECK(cli("measure --quantity cst --T 0 --log run.jsonl") == 2);
  CHECK(cli("measure --quantity cs --log missing.jsonl") == 1);
  {
    std::ofstream bad(workdir() / "bad.jsonl");
    bad << "{\"kind\":\"header\"}\n";
  }
  CHECK(cli("measure --quantity cs --log bad.jsonl") == 1);
}

TEST_CASE("census, extract, fixedpoint") {
  REQUIRE(cli("enumerate --max-len 14 --out run.jsonl") == 0);
  REQUIRE(cli("census --T 1 --log run.jsonl --out census.csv --members members.jsonl") == 0);
  const std::string csv = slurp(workdir() / "census.csv");
  CHECK(csv.rfind("# machine=", 0) == 0);
  CHECK(csv.find("\nn,count,two_pow_n,gap,h_upper_n\n") != std::string::npos);
  CHECK(csv.find("\n9,1,512,9.000000,") != std::string::npos);
  CHECK(slurp(workdir() / "members.jsonl").find("\"n\":9") != std::string::npos);

  REQUIRE(cli("extract --n 24 --T 1/2 --mode cs --log run.jsonl --out extract.json") == 0);
  Json j = json_file("extract.json");
  CHECK(j["value"] == "000000000001");
  CHECK(j["verified_incompressible"] == true);
  CHECK(cli("extract --n 24 --T 2 --log run.jsonl") == 2);

  REQUIRE(cli("fixedpoint --T 1/2 --t 3/4 --nmax 24 --log run.jsonl --out fp.json") == 0);
  j = json_file("fp.json");
  CHECK(j["constants"]["c_lower"] == 16);
  CHECK(j["constants"]["n0"] == 3);
  CHECK(j["checks"]["upper_gap"] == true);
  CHECK(j["checks"]["lower_gap"] == true);
  CHECK(j["checks"]["floor_sandwich"] == true);
  CHECK(j["roundtrip"]["exact"] == 24);
  CHECK(j["roundtrip"]["tail_certified"] == 24);
  CHECK(cli("fixedpoint --T 3/4 --t 1/2 --log run.jsonl") == 2);
}
