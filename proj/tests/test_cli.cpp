#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <hpdf/io.hpp>

// End-to-end checks of the command-line tool: exit codes, JSON output and the
// documented file formats.  The binary path comes from the build system.

namespace {

struct CliResult {
  int status = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(HPDF_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult res;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf;
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), n);
  const int rc = pclose(pipe);
  res.status = WEXITSTATUS(rc);
  return res;
}

struct TempFile {
  std::string path;
  explicit TempFile(std::string p) : path(std::move(p)) {}
  ~TempFile() { std::remove(path.c_str()); }
};

}  // namespace

using hpdf::json;

TEST_CASE("pell subcommand") {
  const CliResult r = run_cli("pell --count 6 --json");
  REQUIRE(r.status == 0);
  const json rows = json::parse(r.out);
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].at("v") == 4);
  CHECK(rows[1].at("v") == 120);
  CHECK(rows[1].at("k") == 85);
  CHECK(rows[5].at("k") == 112529341);

  const CliResult human = run_cli("pell --count 2");
  CHECK(human.status == 0);
  CHECK(human.out.find("120") != std::string::npos);
}

TEST_CASE("params subcommand reproduces the admissible table") {
  const CliResult r = run_cli("params --v-min 20 --v-max 40 --json");
  REQUIRE(r.status == 0);
  const json rows = json::parse(r.out);
  CHECK(rows.size() == 13);
  CHECK(rows[0].at("v") == 20);
  CHECK(rows[0].at("lambda") == 10);
}

TEST_CASE("group subcommand") {
  CHECK(run_cli("group \"cyclic(12)\"").status == 0);
  CHECK(run_cli("group \"cyclic(0)\"").status == 1);
  CHECK(run_cli("group \"frobnicate(1)\"").status == 1);

  const CliResult j = run_cli("group \"semidirect(3,8,-1)\" --json");
  REQUIRE(j.status == 0);
  const json g = json::parse(j.out);
  CHECK(g.at("order") == 24);

  // a corrupted table file is rejected with a nonzero exit
  TempFile tmp("tmp_cli_bad_group.json");
  {
    json bad = hpdf::group_to_json(hpdf::make_cyclic(3));
    bad["table"][1][1] = 1;
    std::ofstream f(tmp.path);
    f << bad.dump();
  }
  CHECK(run_cli("group \"file:" + tmp.path + "\"").status != 0);
}

TEST_CASE("catalog verify and export feed verify") {
  CHECK(run_cli("catalog verify").status == 0);
  CHECK(run_cli("catalog list").out.find("hpdf40_cyclic") != std::string::npos);

  TempFile tmp("tmp_cli_family.json");
  REQUIRE(run_cli("catalog export hpdf40_cyclic --out " + tmp.path).status == 0);
  const CliResult ok = run_cli("verify " + tmp.path + " --json");
  REQUIRE(ok.status == 0);
  const json rep = json::parse(ok.out);
  CHECK(rep.at("kind") == "HPDF");
  CHECK(rep.at("lambda") == 20);

  // corrupt it: move an element between blocks
  {
    hpdf::FamilyDocument doc = hpdf::load_family(tmp.path);
    const int moved = doc.family.blocks[2].back();
    doc.family.blocks[2].pop_back();
    doc.family.blocks[3].push_back(moved);
    std::sort(doc.family.blocks[3].begin(), doc.family.blocks[3].end());
    hpdf::save_family(doc.group, doc.family, tmp.path);
  }
  const CliResult bad = run_cli("verify " + tmp.path + " --json");
  CHECK(bad.status == 2);
  CHECK_FALSE(json::parse(bad.out).at("deviations").empty());

  CHECK(run_cli("catalog export no_such_id").status == 1);
}

TEST_CASE("verify prints difference tables on request") {
  TempFile tmp("tmp_cli_table.json");
  {
    const json fam = {{"group", "cyclic(40)"}, {"blocks", {{5, 15, 25}}}};
    std::ofstream f(tmp.path);
    f << fam.dump();
  }
  // {5,15,25} is not a PDS (its differences are non-constant off the block),
  // but the table must render either way
  const CliResult r = run_cli("verify " + tmp.path + " --kind pds --table");
  CHECK(r.status == 2);
  CHECK(r.out.find("30") != std::string::npos);
  CHECK(r.out.find("10") != std::string::npos);

  const CliResult rds = run_cli("verify " + tmp.path + " --kind rds --forbidden 0,10,20,30");
  CHECK(rds.status == 2);
}

TEST_CASE("search subcommand exit codes") {
  const CliResult found =
      run_cli("search --group \"cyclic(4)\" --k 1,3 --mode all --normalization none --json");
  REQUIRE(found.status == 0);
  // four family lines plus a summary line
  CHECK(std::count(found.out.begin(), found.out.end(), '\n') == 5);

  const CliResult skipped = run_cli("search --group \"cyclic(6)\" --k 3,2,1 --json");
  CHECK(skipped.status == 3);
  CHECK(json::parse(skipped.out).contains("skipped"));

  // a real exhaustive sweep that finds nothing
  const CliResult empty =
      run_cli("search --group \"cyclic(20)\" --k 1,2,3,14 --exhaustive --json");
  CHECK(empty.status == 3);
  const json summary = json::parse(empty.out).at("summary");
  CHECK(summary.at("exhaustive") == true);
  CHECK(summary.at("families") == 0);

  const CliResult budget =
      run_cli("search --group \"cyclic(20)\" --k 1,2,3,14 --exhaustive --node-budget 100 --json");
  CHECK(budget.status == 4);
}

TEST_CASE("filter subcommand") {
  const CliResult bad = run_cli("filter --k 50,20,5,1 --index2 --json");
  CHECK(bad.status == 3);
  CHECK(json::parse(bad.out).at("failed_rule") == "index2_diophantine");

  const CliResult good = run_cli("filter --k 1,3,9,27 --group \"cyclic(40)\" --json");
  CHECK(good.status == 0);
  CHECK(json::parse(good.out).at("admissible") == true);
}

TEST_CASE("descendants subcommand") {
  const CliResult d = run_cli("descendants --k 1,1,1,2,2,17 --n 18 --json");
  REQUIRE(d.status == 0);
  const json j = json::parse(d.out);
  CHECK(j.at("pass") == true);
  CHECK(j.at("result").at("v") == 888);
  CHECK(j.at("result").at("lambda") == 24);

  const CliResult m = run_cli("descendants --k 1,3,9,27 --min-n --json");
  REQUIRE(m.status == 0);
  CHECK(json::parse(m.out).at("n") == 29);

  CHECK(run_cli("descendants --k 1,1,1,2,2,17 --n 17 --json").status == 3);
  CHECK(run_cli("descendants --n 18").status == 1);
}

TEST_CASE("usage errors exit 1") {
  CHECK(run_cli("").status == 1);
  CHECK(run_cli("params").status == 1);
  CHECK(run_cli("search --group \"cyclic(4)\"").status == 1);
}
