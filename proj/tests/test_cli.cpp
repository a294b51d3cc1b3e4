#include <doctest.h>

#include <cmath>
#include <fstream>
#include <sstream>

#include "cli_runner.hpp"
#include "dcopt/csv.hpp"
#include "dcopt/io.hpp"

using clitest::run;
using clitest::ScratchDir;
using clitest::slurp;

namespace {

dcopt::csv::Table table_of(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return dcopt::csv::read_numeric(in);
}

std::vector<double> column(const dcopt::csv::Table& t, const std::string& name) {
  const auto idx = t.column(name);
  REQUIRE(idx.has_value());
  std::vector<double> out;
  for (const auto& row : t.rows) out.push_back(row[*idx]);
  return out;
}

}  // namespace

TEST_CASE("help and usage errors") {
  ScratchDir dir("usage");
  CHECK(run(dir, "--help") == 0);
  CHECK(slurp(dir.file("stdout.txt")).find("sweep") != std::string::npos);
  CHECK(run(dir, "train --help") == 0);
  const std::string help = slurp(dir.file("stdout.txt"));
  CHECK(help.find("--epochs UINT [1500]") != std::string::npos);
  CHECK(help.find("--batch UINT [75]") != std::string::npos);
  CHECK(help.find("[protocol default]") != std::string::npos);

  CHECK(run(dir, "") == 2);
  CHECK(run(dir, "frobnicate") == 2);
  CHECK(run(dir, "verify --suite nope") == 2);
  CHECK(run(dir, "curves --samples 1") == 2);
  CHECK(run(dir, "curves --r 0") == 2);
  CHECK(run(dir, "gen-data --split 1.5") == 2);
  CHECK(run(dir, "gen-data", "DC_OPTLAB_THREADS=zero") == 2);
}

TEST_CASE("io and format errors exit 3") {
  ScratchDir dir("io");
  CHECK(run(dir, "train --train '" + dir.file("missing.csv") + "' --test '" + dir.file("missing.csv") + "'") == 3);
  {
    std::ofstream bad(dir.file("bad.csv"));
    bad << "x1,x2,y\n1,2,3\n";
  }
  CHECK(run(dir, "train --train '" + dir.file("bad.csv") + "' --test '" + dir.file("bad.csv") + "'") == 3);
  CHECK(slurp(dir.file("stderr.txt")).find("line 2") != std::string::npos);
  CHECK(run(dir, "plot --kind rates --in '" + dir.file("missing.csv") + "'") == 3);
  {
    std::ofstream js(dir.file("p.json"));
    js << "{not json";
  }
  CHECK(run(dir, "curves --params '" + dir.file("p.json") + "'") == 3);
}

TEST_CASE("verify suites exit 0 with a JSON report") {
  ScratchDir dir("verify");
  REQUIRE(run(dir, "verify --suite lambert --out '" + dir.file("l.json") + "'") == 0);
  CHECK(dcopt::read_json(dir.file("l.json"))["passed"] == true);
  REQUIRE(run(dir, "verify --suite theorem --out '" + dir.file("t.json") + "'") == 0);
  const auto report = dcopt::read_json(dir.file("t.json"));
  CHECK(report["theorem"]["checked"].get<std::size_t>() >= 1000);
  CHECK(run(dir, "verify") == 0);
}

TEST_CASE("rates: domain filtering and the additive d shift") {
  ScratchDir dir("rates");
  // p_d = 1/e with c = 0 gives b = -1, so z_min = 1.
  CHECK(run(dir, "rates --z-min -3 --z-max 0.5") == 2);
  REQUIRE(run(dir, "rates --z-min 3 --z-max 10 --samples 50 --out '" + dir.file("d0.csv") + "'") == 0);
  REQUIRE(run(dir, "rates --d 5 --z-min 3 --z-max 10 --samples 50 --out '" + dir.file("d5.csv") + "'") == 0);
  const auto t0 = table_of(dir.file("d0.csv"));
  const auto t5 = table_of(dir.file("d5.csv"));
  REQUIRE(t0.rows.size() == 50);
  REQUIRE(t5.rows.size() == 50);
  const auto g0 = column(t0, "g_dc");
  const auto g5 = column(t5, "g_dc");
  const auto def = column(t0, "g_default");
  for (std::size_t i = 0; i < g0.size(); ++i) {
    CHECK(g0[i] < def[i]);
    CHECK(g5[i] - g0[i] == doctest::Approx(5.0).epsilon(1e-14));
  }
  CHECK(column(t0, "z_min")[0] == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("curves: no-DC preset passes through p_d at t = d") {
  ScratchDir dir("curves");
  REQUIRE(run(dir, "curves --preset no-dc --t-min -2 --t-max 2 --samples 5 --out '" + dir.file("c.csv") + "'") == 0);
  const auto t = table_of(dir.file("c.csv"));
  REQUIRE(t.rows.size() == 5);
  CHECK(column(t, "t")[2] == 0.0);
  CHECK(column(t, "prob")[2] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(run(dir, "curves --preset all") == 2);
  REQUIRE(run(dir, "curves --preset all --out-dir '" + dir.file("all") + "'") == 0);
  for (const char* name : {"no-dc", "growing", "decaying", "grow-decay"}) {
    CHECK(std::filesystem::exists(dir.file(std::string("all/curves_") + name + ".csv")));
  }
}

TEST_CASE("gen-data and train are byte-deterministic") {
  ScratchDir dir("det");
  REQUIRE(run(dir, "gen-data --seed 5 --m 200 --out '" + dir.file("a.csv") + "'") == 0);
  REQUIRE(run(dir, "gen-data --seed 5 --m 200 --out '" + dir.file("b.csv") + "'") == 0);
  CHECK(slurp(dir.file("a.csv")) == slurp(dir.file("b.csv")));
  REQUIRE(run(dir, "gen-data --seed 6 --m 200 --out '" + dir.file("c.csv") + "'") == 0);
  CHECK(slurp(dir.file("a.csv")) != slurp(dir.file("c.csv")));

  REQUIRE(run(dir, "gen-data --seed 5 --m 200 --train-out '" + dir.file("tr.csv") + "' --test-out '" +
                       dir.file("te.csv") + "'") == 0);
  CHECK(table_of(dir.file("tr.csv")).rows.size() == 160);
  CHECK(table_of(dir.file("te.csv")).rows.size() == 40);

  const std::string train_args = "train --m 200 --epochs 20 --seed 4 --trace-out '";
  REQUIRE(run(dir, "--threads 1 " + train_args + dir.file("t1.csv") + "' --weights-out '" + dir.file("w1.json") + "'") == 0);
  REQUIRE(run(dir, train_args + dir.file("t2.csv") + "' --weights-out '" + dir.file("w2.json") + "'",
              "DC_OPTLAB_THREADS=4") == 0);
  CHECK(slurp(dir.file("t1.csv")) == slurp(dir.file("t2.csv")));
  CHECK(slurp(dir.file("w1.json")) == slurp(dir.file("w2.json")));
  CHECK(table_of(dir.file("t1.csv")).rows.size() == 20);
}

TEST_CASE("sweep output does not depend on the thread count") {
  ScratchDir dir("sweep");
  const std::string args = "sweep --profile desk --configs 3 --runs 2 --epochs 15 --m 120 --seed 11";
  const auto outputs = [&](const std::string& tag) {
    return " --json-out '" + dir.file(tag + ".json") + "' --csv-out '" + dir.file(tag + ".csv") +
           "' --curves-out '" + dir.file(tag + "_curves.csv") + "'";
  };
  REQUIRE(run(dir, "--threads 1 " + args + outputs("one")) == 0);
  const std::string table = slurp(dir.file("stdout.txt"));
  CHECK(table.rfind("family,config_id,mean_final_accuracy,delta_vs_no_dc\nno-DC,0,", 0) == 0);
  REQUIRE(run(dir, "--threads 3 " + args + outputs("three"), "DC_OPTLAB_THREADS=1") == 0);
  CHECK(slurp(dir.file("stdout.txt")) == table);
  for (const char* suffix : {".json", ".csv", "_curves.csv"}) {
    CHECK(slurp(dir.file(std::string("one") + suffix)) == slurp(dir.file(std::string("three") + suffix)));
  }
  const auto doc = dcopt::read_json(dir.file("one.json"));
  CHECK(doc["per_config"].size() == 4);
  CHECK(doc["grid_size"] == 1080);
}

TEST_CASE("plot renders deterministically") {
  ScratchDir dir("plot");
  REQUIRE(run(dir, "rates --out '" + dir.file("r.csv") + "'") == 0);
  REQUIRE(run(dir, "plot --kind rates --in '" + dir.file("r.csv") + "' --out '" + dir.file("a.svg") + "'") == 0);
  REQUIRE(run(dir, "plot --kind rates --in '" + dir.file("r.csv") + "' --out '" + dir.file("b.svg") + "'") == 0);
  const std::string svg = slurp(dir.file("a.svg"));
  CHECK(svg == slurp(dir.file("b.svg")));
  CHECK(svg.find("<svg") != std::string::npos);
  {
    std::ofstream empty(dir.file("e.csv"));
    empty << "z,g_dc,g_default,lower,upper,z_min\n";
  }
  CHECK(run(dir, "plot --kind rates --in '" + dir.file("e.csv") + "' --out '" + dir.file("e.svg") + "'") == 0);
  CHECK(slurp(dir.file("e.svg")).find("<polyline") == std::string::npos);
  {
    std::ofstream wrong(dir.file("w.csv"));
    wrong << "a,b\n1,2\n";
  }
  CHECK(run(dir, "plot --kind rates --in '" + dir.file("w.csv") + "'") == 3);
}
