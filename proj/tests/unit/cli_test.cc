// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The namegauge Authors

#include <doctest.h>

#include <sstream>

#include "namegauge/cli.h"
#include "temp_dir.h"

using namespace namegauge;

namespace {

const std::string kFixtures = NAMEGAUGE_FIXTURE_DIR;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args, const std::string& input = "") {
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(args, in, out, err);
  return {code, out.str(), err.str()};
}

bool contains(const std::string& text, const std::string& part) { return text.find(part) != std::string::npos; }

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("full pipeline over the fixture notebooks") {
  TempDir dir;
  const std::string db = (dir / "study.db").string();

  auto r = run({"ingest", kFixtures + "/notebooks", kFixtures + "/malformed", "--db", db});
  CHECK(r.code == 0);
  CHECK(r.out == "ingested 2 notebooks, 9 methods, 1 failures\n");
  CHECK(contains(r.err, "truncated.ipynb"));

  r = run({"methods", "--db", db});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "image_features.ipynb#1:10:MSE\timage_features.ipynb%231%3A10%3AMSE.txt\n"));

  r = run({"annotations", "import", kFixtures + "/annotations.csv", "--db", db});
  CHECK(r.code == 0);
  CHECK(contains(r.out, "covering 9 methods, 2 rejected"));
  CHECK(contains(r.err, "does_not_exist"));

  r = run({"rate", "--db", db, "--config", kFixtures + "/raters.ini", "--rule-rater"});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "gemini: valid=8 malformed=0 hallucinated=1 missing=0"));
  CHECK(contains(r.out, "llama: valid=7 malformed=1 hallucinated=0 missing=1"));
  CHECK(contains(r.out, "rule: valid=9 malformed=0 hallucinated=0 missing=0"));
  CHECK(contains(r.out, "common valid subset: 6 of 9 methods"));
  CHECK(contains(r.out, "run run-0001"));

  r = run({"report", "--db", db, "--out", (dir / "first").string()});
  REQUIRE(r.code == 0);
  CHECK(contains(r.out, "table1_agreement.csv"));
  r = run({"report", "--db", db, "--run", "run-0001", "--out", (dir / "second").string()});
  REQUIRE(r.code == 0);
  for (const auto& entry : std::filesystem::directory_iterator(dir / "first")) {
    const auto name = entry.path().filename();
    CHECK_MESSAGE(read_file(entry.path()) == read_file(dir / "second" / name), name);
  }
  const auto table1 = read_file(dir / "first" / "table1_agreement.csv");
  CHECK(contains(table1, "gemini,6,6,1.000,1.000\r\n"));
  CHECK(contains(table1, "llama,6,5,0.833,0.760\r\n"));
  const auto fleiss = read_file(dir / "first" / "fleiss.txt");
  CHECK(contains(fleiss, "raters: 3"));
  CHECK(contains(fleiss, "items: 6"));

  r = run({"report", "--db", db, "--run", "run-0099", "--out", (dir / "third").string()});
  CHECK(r.code == 1);

  r = run({"lint", "--db", db});
  CHECK(r.code == 1);
  CHECK(contains(r.out, "MSE: ContainsAbbreviation [term 0]"));
}

TEST_CASE("report without annotations fails with a message") {
  TempDir dir;
  const std::string db = (dir / "study.db").string();
  REQUIRE(run({"ingest", kFixtures + "/notebooks", "--db", db}).code == 0);
  REQUIRE(run({"rate", "--db", db, "--rule-rater"}).code == 0);
  const auto r = run({"report", "--db", db, "--out", (dir / "out").string()});
  CHECK(r.code == 1);
  CHECK(contains(r.err, "annotations"));
}

TEST_CASE("empty directory ingests nothing") {
  TempDir dir;
  std::filesystem::create_directories(dir / "empty");
  const auto r = run({"ingest", (dir / "empty").string(), "--db", (dir / "study.db").string()});
  CHECK(r.code == 0);
  CHECK(r.out == "ingested 0 notebooks, 0 methods, 0 failures\n");
  const auto rated = run({"rate", "--db", (dir / "study.db").string(), "--rule-rater"});
  CHECK(rated.code == 1);
}

TEST_CASE("only malformed input fails") {
  TempDir dir;
  const auto r = run({"ingest", kFixtures + "/malformed", "--db", (dir / "study.db").string()});
  CHECK(r.code != 0);
  CHECK(r.out == "ingested 0 notebooks, 0 methods, 1 failures\n");
}

TEST_CASE("lint from arguments and stdin") {
  auto r = run({"lint", "calculate_variance"});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  r = run({"lint"}, "calculate_variance\nanswer\n");
  CHECK(r.code == 1);
  CHECK(contains(r.out, "answer: NotVerbFirst"));
  r = run({"lint", "bad-name"});
  CHECK(r.code == 2);
}

TEST_CASE("usage errors") {
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"report", "--db", "x.db"}).code == 2);
  TempDir dir;
  write_file(dir / "bad.ini", "[x]\nmode = sometimes\n");
  REQUIRE(run({"ingest", kFixtures + "/notebooks", "--db", (dir / "s.db").string()}).code == 0);
  CHECK(run({"rate", "--db", (dir / "s.db").string(), "--config", (dir / "bad.ini").string()}).code == 2);
}

}  // TEST_SUITE
