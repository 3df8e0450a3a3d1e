#include <algorithm>
#include <iterator>
#include <sstream>
#include <string>

#include "doctest.h"
#include "ialg/corpus.hpp"
#include "ialg/errors.hpp"
#include "ialg/session.hpp"
#include "ialg/text.hpp"

using namespace ialg;

namespace {

std::string corpus_text(const std::string& name) {
  for (const auto& e : corpus()) {
    if (e.name == name) return e.text;
  }
  FAIL("missing corpus entry " << name);
  return {};
}

Report run_cmd(const std::string& entry, std::vector<std::string> cmd) {
  RunOptions opt;
  opt.name = entry;
  return run_text(corpus_text(entry), opt, cmd);
}

const char* kPlane = R"(poset zlattice 2
field Q
algebra invariant
gen x (1,0)
gen y (0,1)
)";

}  // namespace

TEST_CASE("parse errors carry line and column") {
  SUBCASE("inhomogeneous relation") {
    const std::string text = std::string(kPlane) + "rel (1,0): x*y - y*x\n";
    try {
      parse_session(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 6);
      CHECK(e.column() >= 1);
      CHECK(e.message().find("inhomogeneous") != std::string::npos);
    }
  }
  SUBCASE("unknown keyword") {
    try {
      parse_session("poset zlattice 2\nfoo bar\n");
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 2);
      CHECK(e.column() == 1);
    }
  }
  SUBCASE("arity mismatch") {
    CHECK_THROWS_AS(parse_session(std::string(kPlane) + "gen z (1,0,0)\n"), ParseError);
  }
  SUBCASE("unknown generator") {
    CHECK_THROWS_AS(parse_session(std::string(kPlane) + "rel (1,1): x*w - y*x\n"), ParseError);
  }
  SUBCASE("report exposes the position") {
    RunOptions opt;
    const auto rep = run_text(std::string(kPlane) + "rel (1,0): x*y - y*x\n", opt);
    CHECK(rep.status == Status::Error);
    CHECK(rep.exit_code() == 1);
    CHECK(rep.json["error"]["line"] == 6);
  }
}

TEST_CASE("corpus shape") {
  const auto& entries = corpus();
  REQUIRE(entries.size() >= 5);
  for (const char* name : {"free_xy", "poly_xy", "q_poly_xy", "deloop_zn", "chain3_product"}) {
    CHECK(std::any_of(entries.begin(), entries.end(), [&](const auto& e) { return e.name == name; }));
  }
  const auto free_spec = parse_session(corpus_text("free_xy"));
  const auto poly_spec = parse_session(corpus_text("poly_xy"));
  CHECK(free_spec.algebra.generators.size() == 2);
  CHECK(free_spec.algebra.relations.empty());
  REQUIRE(poly_spec.algebra.relations.size() == 1);
  CHECK(poly_spec.algebra.relations[0].terms.size() == 2);

  std::vector<std::string> a, b;
  std::istringstream fa(corpus_text("free_xy")), fb(corpus_text("poly_xy"));
  for (std::string l; std::getline(fa, l);) a.push_back(l);
  for (std::string l; std::getline(fb, l);) b.push_back(l);
  REQUIRE(b.size() == a.size() + 1);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<std::string> extra;
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(extra));
  REQUIRE(extra.size() == 1);
  CHECK(extra[0].rfind("rel ", 0) == 0);
}

TEST_CASE("print and parse round-trip every corpus entry") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    const auto spec = parse_session(e.text);
    const auto printed = print_session(spec);
    CHECK(parse_session(printed) == spec);
    CHECK(print_session(parse_session(printed)) == printed);
  }
}

TEST_CASE("dims on the polynomial plane is a table of ones") {
  const auto rep = run_cmd("poly_xy", {"dims", "(0,0)", "(3,3)"});
  CHECK(rep.status == Status::Computed);
  const auto& table = rep.json["results"][0]["table"];
  REQUIRE(table.size() == 4);
  for (const auto& row : table) {
    REQUIRE(row.size() == 4);
    for (const auto& v : row) CHECK(v == 1);
  }
}

TEST_CASE("q-plane with q = 1 has the polynomial dims") {
  std::string text = corpus_text("q_poly_xy");
  const auto pos = text.find("2*y*x");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, 5, "y*x");
  RunOptions opt;
  const auto q1 = run_text(text, opt, std::vector<std::string>{"dims", "(0,0)", "(4,4)"});
  const auto poly = run_cmd("poly_xy", {"dims", "(0,0)", "(4,4)"});
  CHECK(q1.json["results"][0]["table"] == poly.json["results"][0]["table"]);
}

TEST_CASE("cocompact on the free plane is inconclusive with growth evidence") {
  const auto rep = run_cmd("free_xy", {"check", "cocompact", "(0,0)..(4,3)", "(0,0)", "(1,1)"});
  CHECK(rep.status == Status::Inconclusive);
  CHECK(rep.exit_code() == 3);
  const auto dump = rep.json["results"][0]["outcome"].dump();
  CHECK(dump.find("\"growth\"") != std::string::npos);
  for (const auto& r : rep.json["results"][0]["replay"]) CHECK(r["ok"] == true);
}

TEST_CASE("hom algebra of free objects on the polynomial plane") {
  const auto rep = run_cmd("poly_xy", {"aofseq", "P(0,0)", "P(1,0)", "P(0,1)", "P(1,1)"});
  CHECK(rep.status == Status::Verified);
  const auto& alg = rep.json["results"][0]["algebra"];
  CHECK(alg["kind"] == "explicit");
  CHECK(alg["components"].size() == 9);
  for (const auto& c : alg["components"]) CHECK(c["dim"] == 1);
}

TEST_CASE("exit codes follow severity") {
  CHECK(exit_code(Status::Computed) == 0);
  CHECK(exit_code(Status::Verified) == 0);
  CHECK(exit_code(Status::Refuted) == 2);
  CHECK(exit_code(Status::Inconclusive) == 3);
  CHECK(exit_code(Status::Error) == 1);
  CHECK(exit_code(Status::ResourceLimit) == 4);
  CHECK(worst(Status::Inconclusive, Status::Refuted) == Status::Refuted);
  CHECK(worst(Status::Refuted, Status::ResourceLimit) == Status::ResourceLimit);
  CHECK(worst(Status::ResourceLimit, Status::Error) == Status::Error);

  CHECK(run_cmd("poly_xy", {"check", "strong"}).exit_code() == 0);
  CHECK(run_cmd("free_xy", {"check", "strong"}).exit_code() == 2);
  CHECK(run_cmd("free_xy", {"dims", "Nope"}).exit_code() == 1);
}

TEST_CASE("resource limits abort only the offending command") {
  RunOptions opt;
  opt.window_limit = 4;
  const auto rep = run_text(corpus_text("poly_xy"), opt);
  CHECK(rep.status == Status::ResourceLimit);
  CHECK(rep.exit_code() == 4);
  CHECK(rep.json["results"].size() > 1);
  CHECK(rep.json["results"][0]["status"] == "resource-limit");
}

TEST_CASE("reports are deterministic") {
  for (const auto& e : corpus()) {
    CAPTURE(e.name);
    RunOptions opt;
    opt.name = e.name;
    const auto a = run_text(e.text, opt);
    const auto b = run_text(e.text, opt);
    CHECK(a.json.dump() == b.json.dump());
    CHECK(a.json["schema"] == 1);
    CHECK(a.json["input_digest"].get<std::string>().rfind("fnv1a64:", 0) == 0);
  }
}

TEST_CASE("field override reduces coefficients") {
  RunOptions opt;
  opt.field = FieldDecl{2};
  const auto rep = run_text(corpus_text("q_poly_xy"), opt, std::vector<std::string>{"dims", "(0,0)", "(2,2)"});
  CHECK(rep.json["algebra"]["field"] != "Q");
  CHECK(rep.status == Status::Computed);
}
