#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace setopt;
using namespace setopt::testing;

TEST_CASE("rational values on the wire") {
  REQUIRE(rational_from_json(Json(5)) == Rational(5));
  REQUIRE(rational_from_json(Json("-3/6")) == Rational(-1, 2));
  REQUIRE(rational_from_json(Json("7")) == Rational(7));
  REQUIRE_THROWS_AS(rational_from_json(Json(1.5)), InputError);
  REQUIRE_THROWS_AS(rational_from_json(Json("2/0")), InputError);

  REQUIRE(rational_to_json(Rational(4)) == Json(4));
  REQUIRE(rational_to_json(Rational(-1, 3)) == Json("-1/3"));
  // Values beyond 64 bits fall back to strings and survive the round trip.
  const Rational huge = parse_rational("123456789012345678901234567890");
  REQUIRE(rational_from_json(rational_to_json(huge)) == huge);
}

TEST_CASE("problem files round trip") {
  const auto inst = example1();
  const Json j = problem_to_json(inst);
  const auto back = problem_from_json(j);
  REQUIRE(back.A == inst.A);
  REQUIRE(back.B == inst.B);
  REQUIRE(back.b == inst.b);
  REQUIRE(back.cone.Z == inst.cone.Z);
  REQUIRE(problem_to_json(back) == j);  // emission is idempotent

  SECTION("gc flag survives") {
    const Json g = problem_to_json(example2(true));
    REQUIRE(problem_from_json(g).options.gc_values);
  }
}

TEST_CASE("problem validation failures are input errors") {
  Json j = problem_to_json(example1());
  SECTION("missing field") {
    j.erase("Z");
    REQUIRE_THROWS_AS(problem_from_json(j), InputError);
  }
  SECTION("shape mismatch") {
    j["m"] = 13;
    REQUIRE_THROWS_AS(problem_from_json(j), InputError);
  }
  SECTION("float entries are rejected") {
    j["b"][0] = 0.5;
    REQUIRE_THROWS_AS(problem_from_json(j), InputError);
  }
  SECTION("degenerate cone") {
    j["Z"] = Json::array({Json::array({1, 0}), Json::array({0, 0})});
    REQUIRE_THROWS_AS(problem_from_json(j), ValidationError);
  }
}

TEST_CASE("candidate files") {
  const Json j = Json::array({Json::array({0, 0}), Json::array({"1/2", 1})});
  const auto pts = candidate_from_json(j, 2);
  REQUIRE(pts.size() == 2);
  REQUIRE(pts[1] == vec({"1/2", "1"}));
  REQUIRE_THROWS_AS(candidate_from_json(j, 3), InputError);
  REQUIRE_THROWS_AS(candidate_from_json(Json::object(), 2), InputError);
}

TEST_CASE("reports serialize with exact rationals") {
  const auto inst = example1();
  const auto report = setopt_solve(inst);
  const Json j = report_to_json(report);
  REQUIRE(j["status"] == "Solved");
  REQUIRE(j["solution"].size() == report.solution.size());
  REQUIRE(j["stats"]["lp_count"].get<int>() == report.stats.lp_count);

  // Feeding the reported solution back through the checker validates it.
  std::vector<RVector> xs;
  for (const auto& entry : j["solution"]) xs.push_back(vector_from_json(entry["x"], "x"));
  REQUIRE(check_solution(inst, xs).is_solution);

  // The reported infimum vertices parse back to the computed ones.
  std::set<RVector, LexLess> vertices;
  for (const auto& v : j["infimum"]["vertices"])
    vertices.insert(vector_from_json(v, "vertex"));
  REQUIRE(vertices == std::set<RVector, LexLess>(report.infimum.points.begin(),
                                                 report.infimum.points.end()));
}

TEST_CASE("non-solved reports carry their certificate") {
  const auto report = setopt_solve(halfplane_instance());
  const Json j = report_to_json(report);
  REQUIRE(j["status"] == "Unbounded");
  REQUIRE(j.contains("certificate"));
  REQUIRE(vector_from_json(j["certificate"], "certificate") == report.certificate);
}

TEST_CASE("verdicts serialize their evidence") {
  const auto inst = example1();
  const std::vector<RVector> candidate{ex1_x1(), ex1_x3(), ex1_x2()};
  const auto verdict = check_solution(inst, candidate);
  const Json j = verdict_to_json(verdict);
  REQUIRE(j["is_infimizer"] == true);
  REQUIRE(j["is_solution"] == false);
  REQUIRE(j["non_minimizers"].size() == 2);
  for (const auto& bad : j["non_minimizers"]) {
    REQUIRE(bad.contains("certificate"));
    REQUIRE(bad["certificate"].contains("improving_x"));
  }
}
