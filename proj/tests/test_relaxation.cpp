#include <catch2/catch_amalgamated.hpp>

#include "support/fixtures.hpp"
#include "support/oracles.hpp"

using namespace setopt;
using namespace setopt::testing;

namespace {

std::set<RVector, LexLess> point_set(const VRep& v) {
  return {v.points.begin(), v.points.end()};
}

std::set<RVector, LexLess> direction_set(const VRep& v) {
  return {v.directions.begin(), v.directions.end()};
}

}  // namespace

TEST_CASE("feasibility detection") {
  REQUIRE(is_feasible(example1()));
  REQUIRE_FALSE(is_feasible(infeasible_instance()));
  REQUIRE(is_feasible(example2()));
}

TEST_CASE("upper image of the first example") {
  const auto ui = upper_image(example1());
  REQUIRE(point_set(ui.v) == std::set<RVector, LexLess>{vec({0, 2}), vec({2, 0}),
                                                        vec({-1, 4}), vec({4, -1})});
  REQUIRE(direction_set(ui.v) == std::set<RVector, LexLess>{vec({0, 1}), vec({1, 0})});
  REQUIRE(is_subset(ui.v, ui.h));
}

TEST_CASE("upper image of a constant map") {
  const auto ui = upper_image(constant_map_instance());
  REQUIRE(point_set(ui.v) == std::set<RVector, LexLess>{vec({0, 0})});
  REQUIRE(direction_set(ui.v) == std::set<RVector, LexLess>{vec({0, 1}), vec({1, 0})});
}

TEST_CASE("upper image of the second example") {
  const auto inst = example2();
  const auto ui = upper_image(inst);
  REQUIRE(point_set(ui.v) == std::set<RVector, LexLess>{vec({-1, 1}), vec({1, -1})});
  REQUIRE(direction_set(ui.v) == std::set<RVector, LexLess>{vec({0, 1}), vec({1, 0})});

  // Sampled values stay inside the image; its vertices are attained.
  for (const auto& x : {vec({0, 1}), vec({0, -1}), vec({1, 0}), vec({"1/2", "0"})}) {
    const auto val = value(inst, x);
    REQUIRE(is_subset(val.v_plus, ui.h));
  }
  REQUIRE(contains(to_hrep(value(inst, vec({0, -1})).v), vec({-1, 1})));
  REQUIRE(contains(to_hrep(value(inst, vec({0, 1})).v), vec({1, -1})));
}

TEST_CASE("boundedness verdicts") {
  SECTION("bounded example") {
    const auto ui = upper_image(example1());
    REQUIRE(check_bounded(ui, example1().cone).bounded);
  }
  SECTION("half-plane image is unbounded with a certificate") {
    const auto inst = halfplane_instance();
    const auto ui = upper_image(inst);
    const auto verdict = check_bounded(ui, inst.cone);
    REQUIRE_FALSE(verdict.bounded);
    const RVector zd = inst.cone.Z.transpose() * verdict.violating_direction;
    bool some_negative = false;
    for (Index i = 0; i < zd.size(); ++i) some_negative |= zd(i) < 0;
    REQUIRE(some_negative);
  }
  SECTION("orthant directions are bounded") {
    const auto ui = upper_image(constant_map_instance());
    REQUIRE(check_bounded(ui, constant_map_instance().cone).bounded);
  }
  SECTION("bounded problems have exactly the cone rays as directions") {
    Rng rng(907);
    for (int t = 0; t < 10; ++t) {
      const auto inst = rng.bounded_instance();
      const auto ui = upper_image(inst);
      REQUIRE(check_bounded(ui, inst.cone).bounded);
      const auto rays = cone_rays(inst.cone);
      REQUIRE(direction_set(ui.v) == std::set<RVector, LexLess>(rays.begin(), rays.end()));
    }
  }
}

TEST_CASE("pre-solution extraction") {
  SECTION("one witness per vertex, all verified") {
    const auto inst = example1();
    const auto ui = upper_image(inst);
    const auto pre = extract_presolution(inst, ui);
    REQUIRE(pre.entries.size() == 4);
    std::set<RVector, LexLess> ys;
    for (const auto& e : pre.entries) {
      ys.insert(e.y);
      const auto val = value(inst, e.x);
      REQUIRE(contains(to_hrep(val.v), e.y));  // y in F(x), not merely F(x)+C
    }
    REQUIRE(ys == point_set(ui.v));
  }
  SECTION("constant map needs a single entry") {
    const auto inst = constant_map_instance();
    const auto pre = extract_presolution(inst, upper_image(inst));
    REQUIRE(pre.entries.size() == 1);
    REQUIRE(pre.entries[0].y == vec({0, 0}));
  }
  SECTION("the second example has no witness at the interior minimizer") {
    const auto inst = example2();
    const auto pre = extract_presolution(inst, upper_image(inst));
    REQUIRE(pre.entries.size() == 2);
    for (const auto& e : pre.entries) REQUIRE(e.x != vec({"1/2", "0"}));
  }
}

TEST_CASE("scalar images reduce to a half-line") {
  // With q = 1 the upper image is [min y, infinity); the endpoint must
  // match a direct LP minimization over the graph.
  Rng rng(1009);
  for (int t = 0; t < 30; ++t) {
    ProblemInstance inst;
    const Index n = rng.integer(1, 2);
    const Index extra = rng.integer(1, 2);
    const Index m = 2 * n + extra;
    inst.A = RMatrix::Zero(m, n);
    inst.B = RMatrix::Zero(m, 1);
    inst.b = RVector::Zero(m);
    for (Index i = 0; i < n; ++i) {
      inst.A(2 * i, i) = 1;
      inst.b(2 * i) = -1;
      inst.A(2 * i + 1, i) = -1;
      inst.b(2 * i + 1) = -1;
    }
    for (Index e = 0; e < extra; ++e) {
      const Index r = 2 * n + e;
      inst.B(r, 0) = 1;
      inst.A.row(r) = rng.vector(n, -2, 2, 1).transpose();
      inst.b(r) = rng.rational(-2, 2, 2);
    }
    inst.cone = ConeSpec{RMatrix::Identity(1, 1)};

    const auto ui = upper_image(inst);
    REQUIRE(ui.v.points.size() == 1);
    REQUIRE(ui.v.directions == std::vector<RVector>{vec({1})});

    RMatrix g(m, n + 1);
    g.leftCols(n) = inst.A;
    g.rightCols(1) = inst.B;
    RVector obj = RVector::Zero(n + 1);
    obj(n) = -1;  // maximize -y = minimize y
    const auto out = lp_solve(LinearProgram{std::move(obj), std::move(g), inst.b});
    REQUIRE(out.status == LPStatus::Optimal);
    REQUIRE(ui.v.points[0](0) == -out.value);
  }
}

TEST_CASE("witness recovery falls back to a feasibility program") {
  // Strip the graph generators so the extractor cannot match any vertex
  // and must recover each witness by solving for x directly.
  const auto inst = example1();
  auto ui = upper_image(inst);
  ui.graph_points.clear();
  const auto pre = extract_presolution(inst, ui);
  REQUIRE(pre.entries.size() == 4);
  for (const auto& e : pre.entries) {
    const auto val = value(inst, e.x);
    REQUIRE(contains(to_hrep(val.v), e.y));
  }
}

TEST_CASE("infimum attainment by the pre-solution") {
  const auto inst = example1();
  const auto ui = upper_image(inst);
  const auto pre = extract_presolution(inst, ui);
  std::vector<SetValue> values;
  for (const auto& e : pre.entries) values.push_back(value(inst, e.x));
  REQUIRE(describes_same_set(infimum(values, inst.q()), ui.v));
}

TEST_CASE("vertices of the upper image are cone-minimal") {
  const auto ui = upper_image(example1());
  for (const auto& v : ui.v.points)
    for (const auto& u : ui.v.points)
      if (u != v) {
        const RVector diff = v - u;
        REQUIRE_FALSE((diff(0) >= 0 && diff(1) >= 0));  // v - u never in C
      }
}
