#include <doctest.h>

#include <cmath>

#include "conic/condition.hpp"
#include "conic/montecarlo.hpp"
#include "conic/perceptron.hpp"
#include "conic/serialize.hpp"

using conic::PerceptronTermination;
using conic::perceptron_solve;
using conic::SelectionRule;
using conic::UnitRowMatrix;

TEST_CASE("hand traces") {
  SUBCASE("single row") {
    auto A = UnitRowMatrix::from_unit_rows(2, 1, {1, 0});
    auto t = perceptron_solve(A, 100, SelectionRule::FirstViolated, 1.0);
    CHECK(t.terminated == PerceptronTermination::Solved);
    CHECK(t.iterations == 1);
    REQUIRE(t.solution.has_value());
    CHECK((*t.solution)[0] == -1.0);
    REQUIRE(t.bound.has_value());
    CHECK(t.iterations <= static_cast<long>(*t.bound));
  }
  SUBCASE("two orthogonal rows take exactly C^2 = 2 steps") {
    auto A = UnitRowMatrix::from_unit_rows(2, 2, {1, 0, 0, 1});
    auto t = perceptron_solve(A, 100, SelectionRule::FirstViolated,
                              std::sqrt(2.0));
    CHECK(t.terminated == PerceptronTermination::Solved);
    CHECK(t.iterations == 2);
    REQUIRE(t.solution.has_value());
    CHECK((*t.solution)[0] == -1.0);
    CHECK((*t.solution)[1] == -1.0);
    CHECK(*t.bound == 2.0);
  }
  SUBCASE("infeasible instance hits the cap") {
    std::vector<double> data;
    for (double deg : {0.0, 120.0, 240.0}) {
      double a = deg * conic::kPi / 180.0;
      data.push_back(std::cos(a));
      data.push_back(std::sin(a));
    }
    auto A = UnitRowMatrix::from_unit_rows(2, 3, std::move(data));
    auto t = perceptron_solve(A, 1000, SelectionRule::FirstViolated);
    CHECK(t.terminated == PerceptronTermination::IterationCapReached);
    CHECK(t.iterations == 1000);
    CHECK_FALSE(t.solution.has_value());
  }
}

TEST_CASE("determinism and strictness") {
  auto rng = conic::trial_stream(7, 3);
  auto A = conic::sample_uniform_rows(3, 5, rng);
  for (auto rule : {SelectionRule::FirstViolated, SelectionRule::MaxViolation}) {
    auto t1 = perceptron_solve(A, 1000000, rule);
    auto t2 = perceptron_solve(A, 1000000, rule);
    CHECK(t1.iterations == t2.iterations);
    if (t1.solution) {
      REQUIRE(t2.solution.has_value());
      for (std::size_t j = 0; j < t1.solution->size(); ++j)
        CHECK((*t1.solution)[j] == (*t2.solution)[j]);
      // strict satisfaction, no tolerance
      for (int i = 0; i < A.rows(); ++i)
        CHECK(conic::dot(A.row(i), *t1.solution) < 0.0);
    }
  }
}

TEST_CASE("iteration bound holds under both rules on feasible instances") {
  conic::ConditionSolver solver;
  int done = 0;
  long trial = 0;
  while (done < 60) {
    auto rng = conic::trial_stream(555, trial++);
    auto A = conic::sample_uniform_rows(3, 5, rng);
    auto v = solver.condition_value(A);
    if (v.cls != conic::FeasibilityClass::StrictlyFeasible) continue;
    double bound = std::ceil(v.cond * v.cond);
    for (auto rule : {SelectionRule::FirstViolated, SelectionRule::MaxViolation}) {
      auto t = perceptron_solve(A, conic::perceptron_default_cap(v.cond), rule, v.cond);
      CHECK(t.terminated == PerceptronTermination::Solved);
      CHECK(t.iterations <= static_cast<long>(bound));
    }
    ++done;
  }
}

TEST_CASE("trace JSON") {
  auto A = UnitRowMatrix::from_unit_rows(2, 1, {1, 0});
  auto t = perceptron_solve(A, 10, SelectionRule::FirstViolated);
  auto j = conic::trace_to_json(t);
  CHECK(j.at("iterations") == 1);
  CHECK(j.at("terminated") == "Solved");
  CHECK(j.at("solution").is_array());
}

TEST_CASE("default cap rule") {
  CHECK(conic::perceptron_default_cap(std::nullopt) == 1000000L);
  CHECK(conic::perceptron_default_cap(10.0) == 1000000L);
  CHECK(conic::perceptron_default_cap(1000.0) == 10000000L);
}
