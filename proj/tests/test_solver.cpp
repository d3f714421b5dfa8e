#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include "tsfrac/errors.hpp"
#include "tsfrac/solver.hpp"

using Catch::Approx;
using namespace tsfrac;

namespace {

IVProblem unit_problem(const char* rhs, double tol = 1e-8, int max_iter = 64) {
    return IVProblem{TimeScale::interval(0.0, 1.0), 0.0,  1.0,     0.5,
                     Expr::parse(rhs),              1e-3, tol,     max_iter};
}

}  // namespace

TEST_CASE("lipschitz estimate on simple right-hand sides") {
    Expr linear = Expr::parse("0.5*y");
    CHECK(estimate_lipschitz(linear, 0.0, 1.0, -1.0, 1.0) == Approx(0.5).epsilon(1e-12));

    Expr constant = Expr::parse("sin(t)");
    CHECK(estimate_lipschitz(constant, 0.0, 1.0, -1.0, 1.0) == 0.0);

    Expr affine = Expr::parse("2*y+1");
    CHECK(estimate_lipschitz(affine, 0.0, 1.0, -2.0, 2.0) == Approx(2.0).epsilon(1e-12));

    Expr kink = Expr::parse("abs(y)");
    CHECK(estimate_lipschitz(kink, 0.0, 1.0, -1.0, 1.0) == Approx(1.0).epsilon(1e-12));
}

TEST_CASE("lipschitz estimate validates the sampling box") {
    Expr e = Expr::parse("y");
    CHECK_THROWS_AS(estimate_lipschitz(e, 0.0, 1.0, -1.0, 1.0, 1), tsfrac::BadRange);
    CHECK_THROWS_AS(estimate_lipschitz(e, 0.0, 1.0, 1.0, -1.0), tsfrac::BadRange);
    CHECK_THROWS_AS(
        estimate_lipschitz(e, 0.0, std::numeric_limits<double>::infinity(), -1.0, 1.0),
        tsfrac::BadRange);
}

TEST_CASE("contraction and ball constants") {
    // c(1, 1, 1/2) = 1/Gamma(3/2) = 2/sqrt(pi)
    CHECK(contraction_constant(1.0, 1.0, 0.5) ==
          Approx(1.12837916709551257389615890312).epsilon(1e-12));
    CHECK(apriori_bound(2.0, 1.0, 0.5) ==
          Approx(2.0 * contraction_constant(1.0, 1.0, 0.5)).epsilon(1e-14));
    // shrinking the horizon shrinks the constant
    CHECK(contraction_constant(1.0, 0.25, 0.5) < contraction_constant(1.0, 1.0, 0.5));
}

TEST_CASE("the two smallness criteria disagree exactly on a band") {
    const double lo = tsfrac::gamma(1.5);  // threshold of the strict criterion at a = 1
    const double hi = tsfrac::gamma(0.5);  // threshold of the loose criterion at a = 1
    CHECK_FALSE(criteria_disagree(0.5, 1.0, 0.5));
    CHECK_FALSE(criteria_disagree(lo * (1.0 - 1e-12), 1.0, 0.5));
    CHECK(criteria_disagree(lo, 1.0, 0.5));
    CHECK(criteria_disagree(1.2, 1.0, 0.5));
    CHECK(criteria_disagree(hi, 1.0, 0.5));
    CHECK_FALSE(criteria_disagree(hi * (1.0 + 1e-12), 1.0, 0.5));
    CHECK_FALSE(criteria_disagree(2.5, 1.0, 0.5));
}

TEST_CASE("problem validation") {
    IVProblem p = unit_problem("1");
    p.horizon = 0.0;
    CHECK_THROWS_AS(validate(p), tsfrac::BadRange);

    p = unit_problem("1");
    p.alpha = 1.5;
    CHECK_THROWS_AS(validate(p), tsfrac::InvalidOrder);

    p = unit_problem("1");
    p.t0 = -1.0;
    CHECK_THROWS_AS(validate(p), tsfrac::NotInScale);

    p = unit_problem("1");
    p.horizon = 2.0;  // endpoint 2 is outside [0,1]
    CHECK_THROWS_AS(validate(p), tsfrac::NotInScale);

    p = unit_problem("1");
    p.max_iter = 0;
    CHECK_THROWS_AS(validate(p), tsfrac::BadRange);

    p = unit_problem("1");
    p.tol = 0.0;
    CHECK_THROWS_AS(validate(p), tsfrac::BadRange);
}

TEST_CASE("one application of the integral operator") {
    IVProblem p = unit_problem("1");
    auto grid = std::make_shared<Grid>(p.scale, p.step);
    GridFunction zero(grid, std::vector<double>(grid->size(), 0.0));
    GridFunction ty = picard_step(p, zero);
    // I^{1/2} 1 = t^{1/2} / Gamma(3/2); exact for constant data
    CHECK(ty.value_at(1.0) == Approx(1.12837916709551257389615890312).margin(1e-12));
    CHECK(ty.value_at(0.0) == 0.0);
    CHECK(ty.value_at(0.25) ==
          Approx(0.5 * 1.12837916709551257389615890312).margin(1e-12));
}

TEST_CASE("constant forcing converges in two sweeps") {
    IVProblem p = unit_problem("1");
    auto [y, rep] = picard_solve(p);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 2);
    CHECK(rep.lipschitz_L == 0.0);
    CHECK(rep.contraction_c == 0.0);
    CHECK(rep.warnings.empty());
    CHECK(rep.final_residual <= p.tol);
    // y(1) = 2/sqrt(pi)
    CHECK(y.value_at(1.0) == Approx(1.12837916709551257389615890312).margin(1e-4));
}

TEST_CASE("zero data keeps the zero solution") {
    IVProblem p = unit_problem("0.5*y", 1e-10, 200);
    auto [y, rep] = picard_solve(p);
    CHECK(rep.converged);
    CHECK(rep.iterations == 1);
    for (double v : y.values) CHECK(v == 0.0);
    CHECK(rep.contraction_c ==
          Approx(0.5 * 1.12837916709551257389615890312).epsilon(1e-12));
    CHECK(rep.warnings.empty());
}

TEST_CASE("successive differences decay at the contraction rate") {
    IVProblem p = unit_problem("0.5*y", 1e-10, 200);
    auto [yA, repA] = picard_solve(p);

    auto grid = std::make_shared<Grid>(p.scale.restrict(p.t0, p.t0 + p.horizon), p.step);
    GridFunction start(grid, std::vector<double>(grid->size(), repA.rho));
    auto [yB, repB] = picard_solve(p, start);

    CHECK(repB.converged);
    const double c = repB.contraction_c;
    REQUIRE(c < 1.0);
    for (std::size_t k = 1; k < repB.residual_trace.size(); ++k) {
        CAPTURE(k);
        CHECK(repB.residual_trace[k] <= c * repB.residual_trace[k - 1] + 1e-12);
    }
    // certificate for the returned iterate
    CHECK(repB.final_residual <= p.tol * (1.0 + c) / (1.0 - c));

    // both starts land on the same fixed point
    double gap = 0.0;
    for (std::size_t i = 0; i < yA.size(); ++i)
        gap = std::max(gap, std::fabs(yA.values[i] - yB.values[i]));
    CHECK(gap <= 2.0 * p.tol);
}

TEST_CASE("starting iterates must live on the problem grid") {
    IVProblem p = unit_problem("1");
    auto wrong = std::make_shared<Grid>(p.scale, 2e-3);
    GridFunction y0(wrong, std::vector<double>(wrong->size(), 0.0));
    CHECK_THROWS_AS(picard_solve(p, y0), tsfrac::BadRange);
}

TEST_CASE("non-contractive problems stop and say why") {
    IVProblem p = unit_problem("2*y+1", 1e-8, 5);
    auto [y, rep] = picard_solve(p);
    CHECK_FALSE(rep.converged);
    CHECK(rep.iterations == 5);
    CHECK(rep.residual_trace.size() == 5);
    auto has = [&rep](const char* w) {
        for (const auto& s : rep.warnings)
            if (s == w) return true;
        return false;
    };
    CHECK(has("no_contraction"));
    CHECK(has("max_iter_exhausted"));
}

TEST_CASE("right-hand side domain faults carry solver context") {
    IVProblem p = unit_problem("1/(t-0.5)");
    p.step = 0.5;  // puts a node exactly on the pole
    try {
        picard_solve(p);
        FAIL("expected DomainError");
    } catch (const tsfrac::DomainError& e) {
        CHECK(std::string(e.what()).find("right-hand side") != std::string::npos);
    }
}

TEST_CASE("solving on a purely discrete scale") {
    IVProblem p{TimeScale::points({0.0, 0.5, 1.0}), 0.0, 1.0, 0.5,
                Expr::parse("1"),                   0.5, 1e-12, 16};
    auto [y, rep] = picard_solve(p);
    CHECK(rep.converged);
    CHECK(rep.iterations <= 2);
    CHECK(y.value_at(0.0) == 0.0);
    // mu(0) * (0.5)^{-1/2} / Gamma(1/2) = 1/sqrt(2 pi)
    CHECK(y.value_at(0.5) == Approx(0.398942280401432677939946059934).margin(1e-14));
}
