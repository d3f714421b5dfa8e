#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <cstring>
#include <vector>

#include "tsfrac/errors.hpp"
#include "tsfrac/fractional.hpp"
#include "tsfrac/grid.hpp"
#include "tsfrac/oracle.hpp"
#include "tsfrac/specfun.hpp"
#include "tsfrac/timescale.hpp"

using Catch::Approx;
using namespace tsfrac;

namespace {

GridFunction ones(const TimeScale& ts, double step) {
    return sample(ts, [](double) { return 1.0; }, step);
}

}  // namespace

TEST_CASE("order validation") {
    CHECK_NOTHROW(FracOrder(0.5));
    CHECK_NOTHROW(FracOrder(-0.5));
    CHECK_NOTHROW(FracOrder(2.5));
    CHECK(FracOrder(-0.25).negative());
    CHECK_FALSE(FracOrder(0.25).negative());
    CHECK_THROWS_AS(FracOrder(1.0), tsfrac::UseIntegerCalculus);
    CHECK_THROWS_AS(FracOrder(0.0), tsfrac::UseIntegerCalculus);
    CHECK_THROWS_AS(FracOrder(-1.0), tsfrac::InvalidOrder);
    CHECK_THROWS_AS(FracOrder(-1.5), tsfrac::InvalidOrder);
    CHECK_THROWS_AS(FracOrder(std::nan("")), tsfrac::InvalidOrder);
}

TEST_CASE("discrete half-order integral of the constant function") {
    // On {0,1,2,3,4} the integral is a plain weighted sum of kernel values.
    TimeScale ts = TimeScale::points({0.0, 1.0, 2.0, 3.0, 4.0});
    GridFunction h = ones(ts, 1.0);
    FracOrder half(0.5);

    CHECK(frac_integral(h, 0.0, half, 0.0) == 0.0);
    // t = 1: 1^{-1/2} / Gamma(1/2) = 1/sqrt(pi)
    CHECK(frac_integral(h, 0.0, half, 1.0) ==
          Approx(0.564189583547756286948079451561).epsilon(1e-14));
    // t = 2: (2^{-1/2} + 1) / sqrt(pi)
    CHECK(frac_integral(h, 0.0, half, 2.0) ==
          Approx(0.963131863949188964888025511495).epsilon(1e-14));
}

TEST_CASE("discrete half-order derivative of the constant function") {
    TimeScale ts = TimeScale::points({0.0, 1.0, 2.0, 3.0, 4.0});
    GridFunction h = ones(ts, 1.0);

    // D^{1/2} 1 at t = 1 equals 1/sqrt(2 pi) on the integer grid
    CHECK(frac_derivative(h, 0.0, FracOrder(0.5), 1.0) ==
          Approx(0.398942280401432677939946059934).epsilon(1e-12));
}

TEST_CASE("negative order swaps the two operators exactly") {
    TimeScale ts({Segment::interval(0.0, 1.0), Segment::point(1.5)});
    GridFunction h = sample(ts, [](double t) { return t + 0.25; }, 0.05);

    const double via_int = frac_integral(h, 0.0, FracOrder(0.5), 1.0);
    const double via_der = frac_derivative(h, 0.0, FracOrder(-0.5), 1.0);
    CHECK(via_der == via_int);

    const double der = frac_derivative(h, 0.0, FracOrder(0.5), 1.0);
    const double from_int = frac_integral(h, 0.0, FracOrder(-0.5), 1.0);
    CHECK(from_int == der);
}

TEST_CASE("grid and pointwise evaluations agree") {
    TimeScale ts({Segment::interval(0.0, 1.0), Segment::point(2.0)});
    GridFunction h = sample(ts, [](double t) { return std::exp(0.5 * t); }, 0.05);
    FracOrder a(0.4);

    GridFunction gi = frac_integral_grid(h, 0.0, a);
    for (double t : {0.0, 0.25, 1.0, 2.0}) {
        CAPTURE(t);
        CHECK(frac_integral(h, 0.0, a, t) == gi.value_at(t));
    }
}

TEST_CASE("half-order derivative is the delta derivative of the conjugate integral") {
    // This composition is how the operator is defined, so the values must be
    // identical down to the last bit, on every kind of scale.
    std::vector<TimeScale> scales = {
        TimeScale::interval(0.0, 1.0),
        TimeScale::points({0.0, 0.5, 1.25, 2.0}),
        TimeScale({Segment::interval(0.0, 1.0), Segment::point(2.0),
                   Segment::interval(3.0, 4.0)}),
    };
    for (const auto& ts : scales) {
        GridFunction h = sample(ts, [](double t) { return std::exp(0.3 * t) + t; }, 0.05);
        for (double av : {0.3, 0.5, 0.7}) {
            CAPTURE(ts.min(), ts.max(), av);
            GridFunction lhs = frac_derivative_grid(h, ts.min(), FracOrder(av));
            GridFunction rhs =
                delta_derivative(frac_integral_grid(h, ts.min(), FracOrder(1.0 - av)));
            REQUIRE(lhs.size() == rhs.size());
            CHECK(std::memcmp(lhs.values.data(), rhs.values.data(),
                              lhs.size() * sizeof(double)) == 0);
        }
    }
}

TEST_CASE("continuous-limit values match the classical power rule") {
    TimeScale ts = TimeScale::interval(0.0, 1.0);
    FracOrder half(0.5);

    GridFunction h1 = ones(ts, 1e-3);
    CHECK(frac_integral(h1, 0.0, half, 1.0) ==
          Approx(1.12837916709551257389615890312).margin(1e-4));  // 2/sqrt(pi)

    GridFunction ht = sample(ts, [](double t) { return t; }, 1e-3);
    // Gamma(2)/Gamma(2.5) * t^{1.5} at t = 1
    CHECK(frac_integral(ht, 0.0, half, 1.0) ==
          Approx(0.752252778063675049264105935414).margin(1e-6));

    // derivative of t: Gamma(2)/Gamma(1.5) * t^{0.5} at t = 0.64
    const double expect = (1.0 / 0.886226925452758013649083741671) * 0.8;
    CHECK(frac_derivative(ht, 0.0, half, 0.64) == Approx(expect).margin(5e-3));
}

TEST_CASE("quadrature is exact for affine integrands") {
    // The per-cell rule integrates (t-s)^{gamma-1} * (linear in s) in closed
    // form, so affine data incurs only roundoff regardless of the step.
    TimeScale ts = TimeScale::interval(0.0, 1.0);
    GridFunction f = sample(ts, [](double t) { return 3.0 * t + 2.0; }, 0.125);
    const double got = frac_integral(f, 0.0, FracOrder(0.5), 1.0);
    const double expect = 3.0 * 0.752252778063675049264105935414 +
                          2.0 * 1.12837916709551257389615890312;
    CHECK(got == Approx(expect).epsilon(1e-13));
}

TEST_CASE("orders above one use the longer kernel memory") {
    TimeScale ts = TimeScale::interval(0.0, 1.0);
    GridFunction ht = sample(ts, [](double t) { return t; }, 1e-3);

    const double got = frac_integral(ht, 0.0, FracOrder(1.5), 1.0);
    const double expect = oracle::classical_rl_power(1.5, 1.0, 1.0, 0.0);
    CHECK(got == Approx(expect).epsilon(1e-10));

    // derivative of order 1.5 = half-order derivative after one delta derivative
    GridFunction hq = sample(ts, [](double t) { return t * t; }, 1e-3);
    const double d = frac_derivative(hq, 0.0, FracOrder(1.5), 0.5);
    const double dexpect = oracle::classical_rl_power(-1.5, 2.0, 0.5, 0.0);
    CHECK(d == Approx(dexpect).epsilon(5e-3));
}

TEST_CASE("operators are linear in the data") {
    TimeScale ts({Segment::interval(0.0, 1.0), Segment::point(1.5)});
    GridFunction f = sample(ts, [](double t) { return std::sin(t + 0.3); }, 0.05);
    GridFunction g = sample(ts, [](double t) { return t * t - 0.5; }, 0.05);
    GridFunction mix = f;
    for (std::size_t i = 0; i < mix.size(); ++i)
        mix.values[i] = 1.75 * f.values[i] - 0.5 * g.values[i];

    FracOrder a(0.6);
    GridFunction If = frac_integral_grid(f, 0.0, a);
    GridFunction Ig = frac_integral_grid(g, 0.0, a);
    GridFunction Im = frac_integral_grid(mix, 0.0, a);
    for (std::size_t i = 0; i < Im.size(); ++i) {
        CAPTURE(i);
        CHECK(Im.values[i] ==
              Approx(1.75 * If.values[i] - 0.5 * Ig.values[i]).margin(1e-12));
    }
}

TEST_CASE("integral of a nonnegative function is nonnegative") {
    TimeScale ts({Segment::interval(0.0, 2.0), Segment::point(3.0)});
    GridFunction f = sample(ts, [](double t) { return 1.0 + std::sin(t); }, 0.05);
    GridFunction If = frac_integral_grid(f, 0.0, FracOrder(0.5));
    for (double v : If.values) CHECK(v >= -1e-14);
}

TEST_CASE("window validation for pointwise evaluation") {
    TimeScale ts = TimeScale::points({0.0, 1.0, 2.0});
    GridFunction h = ones(ts, 1.0);
    CHECK_THROWS_AS(frac_integral(h, 1.0, FracOrder(0.5), 0.0), tsfrac::BadRange);
    CHECK_THROWS_AS(frac_integral(h, 0.0, FracOrder(0.5), 1.5), tsfrac::NotInScale);
    // the last node of a discrete scale has no delta derivative
    CHECK_THROWS_AS(frac_derivative(h, 0.0, FracOrder(0.5), 2.0), tsfrac::OutsideKappa);
}

TEST_CASE("index identity defects vanish only in the continuous limit") {
    // Continuous scale: both identities hold up to quadrature error.
    TimeScale cont = TimeScale::interval(0.0, 1.0);
    GridFunction hc = ones(cont, 1e-3);
    CHECK(verify_semigroup(hc, 0.0, FracOrder(0.5), FracOrder(0.5)) < 5e-3);

    GridFunction ht = sample(cont, [](double t) { return t; }, 1e-3);
    CHECK(verify_left_inverse(ht, 0.0, FracOrder(0.5)) < 5e-3);

    // Discrete scale: the defects are structural, not numerical.
    TimeScale disc = TimeScale::points({0.0, 1.0, 2.0});
    GridFunction hd = ones(disc, 1.0);
    const double sg = verify_semigroup(hd, 0.0, FracOrder(0.5), FracOrder(0.5));
    CHECK(sg == Approx(1.68169011381620932846223247325).margin(1e-12));  // 2 - 1/pi

    const double li = verify_left_inverse(hd, 0.0, FracOrder(0.5));
    CHECK(li == Approx(0.681690113816209328462232473255).margin(1e-12));  // 1 - 1/pi
}

TEST_CASE("identity defects shrink under grid refinement") {
    TimeScale cont = TimeScale::interval(0.0, 1.0);
    GridFunction coarse = ones(cont, 1e-2);
    GridFunction fine = ones(cont, 1e-3);
    const double dc = verify_semigroup(coarse, 0.0, FracOrder(0.5), FracOrder(0.5));
    const double df = verify_semigroup(fine, 0.0, FracOrder(0.5), FracOrder(0.5));
    CHECK(df < dc);
}

TEST_CASE("representability classifier") {
    TimeScale ts = TimeScale::interval(0.0, 1.0);
    const double step = 1e-2;

    GridFunction root = sample(ts, [](double t) { return std::sqrt(t); }, step);
    auto r1 = check_representable(root, 0.0, 1.0, FracOrder(0.5));
    CHECK(r1.vanishes_at_a);
    CHECK(r1.c1_ok);
    CHECK(r1.member);

    // 1/sqrt(t) with the left endpoint patched to keep the samples finite
    auto grid = std::make_shared<Grid>(ts, step);
    std::vector<double> vals(grid->size());
    for (std::size_t i = 1; i < grid->size(); ++i) vals[i] = 1.0 / std::sqrt(grid->node(i));
    vals[0] = vals[1];
    GridFunction spike{grid, std::move(vals)};
    auto r2 = check_representable(spike, 0.0, 1.0, FracOrder(0.5));
    CHECK_FALSE(r2.vanishes_at_a);
    CHECK_FALSE(r2.member);

    GridFunction flat = ones(ts, step);
    auto r3 = check_representable(flat, 0.0, 1.0, FracOrder(0.5));
    CHECK(r3.vanishes_at_a);   // the auxiliary integral of a bounded f vanishes at a
    CHECK_FALSE(r3.c1_ok);     // but its slope blows up like 1/sqrt(t)
    CHECK_FALSE(r3.member);
}

TEST_CASE("round trip holds for representable data") {
    TimeScale ts = TimeScale::interval(0.0, 1.0);
    GridFunction f = sample(ts, [](double t) { return t; }, 1e-3);
    auto r = verify_right_inverse(f, 0.0, FracOrder(0.5));
    CHECK(r.member);
    CHECK(r.defect < 5e-3);

    GridFunction flat = ones(ts, 1e-3);
    auto r2 = verify_right_inverse(flat, 0.0, FracOrder(0.5));
    CHECK_FALSE(r2.member);
}

TEST_CASE("composed operators need orders inside the unit interval") {
    TimeScale ts = TimeScale::interval(0.0, 1.0);
    GridFunction h = ones(ts, 0.1);
    CHECK_THROWS_AS(verify_semigroup(h, 0.0, FracOrder(1.5), FracOrder(0.5)),
                    tsfrac::InvalidOrder);
    CHECK_THROWS_AS(verify_left_inverse(h, 0.0, FracOrder(2.5)), tsfrac::InvalidOrder);
}
