#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "polariton/error.hpp"
#include "polariton/quadrature.hpp"

using namespace polariton;
using cplx = std::complex<double>;
using std::numbers::pi;

TEST_CASE("normalised distributions") {
    const auto lor = integrate_real_line([](double v) { return cplx(1.0 / (pi * (1 + v * v))); }, {0.0}, 10.0);
    CHECK(std::abs(lor.value - 1.0) < 1e-10);
    const auto gau = integrate_real_line([](double v) { return cplx(std::exp(-v * v) / std::sqrt(pi)); }, {}, 10.0);
    CHECK(std::abs(gau.value - 1.0) < 1e-12);
}

TEST_CASE("Lorentzian convolution has a closed form") {
    // int F(v) / (gamma + i(dw + k v)) dv = 1 / (gamma + k + i dw)
    for (double dw : {-250.0, -3.0, 0.0, 0.7, 120.0}) {
        const double k = 100.0;
        auto f = [&](double v) { return cplx(1.0 / (pi * (1 + v * v))) / cplx(1.0, dw + k * v); };
        const auto r = integrate_real_line(f, {0.0, -dw / k}, 10.0);
        const cplx ref = 1.0 / cplx(1.0 + k, dw);
        CHECK(std::abs(r.value - ref) / std::abs(ref) < 1e-7);
        CHECK(r.abs_error < 1e-6 * std::abs(ref) + 1e-12);
    }
}

TEST_CASE("narrow peak far from the origin") {
    const double c = 3.3, w = 1e-4;
    auto f = [&](double v) { return cplx(w / (pi * ((v - c) * (v - c) + w * w))); };
    const auto r = integrate_real_line(f, {c}, 10.0);
    CHECK(std::abs(r.value - 1.0) < 1e-8);
}

TEST_CASE("evaluation cap") {
    QuadOptions o;
    o.max_evals = 40;
    o.rel_tol = 1e-14;
    auto f = [](double v) { return cplx(std::cos(40 * v) / (1 + v * v)); };
    CHECK_THROWS_AS(integrate_real_line(f, {}, 10.0, o), QuadratureError);
}
