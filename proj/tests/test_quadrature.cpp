#include <doctest.h>

#include <cmath>

#include "fluxred/quadrature.hpp"

using namespace fluxred;

namespace {

double monomial_integral(int k) { return k % 2 == 0 ? 2.0 / (k + 1) : 0.0; }

}  // namespace

TEST_CASE("gauss legendre integrates polynomials exactly") {
    for (int n = 1; n <= 12; ++n) {
        const GaussRule& rule = gauss_legendre(n);
        double wsum = 0.0;
        for (double w : rule.weights) wsum += w;
        CHECK(wsum == doctest::Approx(2.0).epsilon(1e-14));
        for (int k = 0; k <= 2 * n - 1; ++k) {
            double s = 0.0;
            for (int i = 0; i < n; ++i) s += rule.weights[i] * std::pow(rule.nodes[i], k);
            CHECK(s == doctest::Approx(monomial_integral(k)).epsilon(1e-12));
        }
    }
}

TEST_CASE("gauss legendre nodes are sorted and symmetric") {
    const GaussRule& rule = gauss_legendre(10);
    for (int i = 1; i < 10; ++i) CHECK(rule.nodes[i] > rule.nodes[i - 1]);
    for (int i = 0; i < 10; ++i) {
        CHECK(rule.nodes[i] == doctest::Approx(-rule.nodes[9 - i]).epsilon(1e-14));
        CHECK(rule.weights[i] == doctest::Approx(rule.weights[9 - i]).epsilon(1e-14));
    }
}

TEST_CASE("triangle rule is degree-5 exact on the reference triangle") {
    // On the unit right triangle, int x^a y^b = a! b! / (a+b+2)!.
    auto factorial = [](int k) {
        double f = 1.0;
        for (int i = 2; i <= k; ++i) f *= i;
        return f;
    };
    const auto& rule = triangle_rule_deg5();
    double wsum = 0.0;
    for (const auto& pt : rule) wsum += pt.weight;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));

    Vec2 p0{0, 0}, p1{1, 0}, p2{0, 1};
    for (int a = 0; a <= 5; ++a) {
        for (int b = 0; a + b <= 5; ++b) {
            double s = 0.0;
            for (const auto& pt : rule) {
                Vec2 x = pt.bary[0] * p0 + pt.bary[1] * p1 + pt.bary[2] * p2;
                s += pt.weight * std::pow(x.x, a) * std::pow(x.y, b);
            }
            s *= 0.5;  // triangle area
            double exact = factorial(a) * factorial(b) / factorial(a + b + 2);
            CHECK(s == doctest::Approx(exact).epsilon(1e-13));
        }
    }
}
