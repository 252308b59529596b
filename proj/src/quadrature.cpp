#include "fluxred/quadrature.hpp"

#include <map>
#include <mutex>

namespace fluxred {

namespace {

// Legendre polynomial value and derivative at x via the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 2; k <= n; ++k) {
        double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
    }
    double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

GaussRule compute_gauss(int n) {
    GaussRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        // Chebyshev-based initial guess, then Newton.
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            auto [p, dp] = legendre(n, x);
            double dx = p / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        auto [p, dp] = legendre(n, x);
        (void)p;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

}  // namespace

const GaussRule& gauss_legendre(int n) {
    if (n < 1) throw ConfigError("gauss_legendre: need at least one point");
    static std::mutex mu;
    static std::map<int, GaussRule> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, compute_gauss(n)).first;
    return it->second;
}

const std::array<TrianglePoint, 7>& triangle_rule_deg5() {
    static const std::array<TrianglePoint, 7> rule = [] {
        const double s15 = std::sqrt(15.0);
        const double a = (6.0 - s15) / 21.0;
        const double b = (6.0 + s15) / 21.0;
        const double wa = (155.0 - s15) / 1200.0;
        const double wb = (155.0 + s15) / 1200.0;
        std::array<TrianglePoint, 7> r{};
        r[0] = {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}, 9.0 / 40.0};
        r[1] = {{a, a, 1.0 - 2.0 * a}, wa};
        r[2] = {{a, 1.0 - 2.0 * a, a}, wa};
        r[3] = {{1.0 - 2.0 * a, a, a}, wa};
        r[4] = {{b, b, 1.0 - 2.0 * b}, wb};
        r[5] = {{b, 1.0 - 2.0 * b, b}, wb};
        r[6] = {{1.0 - 2.0 * b, b, b}, wb};
        return r;
    }();
    return rule;
}

}  // namespace fluxred
