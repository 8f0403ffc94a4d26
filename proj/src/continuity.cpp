#include "stieltjes/continuity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace stieltjes {

ContinuityVerdict check_g_continuity(const PiecewiseFunction& f, const Derivator& d, double t,
                                     ContinuityMode mode, const ContinuityOptions& opts) {
    const double a = d.a(), b = d.b(), len = b - a;
    std::vector<double> samples;
    auto add = [&](double s) {
        if (s < a || s > b || s == t) return;
        if (mode == ContinuityMode::Left && s > t) return;
        if (mode == ContinuityMode::Right && s < t) return;
        samples.push_back(s);
    };
    for (int i = 0; i <= 60; ++i) {
        add(t - std::ldexp(len, -i));
        add(t + std::ldexp(len, -i));
    }
    for (const double k : merge_knots(d.knots(a, b), f.knots(a, b))) {
        add(k);
        add(0.5 * (k + t));
        for (int i = 10; i <= 50; i += 10) {
            add(k - std::ldexp(len, -i));
            add(k + std::ldexp(len, -i));
        }
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    const double ft = f(t);
    const double delta0 = std::max(d.variation_at(b) - d.variation_at(a), len);
    const double delta_min = std::ldexp(delta0, -(opts.delta_steps - 1));
    ContinuityVerdict verdict;
    for (const double eps : opts.epsilons) {
        double closest = std::numeric_limits<double>::infinity();
        std::optional<double> witness;
        for (const double s : samples) {
            if (std::abs(f(s) - ft) < eps) continue;
            const double rho = d.g_distance(s, t, DistanceKind::Variation);
            if (rho < closest) {
                closest = rho;
                witness = s;
            }
        }
        // Some delta on the grid separates t from every violator iff the closest one is far enough.
        if (witness && closest < delta_min) {
            verdict.pass = false;
            verdict.witness = witness;
            verdict.epsilon = eps;
            return verdict;
        }
    }
    return verdict;
}

}  // namespace stieltjes
