#include "stieltjes/corpus.hpp"

#include <algorithm>

#include "stieltjes/errors.hpp"

namespace stieltjes {
namespace {

// Plain modulo draw: reproducible across standard libraries, unlike the
// distribution classes.
long draw(std::mt19937_64& rng, long lo, long hi) {
    return lo + static_cast<long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

long draw_nonzero(std::mt19937_64& rng, long mag) {
    long k = draw(rng, 1, mag);
    return draw(rng, 0, 1) ? k : -k;
}

// count distinct integers from [lo, hi], sorted.
std::vector<long> distinct(std::mt19937_64& rng, long lo, long hi, long count) {
    std::vector<long> pool;
    for (long k = lo; k <= hi; ++k) pool.push_back(k);
    for (long i = 0; i < count; ++i) std::swap(pool[i], pool[draw(rng, i, static_cast<long>(pool.size()) - 1)]);
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace

DerivatorSpec random_derivator_spec(std::mt19937_64& rng, const CorpusLimits& limits) {
    for (;;) {
        const long m = draw(rng, 1, limits.max_segments);
        DerivatorSpec spec;
        spec.breakpoints.push_back(0.0);
        for (long k : distinct(rng, 1, 31, m - 1)) spec.breakpoints.push_back(k / 32.0);
        spec.breakpoints.push_back(1.0);
        for (long i = 0; i < m; ++i)
            spec.slopes.push_back(draw(rng, 0, 4) == 0 ? 0.0 : draw_nonzero(rng, 8) / 4.0);
        spec.jumps.assign(m + 1, 0.0);
        const long atoms = draw(rng, 0, std::min<long>(limits.max_atoms, m));
        for (long i : distinct(rng, 0, m - 1, atoms)) spec.jumps[i] = draw_nonzero(rng, 8) / 8.0;
        try {
            (void)Derivator::from_spec(spec);
            return spec;
        } catch (const Error&) {
            // endpoint admissibility failed; redraw
        }
    }
}

InterpolantSpec random_continuous_nodes(std::mt19937_64& rng, double a, double b, const CorpusLimits& limits) {
    const long n = draw(rng, 2, limits.max_f_nodes);
    InterpolantSpec spec;
    std::vector<double> xs{a};
    for (long k : distinct(rng, 1, 15, n - 2)) xs.push_back(a + (b - a) * (k / 16.0));
    xs.push_back(b);
    for (double x : xs) spec.nodes.emplace_back(x, draw(rng, -16, 16) / 16.0);
    return spec;
}

IntervalSet random_interval_set(std::mt19937_64& rng, double a, double b) {
    const long pieces = draw(rng, 1, 4);
    const auto ends = distinct(rng, 0, 32, 2 * pieces);
    IntervalSet set;
    for (long i = 0; i < pieces; ++i) {
        const double lo = a + (b - a) * (ends[2 * i] / 32.0);
        const double hi = a + (b - a) * (ends[2 * i + 1] / 32.0);
        if (draw(rng, 0, 4) == 0) {
            set.add_atom(lo);
            continue;
        }
        set.add(Interval{lo, hi, draw(rng, 0, 1) == 1, draw(rng, 0, 3) == 0});
    }
    return set;
}

std::vector<CorpusMember> make_corpus(int count, std::uint64_t seed, const CorpusLimits& limits) {
    std::mt19937_64 rng(seed);
    std::vector<CorpusMember> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        CorpusMember m;
        m.index = i;
        m.spec = random_derivator_spec(rng, limits);
        m.d = Derivator::from_spec(m.spec);
        m.f_nodes = random_continuous_nodes(rng, m.d.a(), m.d.b(), limits);
        m.f = PiecewiseFunction::interpolant(m.f_nodes);
        m.h_nodes = random_continuous_nodes(rng, 0.0, m.d.variation_at(m.d.b()), limits);
        m.h = PiecewiseFunction::composed(m.h_nodes, m.d.variation_derivator());
        out.push_back(std::move(m));
    }
    return out;
}

}  // namespace stieltjes
