#include "stieltjes/oscillator_shape.hpp"

namespace stieltjes::oscillator {

double alpha(long k) { return k == 1 ? 0.5 : 1.0 / static_cast<double>(k); }

double x(long n) {
    if (n <= 1) return 1.0;
    if (n % 2 == 0) {
        long k = n / 2;
        if (k == 1) return 2.0 / 3.0;
        double kd = static_cast<double>(k);
        return 2.0 / (3.0 * (kd - 1.0) * (kd + 1.0));
    }
    double kd = static_cast<double>((n - 1) / 2);
    return 2.0 / (3.0 * kd * (kd + 1.0));
}

long locate(double t) {
    long lo = 1;  // x(lo) >= t
    long hi = 2;
    while (x(hi) >= t) {
        lo = hi;
        hi *= 2;
    }
    while (hi - lo > 1) {
        long mid = lo + (hi - lo) / 2;
        if (x(mid) >= t) lo = mid;
        else hi = mid;
    }
    return lo;
}

double slope(long n) { return n % 2 == 1 ? -1.0 : 1.0; }

double value(double t) {
    if (t <= 0.0) return 0.0;
    long n = locate(t);
    if (n % 2 == 1) {
        if (t == x(n)) return 0.0;  // odd nodes are zeros of g
        long k = (n + 1) / 2;
        double x2k = x(2 * k);
        return alpha(k) * x2k - (t - x2k);
    }
    return t - x(n + 1);
}

}  // namespace stieltjes::oscillator
