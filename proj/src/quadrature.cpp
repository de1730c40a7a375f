#include "tempus/quadrature.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "tempus/errors.hpp"

namespace tempus {

namespace {

QuadRule make_gl(int n) {
    // Newton iteration on P_n with the three-term recurrence
    QuadRule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-15) {
                p0 = 1.0;
                p1 = x;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                pp = n * (x * p1 - p0) / (x * x - 1.0);
                break;
            }
        }
        r.x[i] = -x;
        r.x[n - 1 - i] = x;
        double w = 2.0 / ((1.0 - x * x) * pp * pp);
        r.w[i] = w;
        r.w[n - 1 - i] = w;
    }
    if (n % 2 == 1) r.x[n / 2] = 0.0;
    return r;
}

} // namespace

const QuadRule& gauss_legendre(int n) {
    static std::map<int, QuadRule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end()) it = cache.emplace(n, make_gl(n)).first;
    return it->second;
}

QuadRule composite_gl(double a, double b, double max_h, int nodes_per_panel) {
    if (!(b > a)) return {};
    int panels = std::max(1, static_cast<int>(std::ceil((b - a) / max_h)));
    const QuadRule& base = gauss_legendre(nodes_per_panel);
    QuadRule out;
    out.x.reserve(panels * nodes_per_panel);
    out.w.reserve(panels * nodes_per_panel);
    double h = (b - a) / panels;
    for (int p = 0; p < panels; ++p) {
        double lo = a + p * h, mid = lo + 0.5 * h, half = 0.5 * h;
        for (int j = 0; j < nodes_per_panel; ++j) {
            out.x.push_back(mid + half * base.x[j]);
            out.w.push_back(half * base.w[j]);
        }
    }
    return out;
}

namespace {

using cval = std::complex<double>;

cval gl_apply(const std::function<cval(double)>& f, double a, double b,
              const QuadRule& rule) {
    double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    cval s = 0.0;
    for (size_t j = 0; j < rule.x.size(); ++j)
        s += rule.w[j] * f(mid + half * rule.x[j]);
    return half * s;
}

cval adapt(const std::function<cval(double)>& f, double a, double b, cval whole,
           double tol, int depth, const QuadRule& lo, const QuadRule& hi) {
    double m = 0.5 * (a + b);
    cval left = gl_apply(f, a, m, hi);
    cval right = gl_apply(f, m, b, hi);
    if (std::abs(left + right - whole) < tol || depth <= 0)
        return left + right;
    return adapt(f, a, m, left, 0.5 * tol, depth - 1, lo, hi) +
           adapt(f, m, b, right, 0.5 * tol, depth - 1, lo, hi);
}

} // namespace

cval integrate_adaptive(const std::function<cval(double)>& f, double a,
                        double b, double tol, int max_depth) {
    const QuadRule& lo = gauss_legendre(8);
    const QuadRule& hi = gauss_legendre(16);
    cval whole = gl_apply(f, a, b, hi);
    return adapt(f, a, b, whole, tol, max_depth, lo, hi);
}

} // namespace tempus
