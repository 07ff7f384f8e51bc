#include "oedcalib/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>

#include "parallel_util.hpp"

namespace oedcalib {

namespace {

double checked_eval(const std::function<double(double)>& g, double y) {
    const double v = g(y);
    if (!std::isfinite(v))
        throw NonFiniteValue("function returned non-finite value at y=" + std::to_string(y));
    return v;
}

}  // namespace

double invert_monotone(const std::function<double(double)>& g, double target,
                       const Interval& domain, double tol,
                       const std::function<double(double)>& dg) {
    if (!(tol > 0)) throw DomainError("invert_monotone: tol must be positive");
    const double scale = std::max(1.0, std::abs(target));
    double a = domain.lo;
    double b = domain.hi;
    double ga = checked_eval(g, a);
    double gb = checked_eval(g, b);
    const bool increasing = gb >= ga;
    const double glo = std::min(ga, gb);
    const double ghi = std::max(ga, gb);
    if (target < glo || target > ghi) {
        // endpoint already satisfies the tolerance
        if (std::abs(ga - target) <= tol * scale) return a;
        if (std::abs(gb - target) <= tol * scale) return b;
        throw TargetOutOfRange("invert_monotone: target " + std::to_string(target) +
                               " not bracketed by [" + std::to_string(glo) + ", " +
                               std::to_string(ghi) + "]");
    }

    const double width_goal = 1e-12 * domain.length();
    while (b - a > width_goal) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;  // hit representable resolution
        const double gm = checked_eval(g, mid);
        const bool left = increasing ? (gm >= target) : (gm <= target);
        if (left)
            b = mid;
        else
            a = mid;
    }
    double y = 0.5 * (a + b);

    if (dg) {
        for (int step = 0; step < 5; ++step) {
            const double gy = checked_eval(g, y);
            if (std::abs(gy - target) <= 0.01 * tol * scale) break;
            const double d = dg(y);
            if (!std::isfinite(d) || d == 0.0) break;
            const double next = domain.clamp(y - (gy - target) / d);
            if (next == y) break;
            y = next;
        }
    }

    if (std::abs(checked_eval(g, y) - target) > tol * scale)
        throw NonFiniteValue("invert_monotone: tolerance not reached (function not monotone?)");
    return y;
}

namespace {

QuadratureRule build_rule(int n) {
    // Newton iteration on Legendre P_n from the Chebyshev-like initial guess.
    QuadratureRule rule;
    rule.nodes.resize(n);
    rule.weights.resize(n);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            pp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / pp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        rule.nodes[i] = -x;
        rule.nodes[n - 1 - i] = x;
        const double w = 2.0 / ((1.0 - x * x) * pp * pp);
        rule.weights[i] = w;
        rule.weights[n - 1 - i] = w;
    }
    if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre_rule(int nodes) {
    if (nodes < 2) throw DomainError("gauss_legendre: need at least 2 nodes");
    static std::map<int, QuadratureRule> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto it = cache.find(nodes);
    if (it == cache.end()) it = cache.emplace(nodes, build_rule(nodes)).first;
    return it->second;
}

double gauss_legendre(const std::function<double(double)>& g, const Interval& domain,
                      int nodes) {
    const QuadratureRule& rule = gauss_legendre_rule(nodes);
    const double c = 0.5 * (domain.lo + domain.hi);
    const double h = 0.5 * domain.length();
    double sum = 0.0;
    for (int i = 0; i < nodes; ++i) sum += rule.weights[i] * checked_eval(g, c + h * rule.nodes[i]);
    return h * sum;
}

double golden_section(const std::function<double(double)>& g, double lo, double hi,
                      double tol) {
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - phi * (b - a);
    double x2 = a + phi * (b - a);
    double f1 = g(x1), f2 = g(x2);
    while (b - a > tol) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = g(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = g(x2);
        }
    }
    return 0.5 * (a + b);
}

namespace {

using BoxFn = std::function<double(std::span<const double>)>;

constexpr double kInf = std::numeric_limits<double>::infinity();

double safe_eval(const BoxFn& g, std::span<const double> x) {
    const double v = g(x);
    return std::isfinite(v) ? v : kInf;
}

void clamp_to(std::span<const Interval> box, std::vector<double>& x) {
    for (std::size_t i = 0; i < x.size(); ++i) x[i] = box[i].clamp(x[i]);
}

/// Nelder-Mead restricted to the box by clamping proposed vertices.
MinimizeResult nelder_mead(const BoxFn& g, std::span<const Interval> box,
                           const std::vector<double>& start) {
    const int k = static_cast<int>(box.size());
    struct Vertex {
        std::vector<double> x;
        double f;
    };
    std::vector<Vertex> simplex;
    simplex.reserve(k + 1);
    simplex.push_back({start, safe_eval(g, start)});
    for (int i = 0; i < k; ++i) {
        std::vector<double> x = start;
        const double h = 0.05 * box[i].length();
        x[i] = (x[i] + h <= box[i].hi) ? x[i] + h : x[i] - h;
        simplex.push_back({x, safe_eval(g, x)});
    }
    auto order = [&]() {
        std::sort(simplex.begin(), simplex.end(),
                  [](const Vertex& a, const Vertex& b) { return a.f < b.f; });
    };
    order();
    const int max_iter = 400 * k;
    for (int iter = 0; iter < max_iter; ++iter) {
        const Vertex& best = simplex.front();
        const Vertex& worst = simplex.back();
        double diam = 0.0;
        for (int i = 0; i < k; ++i)
            diam = std::max(diam, std::abs(worst.x[i] - best.x[i]) / box[i].length());
        const bool f_flat = std::isfinite(worst.f) &&
                            worst.f - best.f <= 1e-14 * (1.0 + std::abs(best.f));
        if (diam < 1e-11 || f_flat) break;

        std::vector<double> centroid(k, 0.0);
        for (int v = 0; v < k; ++v)
            for (int i = 0; i < k; ++i) centroid[i] += simplex[v].x[i] / k;

        auto propose = [&](double coef) {
            std::vector<double> x(k);
            for (int i = 0; i < k; ++i) x[i] = centroid[i] + coef * (centroid[i] - worst.x[i]);
            clamp_to(box, x);
            return x;
        };

        std::vector<double> xr = propose(1.0);
        const double fr = safe_eval(g, xr);
        if (fr < best.f) {
            std::vector<double> xe = propose(2.0);
            const double fe = safe_eval(g, xe);
            if (fe < fr)
                simplex.back() = {std::move(xe), fe};
            else
                simplex.back() = {std::move(xr), fr};
        } else if (fr < simplex[k - 1].f) {
            simplex.back() = {std::move(xr), fr};
        } else {
            const bool outside = fr < worst.f;
            std::vector<double> xc(k);
            const std::vector<double>& towards = outside ? xr : worst.x;
            for (int i = 0; i < k; ++i) xc[i] = 0.5 * (centroid[i] + towards[i]);
            clamp_to(box, xc);
            const double fc = safe_eval(g, xc);
            if (fc < std::min(fr, worst.f)) {
                simplex.back() = {std::move(xc), fc};
            } else {
                for (int v = 1; v <= k; ++v) {
                    for (int i = 0; i < k; ++i)
                        simplex[v].x[i] = 0.5 * (simplex[0].x[i] + simplex[v].x[i]);
                    simplex[v].f = safe_eval(g, simplex[v].x);
                }
            }
        }
        order();
    }
    return {simplex.front().x, simplex.front().f};
}

/// One-dimensional polish along each coordinate in turn.
MinimizeResult coordinate_polish(const BoxFn& g, std::span<const Interval> box,
                                 MinimizeResult current) {
    const int k = static_cast<int>(box.size());
    for (int sweep = 0; sweep < 2; ++sweep) {
        for (int i = 0; i < k; ++i) {
            const double h = 0.02 * box[i].length();
            const double lo = std::max(box[i].lo, current.point[i] - h);
            const double hi = std::min(box[i].hi, current.point[i] + h);
            if (hi <= lo) continue;
            std::vector<double> x = current.point;
            const double xi = golden_section(
                [&](double t) {
                    x[i] = t;
                    return safe_eval(g, x);
                },
                lo, hi, 1e-12 * box[i].length());
            x[i] = xi;
            const double fx = safe_eval(g, x);
            if (fx < current.value) {
                current.point = x;
                current.value = fx;
            }
        }
    }
    return current;
}

double halton(int index, int base) {
    double f = 1.0, r = 0.0;
    for (int i = index; i > 0; i /= base) {
        f /= base;
        r += f * (i % base);
    }
    return r;
}

}  // namespace

MinimizeResult minimize_box(const BoxFn& g, std::span<const Interval> box, int starts) {
    const int k = static_cast<int>(box.size());
    if (k < 1 || k > 6) throw DomainError("minimize_box: box dimension must be in [1,6]");
    if (starts < 1) throw DomainError("minimize_box: starts must be positive");
    static constexpr int primes[6] = {2, 3, 5, 7, 11, 13};

    std::vector<std::vector<double>> start_points;
    start_points.reserve(starts);
    {
        std::vector<double> center(k);
        for (int i = 0; i < k; ++i) center[i] = box[i].lerp(0.5);
        start_points.push_back(std::move(center));
    }
    for (int s = 1; s < starts; ++s) {
        std::vector<double> x(k);
        for (int i = 0; i < k; ++i) x[i] = box[i].lerp(halton(s, primes[i]));
        start_points.push_back(std::move(x));
    }

    std::vector<MinimizeResult> results(start_points.size());
    std::vector<double> start_values(start_points.size());
    detail::parallel_for(static_cast<int>(start_points.size()), [&](int s) {
        start_values[s] = safe_eval(g, start_points[s]);
        if (!std::isfinite(start_values[s])) {
            results[s] = {start_points[s], kInf};
            return;
        }
        results[s] = coordinate_polish(g, box, nelder_mead(g, box, start_points[s]));
    });

    int best = -1;
    for (std::size_t s = 0; s < results.size(); ++s) {
        if (!std::isfinite(results[s].value)) continue;
        if (best < 0 || results[s].value < results[best].value) best = static_cast<int>(s);
    }
    if (best < 0) throw NonFiniteValue("minimize_box: objective non-finite at every start");
    return results[best];
}

}  // namespace oedcalib
