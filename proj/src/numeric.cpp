#include "resiq/numeric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "resiq/error.hpp"

namespace resiq {

double find_root(const std::function<double(double)>& f, double lo, double hi, double rel_tol,
                 double abs_tol)
{
    double a = lo;
    double b = hi;
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0)) {
        throw std::invalid_argument("find_root: endpoints do not bracket a sign change");
    }

    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;

    for (int iter = 0; iter < 300; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol = 2.0 * rel_tol * std::abs(b) + 0.5 * abs_tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol || fb == 0.0) {
            return b;
        }
        if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
            // Inverse quadratic / secant step.
            const double s = fb / fa;
            double p;
            double q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            const double min1 = 3.0 * xm * q - std::abs(tol * q);
            const double min2 = std::abs(e * q);
            if (2.0 * p < std::min(min1, min2)) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        if (std::abs(d) > tol) {
            b += d;
        } else {
            b += xm > 0.0 ? tol : -tol;
        }
        fb = f(b);
        if (fb == 0.0) return b;
    }
    throw ConvergenceError("find_root: Brent iteration budget exhausted");
}

ScalarMaxResult maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                double rel_tol, int max_iterations)
{
    if (!(lo < hi)) throw std::invalid_argument("maximize_scalar: empty bracket");
    constexpr double kInvPhi = 0.6180339887498949;

    double a = lo;
    double b = hi;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = f(x1);
    double f2 = f(x2);

    ScalarMaxResult result;
    int iter = 0;
    while (iter < max_iterations) {
        const double scale = std::max({std::abs(a), std::abs(b), 1.0});
        if (b - a <= rel_tol * scale) break;
        if (f1 < f2) {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + kInvPhi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - kInvPhi * (b - a);
            f1 = f(x1);
        }
        ++iter;
    }
    if (f1 >= f2) {
        result.x = x1;
        result.fx = f1;
    } else {
        result.x = x2;
        result.fx = f2;
    }
    result.iterations = iter;
    result.bracket_width = b - a;
    return result;
}

SimplexResult maximize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, double step, double tol,
                               int max_iterations)
{
    const std::size_t n = x0.size();
    if (n == 0) throw std::invalid_argument("maximize_simplex: empty start point");

    // Minimize -f with the standard reflection/expansion/contraction scheme.
    auto cost = [&f](const std::vector<double>& x) { return -f(x); };

    std::vector<std::vector<double>> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    for (std::size_t i = 0; i < n; ++i) {
        simplex[i + 1][i] += step;
    }
    for (std::size_t i = 0; i <= n; ++i) {
        fv[i] = cost(simplex[i]);
    }

    SimplexResult result;
    int iter = 0;
    for (; iter < max_iterations; ++iter) {
        std::vector<std::size_t> order(n + 1);
        for (std::size_t i = 0; i <= n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&fv](std::size_t a, std::size_t b) { return fv[a] < fv[b]; });

        const std::size_t best = order[0];
        const std::size_t worst = order[n];
        const std::size_t second_worst = order[n - 1];

        double spread = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            spread = std::max(spread, std::abs(simplex[worst][i] - simplex[best][i]));
        }
        const double fspread = std::abs(fv[worst] - fv[best]);
        if (spread < tol && fspread < tol * (1.0 + std::abs(fv[best]))) {
            result.converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t j = 0; j < n; ++j) centroid[j] += simplex[i][j];
        }
        for (std::size_t j = 0; j < n; ++j) centroid[j] /= static_cast<double>(n);

        auto blend = [&](double coeff) {
            std::vector<double> p(n);
            for (std::size_t j = 0; j < n; ++j) {
                p[j] = centroid[j] + coeff * (simplex[worst][j] - centroid[j]);
            }
            return p;
        };

        std::vector<double> reflected = blend(-1.0);
        const double fr = cost(reflected);
        if (fr < fv[best]) {
            std::vector<double> expanded = blend(-2.0);
            const double fe = cost(expanded);
            if (fe < fr) {
                simplex[worst] = std::move(expanded);
                fv[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                fv[worst] = fr;
            }
        } else if (fr < fv[second_worst]) {
            simplex[worst] = std::move(reflected);
            fv[worst] = fr;
        } else {
            std::vector<double> contracted = blend(fr < fv[worst] ? -0.5 : 0.5);
            const double fc = cost(contracted);
            if (fc < std::min(fr, fv[worst])) {
                simplex[worst] = std::move(contracted);
                fv[worst] = fc;
            } else {
                // Shrink toward the best vertex.
                for (std::size_t i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    for (std::size_t j = 0; j < n; ++j) {
                        simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
                    }
                    fv[i] = cost(simplex[i]);
                }
            }
        }
    }

    std::size_t best = 0;
    for (std::size_t i = 1; i <= n; ++i) {
        if (fv[i] < fv[best]) best = i;
    }
    result.x = simplex[best];
    result.fx = -fv[best];
    result.iterations = iter;
    return result;
}

} // namespace resiq
