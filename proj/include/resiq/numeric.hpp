#pragma once

#include <cmath>
#include <functional>
#include <vector>

namespace resiq {

/// Neumaier-compensated accumulator; summation order does not perturb the
/// result beyond one final rounding.
class NeumaierSum {
  public:
    void add(double x)
    {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x)) {
            compensation_ += (sum_ - t) + x;
        } else {
            compensation_ += (x - t) + sum_;
        }
        sum_ = t;
    }

    double value() const { return sum_ + compensation_; }

  private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

/// Brent root find on [lo, hi]; f(lo) and f(hi) must bracket a sign change.
double find_root(const std::function<double(double)>& f, double lo, double hi,
                 double rel_tol = 1e-12, double abs_tol = 1e-300);

struct ScalarMaxResult {
    double x = 0.0;
    double fx = 0.0;
    int iterations = 0;
    double bracket_width = 0.0;
};

/// Golden-section maximization of f on [lo, hi] to the given relative
/// x-tolerance. Assumes f is unimodal on the bracket; returns the best
/// point seen either way.
ScalarMaxResult maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                                double rel_tol = 1e-10, int max_iterations = 200);

struct SimplexResult {
    std::vector<double> x;
    double fx = 0.0;
    int iterations = 0;
    bool converged = false;
};

/// Nelder-Mead maximization from x0 with per-coordinate initial step.
SimplexResult maximize_simplex(const std::function<double(const std::vector<double>&)>& f,
                               std::vector<double> x0, double step = 0.5, double tol = 1e-9,
                               int max_iterations = 2000);

} // namespace resiq
