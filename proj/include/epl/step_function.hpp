#pragma once

#include <span>
#include <vector>

#include "epl/distribution.hpp"

namespace epl {

// Cadlag piecewise-constant function: value(t) = values[#{breakpoints <= t}],
// so values[0] holds left of the first breakpoint. Breakpoints strictly
// increase.
class StepFunction {
  public:
    StepFunction(std::vector<double> breakpoints, std::vector<double> values);

    double operator()(double t) const;
    double left_limit(double t) const;

    const std::vector<double>& breakpoints() const { return breakpoints_; }
    const std::vector<double>& values() const { return values_; }
    double value_before() const { return values_.front(); }
    double value_after() const { return values_.back(); }

  private:
    std::vector<double> breakpoints_;
    std::vector<double> values_;
};

// Empirical distribution function F_n(t) = #{X_i <= t}/n, ties merged into a
// single jump.
StepFunction ecdf_build(std::span<const double> values);

// The empirical process U_n(t) = sqrt(n) (F_n(t) - F(t)) of a sample against
// a continuous reference model.
struct EmpiricalProcess {
    StepFunction ecdf;
    DistributionModel model;
    long n = 0;
};

EmpiricalProcess make_empirical_process(std::span<const double> values,
                                        const DistributionModel& model);

double u_process_eval(const EmpiricalProcess& proc, double t);
double u_process_left_limit(const EmpiricalProcess& proc, double t);

// Exact sup over all real t of |U_n(t) - approx(t)|. Within any interval where
// both step functions are constant the difference is monotone in F(t), so the
// supremum is attained at breakpoints, their left limits, or the infinite
// ends.
double sup_distance(const EmpiricalProcess& proc, const StepFunction& approx);

// Exact sup_{|t-s|<delta} |U_n(t) - U_n(s)|, scanned over windows anchored at
// the jump points of U_n.
double max_window_oscillation(const EmpiricalProcess& proc, double delta);

} // namespace epl
