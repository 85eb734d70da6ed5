#pragma once

#include <memory>
#include <string>
#include <vector>

namespace epl {

// Marginal distribution models: the closed forms used throughout plus an
// empirical reference built from a large i.i.d. sample. All closed forms are
// continuous; evaluation, generalized inverse and the running CDF integral
// are exact up to floating point (bisection fallback at 1e-12 where no
// algebraic inverse exists).
class DistributionModel {
  public:
    enum class Form { Uniform01, CantorCdf, Exponential, Normal, EmpiricalReference };

    static DistributionModel uniform01();
    static DistributionModel cantor();
    static DistributionModel exponential(double rate);
    static DistributionModel std_normal();
    static DistributionModel normal(double mean, double sd);
    // sample need not be sorted; it is copied and sorted. error_bound records
    // the DKW-style distance of the sample ECDF from the unknown truth.
    static DistributionModel empirical(std::vector<double> sample, double error_bound);

    Form form() const { return form_; }
    std::string form_name() const;
    bool continuous() const { return form_ != Form::EmpiricalReference; }

    // F(t) = P(X <= t), clamped to 0/1 outside the support.
    double cdf(double t) const;

    // Generalized inverse F^{-1}(u) = sup{ s in support : F(s) <= u }.
    // sup over the empty set returns the left support end. u outside [0,1]
    // is a domain error.
    double quantile(double u) const;

    // I(x) = integral of F from the left support end to x. Used for exact
    // means of ramp kernels: E phi((x-b)/(b-a)) = (I(b)-I(a))/(b-a).
    double cdf_integral(double x) const;

    // Modulus of continuity omega_F(delta): exact for the closed forms
    // (Cantor uses the Hoelder upper bound delta^{log2/log3}); exact sliding
    // window count for empirical references.
    double modulus(double delta) const;

    // Support endpoints; +-infinity for unbounded forms.
    double support_left() const;
    double support_right() const;

    // Parameters (meaningful per form).
    double rate() const { return rate_; }
    double mean() const { return mean_; }
    double sd() const { return sd_; }
    const std::vector<double>& sample() const;
    double sample_error_bound() const { return sample_error_bound_; }

  private:
    DistributionModel() = default;

    Form form_ = Form::Uniform01;
    double rate_ = 1.0;              // Exponential
    double mean_ = 0.0, sd_ = 1.0;   // Normal
    std::shared_ptr<const std::vector<double>> sample_;      // sorted
    std::shared_ptr<const std::vector<double>> sample_cum_;  // prefix sums for cdf_integral
    double sample_error_bound_ = 0.0;
};

// Outcome of checking condition omega_F(delta) <= D |log delta|^{-gamma}.
struct ModulusReport {
    double gamma = 0.0;
    std::vector<double> deltas;
    std::vector<double> omegas;
    std::vector<double> d_required;  // omega * |log delta|^gamma per grid point
    double minimal_d = 0.0;          // max over the grid
    bool satisfied = false;
};

// Sweeps the delta grid (subset of (0, 1/2]) and reports the smallest D that
// makes the log-modulus condition hold on the grid.
ModulusReport log_modulus_report(const DistributionModel& model, double gamma,
                                 const std::vector<double>& delta_grid);

// Cantor function c(x) and its running integral, exposed for reuse and tests.
double cantor_cdf(double x);
double cantor_cdf_integral(double x);

// Standard normal CDF.
double std_normal_cdf(double t);

} // namespace epl
