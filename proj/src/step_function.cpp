#include "epl/step_function.hpp"

#include <algorithm>
#include <cmath>

#include "epl/errors.hpp"

namespace epl {

StepFunction::StepFunction(std::vector<double> breakpoints, std::vector<double> values)
    : breakpoints_(std::move(breakpoints)), values_(std::move(values)) {
    if (values_.size() != breakpoints_.size() + 1)
        throw parameter_error("empproc: step function needs one more value than breakpoints");
    for (std::size_t i = 1; i < breakpoints_.size(); ++i)
        if (!(breakpoints_[i - 1] < breakpoints_[i]))
            throw parameter_error("empproc: step function breakpoints must strictly increase");
}

double StepFunction::operator()(double t) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

double StepFunction::left_limit(double t) const {
    auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), t);
    return values_[static_cast<std::size_t>(it - breakpoints_.begin())];
}

StepFunction ecdf_build(std::span<const double> values) {
    if (values.empty()) throw parameter_error("empproc: cannot build an ECDF from an empty path");
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<double> bp;
    std::vector<double> vals{0.0};
    double n = static_cast<double>(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
        if (i + 1 < sorted.size() && sorted[i + 1] == sorted[i]) continue;  // merge ties
        bp.push_back(sorted[i]);
        vals.push_back(static_cast<double>(i + 1) / n);
    }
    return StepFunction(std::move(bp), std::move(vals));
}

EmpiricalProcess make_empirical_process(std::span<const double> values,
                                        const DistributionModel& model) {
    return EmpiricalProcess{ecdf_build(values), model, static_cast<long>(values.size())};
}

double u_process_eval(const EmpiricalProcess& proc, double t) {
    return std::sqrt(static_cast<double>(proc.n)) * (proc.ecdf(t) - proc.model.cdf(t));
}

double u_process_left_limit(const EmpiricalProcess& proc, double t) {
    // F is continuous, so only the ECDF contributes a jump.
    return std::sqrt(static_cast<double>(proc.n)) * (proc.ecdf.left_limit(t) - proc.model.cdf(t));
}

double sup_distance(const EmpiricalProcess& proc, const StepFunction& approx) {
    std::vector<double> pts;
    pts.reserve(proc.ecdf.breakpoints().size() + approx.breakpoints().size());
    pts.insert(pts.end(), proc.ecdf.breakpoints().begin(), proc.ecdf.breakpoints().end());
    pts.insert(pts.end(), approx.breakpoints().begin(), approx.breakpoints().end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

    // At -inf both U_n and F vanish; at +inf U_n vanishes.
    double best = std::max(std::abs(approx.value_before()), std::abs(approx.value_after()));
    for (double t : pts) {
        best = std::max(best, std::abs(u_process_eval(proc, t) - approx(t)));
        best = std::max(best, std::abs(u_process_left_limit(proc, t) - approx.left_limit(t)));
    }
    return best;
}

namespace {

// Range max/min over static arrays via sparse tables.
class RangeExtrema {
  public:
    explicit RangeExtrema(const std::vector<double>& v) {
        std::size_t n = v.size();
        levels_ = 1;
        while ((1u << levels_) <= n) ++levels_;
        maxt_.assign(levels_, v);
        mint_.assign(levels_, v);
        for (std::size_t k = 1; k < levels_; ++k) {
            std::size_t half = 1u << (k - 1);
            for (std::size_t i = 0; i + (1u << k) <= n; ++i) {
                maxt_[k][i] = std::max(maxt_[k - 1][i], maxt_[k - 1][i + half]);
                mint_[k][i] = std::min(mint_[k - 1][i], mint_[k - 1][i + half]);
            }
        }
    }

    // closed index range [i, j]; callers guarantee i <= j
    double max(std::size_t i, std::size_t j) const {
        std::size_t k = bit(j - i + 1);
        return std::max(maxt_[k][i], maxt_[k][j + 1 - (1u << k)]);
    }
    double min(std::size_t i, std::size_t j) const {
        std::size_t k = bit(j - i + 1);
        return std::min(mint_[k][i], mint_[k][j + 1 - (1u << k)]);
    }

  private:
    static std::size_t bit(std::size_t len) {
        std::size_t k = 0;
        while ((2u << k) <= len) ++k;
        return k;
    }
    std::size_t levels_;
    std::vector<std::vector<double>> maxt_, mint_;
};

} // namespace

double max_window_oscillation(const EmpiricalProcess& proc, double delta) {
    if (!(delta > 0.0)) throw parameter_error("empproc: window width must be > 0");
    const auto& bp = proc.ecdf.breakpoints();
    std::size_t m = bp.size();
    std::vector<double> at(m), before(m);
    for (std::size_t i = 0; i < m; ++i) {
        at[i] = u_process_eval(proc, bp[i]);
        before[i] = u_process_left_limit(proc, bp[i]);
    }
    RangeExtrema ext_at(at), ext_before(before);

    auto first_after = [&](double x) {  // first index with bp > x
        return static_cast<std::size_t>(std::upper_bound(bp.begin(), bp.end(), x) - bp.begin());
    };
    auto first_at_or_after = [&](double x) {
        return static_cast<std::size_t>(std::lower_bound(bp.begin(), bp.end(), x) - bp.begin());
    };

    double best = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        // window (b_i, b_i + delta): open left end sits on the jump
        {
            double hi = at[i], lo = u_process_left_limit(proc, bp[i] + delta);
            std::size_t j0 = i + 1, j1 = first_at_or_after(bp[i] + delta);
            if (j1 > j0) {
                hi = std::max(hi, ext_at.max(j0, j1 - 1));
                lo = std::min(lo, ext_before.min(j0, j1 - 1));
            }
            best = std::max(best, hi - lo);
        }
        // window (b_i - delta, b_i]: right end captures the pre-jump dip
        {
            double x = bp[i] - delta;
            double hi = u_process_eval(proc, x), lo = at[i];
            std::size_t j0 = first_after(x), j1 = i;
            if (j1 >= j0 && j0 < m) {
                hi = std::max(hi, ext_at.max(j0, j1));
                lo = std::min(lo, ext_before.min(j0, j1));
            }
            best = std::max(best, hi - lo);
        }
    }
    return best;
}

} // namespace epl
