#include "epl/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epl/errors.hpp"

namespace epl {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr int kTernaryDepth = 60;   // 3^-60 ~ 2.4e-29, far below double resolution
constexpr double kBisectTol = 1e-12;

// log2/log3, the Hoelder exponent of the Cantor function.
const double kCantorHoelder = std::log(2.0) / std::log(3.0);

} // namespace

double cantor_cdf(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    // Scan ternary digits; digit 0 -> binary 0, digit 2 -> binary 1, first
    // digit 1 ends the scan with a final binary 1.
    double value = 0.0;
    double bit = 0.5;
    for (int i = 0; i < kTernaryDepth; ++i) {
        x *= 3.0;
        int digit = static_cast<int>(x);
        if (digit == 1) return value + bit;
        if (digit >= 2) {
            value += bit;
            x -= 2.0;
        }
        if (x <= 0.0) break;
        bit *= 0.5;
    }
    return value;
}

double cantor_cdf_integral(double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 0.5 + (x - 1.0);
    // Self-similarity of c: on [0,1/3] the graph is the half-scaled copy,
    // the middle third is the 1/2 plateau, and [2/3,1] mirrors the left.
    // Descend into the outer thirds, accumulating the affine contributions.
    double acc = 0.0;
    double scale = 1.0;  // multiplies the subproblem integral (1/6 per level)
    for (int i = 0; i < kTernaryDepth; ++i) {
        if (x < 1.0 / 3.0) {
            x *= 3.0;
            scale /= 6.0;
        } else if (x <= 2.0 / 3.0) {
            return acc + scale * (1.0 / 12.0 + 0.5 * (x - 1.0 / 3.0));
        } else {
            acc += scale * (0.25 + 0.5 * (x - 2.0 / 3.0));
            x = 3.0 * x - 2.0;
            scale /= 6.0;
        }
    }
    return acc;
}

double std_normal_cdf(double t) { return 0.5 * std::erfc(-t / std::sqrt(2.0)); }

namespace {

// Generalized inverse of the Cantor function: binary digits of u become
// doubled ternary digits. Terminating binary expansions land on the right
// end of the matching plateau, which is exactly the sup convention.
double cantor_quantile(double u) {
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    double s = 0.0;
    double w = 1.0 / 3.0;
    for (int i = 0; i < 40 && u > 0.0; ++i) {
        u *= 2.0;
        if (u >= 1.0) {
            s += 2.0 * w;
            u -= 1.0;
        }
        w /= 3.0;
    }
    return s;
}

// sup{ s in [lo,hi] : F(s) <= u } by bisection; requires F(lo) <= u < F(hi).
template <typename F>
double bisect_sup(F&& f, double lo, double hi, double u) {
    while (hi - lo > kBisectTol) {
        double mid = 0.5 * (lo + hi);
        if (f(mid) <= u)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace

DistributionModel DistributionModel::uniform01() {
    DistributionModel m;
    m.form_ = Form::Uniform01;
    return m;
}

DistributionModel DistributionModel::cantor() {
    DistributionModel m;
    m.form_ = Form::CantorCdf;
    return m;
}

DistributionModel DistributionModel::exponential(double rate) {
    if (!(rate > 0.0)) throw parameter_error("distmodel: exponential rate must be > 0");
    DistributionModel m;
    m.form_ = Form::Exponential;
    m.rate_ = rate;
    return m;
}

DistributionModel DistributionModel::std_normal() { return normal(0.0, 1.0); }

DistributionModel DistributionModel::normal(double mean, double sd) {
    if (!(sd > 0.0)) throw parameter_error("distmodel: normal sd must be > 0");
    DistributionModel m;
    m.form_ = Form::Normal;
    m.mean_ = mean;
    m.sd_ = sd;
    return m;
}

DistributionModel DistributionModel::empirical(std::vector<double> sample, double error_bound) {
    if (sample.empty()) throw parameter_error("distmodel: empirical reference needs a nonempty sample");
    std::sort(sample.begin(), sample.end());
    auto cum = std::make_shared<std::vector<double>>(sample.size() + 1, 0.0);
    for (std::size_t i = 0; i < sample.size(); ++i) (*cum)[i + 1] = (*cum)[i] + sample[i];
    DistributionModel m;
    m.form_ = Form::EmpiricalReference;
    m.sample_ = std::make_shared<const std::vector<double>>(std::move(sample));
    m.sample_cum_ = std::move(cum);
    m.sample_error_bound_ = error_bound;
    return m;
}

std::string DistributionModel::form_name() const {
    switch (form_) {
        case Form::Uniform01: return "uniform";
        case Form::CantorCdf: return "cantor";
        case Form::Exponential: return "exp";
        case Form::Normal: return "normal";
        case Form::EmpiricalReference: return "empirical";
    }
    return "?";
}

const std::vector<double>& DistributionModel::sample() const {
    if (!sample_) throw parameter_error("distmodel: model has no sample");
    return *sample_;
}

double DistributionModel::cdf(double t) const {
    switch (form_) {
        case Form::Uniform01:
            return std::clamp(t, 0.0, 1.0);
        case Form::CantorCdf:
            return cantor_cdf(t);
        case Form::Exponential:
            return t <= 0.0 ? 0.0 : -std::expm1(-rate_ * t);
        case Form::Normal:
            return std_normal_cdf((t - mean_) / sd_);
        case Form::EmpiricalReference: {
            const auto& s = *sample_;
            auto it = std::upper_bound(s.begin(), s.end(), t);
            return static_cast<double>(it - s.begin()) / static_cast<double>(s.size());
        }
    }
    return 0.0;
}

double DistributionModel::quantile(double u) const {
    if (!(u >= 0.0 && u <= 1.0)) throw domain_error("distmodel: quantile argument outside [0,1]");
    switch (form_) {
        case Form::Uniform01:
            return u;
        case Form::CantorCdf:
            return cantor_quantile(u);
        case Form::Exponential:
            return u >= 1.0 ? kInf : -std::log1p(-u) / rate_;
        case Form::Normal: {
            if (u >= 1.0) return kInf;
            // No algebraic inverse; monotone bisection on the sup definition.
            double lo = mean_ - 40.0 * sd_, hi = mean_ + 40.0 * sd_;
            if (cdf(lo) > u) return -kInf;
            return bisect_sup([this](double s) { return cdf(s); }, lo, hi, u);
        }
        case Form::EmpiricalReference: {
            const auto& s = *sample_;
            auto n = static_cast<double>(s.size());
            auto k = static_cast<std::size_t>(std::floor(u * n));
            if (k >= s.size()) return s.back();
            return s[k];
        }
    }
    return 0.0;
}

double DistributionModel::cdf_integral(double x) const {
    switch (form_) {
        case Form::Uniform01:
            if (x <= 0.0) return 0.0;
            if (x >= 1.0) return 0.5 + (x - 1.0);
            return 0.5 * x * x;
        case Form::CantorCdf:
            return cantor_cdf_integral(x);
        case Form::Exponential:
            // int_0^x (1 - e^{-rate u}) du
            return x <= 0.0 ? 0.0 : x + std::expm1(-rate_ * x) / rate_;
        case Form::Normal: {
            // int_{-inf}^x Phi((u-mean)/sd) du = sd (z Phi(z) + phi(z)), z=(x-mean)/sd
            double z = (x - mean_) / sd_;
            double pdf = std::exp(-0.5 * z * z) / std::sqrt(2.0 * M_PI);
            return sd_ * (z * std_normal_cdf(z) + pdf);
        }
        case Form::EmpiricalReference: {
            // (1/N) sum_j max(0, x - s_j), via prefix sums
            const auto& s = *sample_;
            auto it = std::upper_bound(s.begin(), s.end(), x);
            auto cnt = static_cast<std::size_t>(it - s.begin());
            double total = static_cast<double>(cnt) * x - (*sample_cum_)[cnt];
            return total / static_cast<double>(s.size());
        }
    }
    return 0.0;
}

double DistributionModel::modulus(double delta) const {
    if (!(delta > 0.0)) throw parameter_error("distmodel: modulus needs delta > 0");
    switch (form_) {
        case Form::Uniform01:
            return std::min(delta, 1.0);
        case Form::CantorCdf:
            return std::min(std::pow(delta, kCantorHoelder), 1.0);
        case Form::Exponential:
            // density decreasing: worst window starts at 0
            return -std::expm1(-rate_ * delta);
        case Form::Normal:
            // worst window centered at the mean
            return std::erf(delta / (2.0 * std::sqrt(2.0) * sd_));
        case Form::EmpiricalReference: {
            // max window count over [x_i, x_i + delta), exact two-pointer scan
            const auto& s = *sample_;
            std::size_t best = 0, j = 0;
            for (std::size_t i = 0; i < s.size(); ++i) {
                if (j < i) j = i;
                while (j < s.size() && s[j] < s[i] + delta) ++j;
                best = std::max(best, j - i);
            }
            return static_cast<double>(best) / static_cast<double>(s.size());
        }
    }
    return 0.0;
}

double DistributionModel::support_left() const {
    switch (form_) {
        case Form::Uniform01:
        case Form::CantorCdf:
        case Form::Exponential:
            return 0.0;
        case Form::Normal:
            return -kInf;
        case Form::EmpiricalReference:
            return sample_->front();
    }
    return 0.0;
}

double DistributionModel::support_right() const {
    switch (form_) {
        case Form::Uniform01:
        case Form::CantorCdf:
            return 1.0;
        case Form::Exponential:
        case Form::Normal:
            return kInf;
        case Form::EmpiricalReference:
            return sample_->back();
    }
    return 0.0;
}

ModulusReport log_modulus_report(const DistributionModel& model, double gamma,
                                 const std::vector<double>& delta_grid) {
    if (!(gamma > 0.0)) throw parameter_error("distmodel: modulus exponent gamma must be > 0");
    if (delta_grid.empty()) throw parameter_error("distmodel: empty delta grid");
    for (double d : delta_grid)
        if (!(d > 0.0 && d <= 0.5)) throw parameter_error("distmodel: delta grid must lie in (0, 1/2]");

    ModulusReport rep;
    rep.gamma = gamma;
    rep.deltas = delta_grid;
    rep.minimal_d = 0.0;
    for (double d : delta_grid) {
        double omega = model.modulus(d);
        double required = omega * std::pow(std::abs(std::log(d)), gamma);
        rep.omegas.push_back(omega);
        rep.d_required.push_back(required);
        rep.minimal_d = std::max(rep.minimal_d, required);
    }
    rep.satisfied = std::isfinite(rep.minimal_d);
    return rep;
}

} // namespace epl
