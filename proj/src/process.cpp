#include "epl/process.hpp"

#include <algorithm>
#include <cmath>

#include "epl/errors.hpp"
#include "epl/rng.hpp"

namespace epl {

namespace {

constexpr double kTailTarget = 1e-12;
constexpr double kInvertTol = 1e-12;

} // namespace

ProcessSpec ProcessSpec::iid_uniform() {
    ProcessSpec s;
    s.kind = ProcessKind::IidUniform;
    return s;
}

ProcessSpec ProcessSpec::cantor_linear(int trunc_depth) {
    ProcessSpec s;
    s.kind = ProcessKind::CantorLinear;
    s.trunc_depth = trunc_depth;
    s.validate();
    return s;
}

ProcessSpec ProcessSpec::geometric_linear(double theta, double scale, int trunc_depth) {
    ProcessSpec s;
    s.kind = ProcessKind::GeometricLinear;
    s.theta = theta;
    s.scale = scale;
    s.trunc_depth = trunc_depth;
    s.validate();
    return s;
}

ProcessSpec ProcessSpec::nonlinear_ar(double rho, double noise_half_width, long burn_in) {
    ProcessSpec s;
    s.kind = ProcessKind::NonlinearAr;
    s.rho = rho;
    s.noise_half_width = noise_half_width;
    s.burn_in = burn_in;
    s.validate();
    return s;
}

ProcessSpec ProcessSpec::gouezel(int n_branches, double coef_c, double coef_p) {
    ProcessSpec s;
    s.kind = ProcessKind::GouezelMap;
    s.n_branches = n_branches;
    s.coef_c = coef_c;
    s.coef_p = coef_p;
    s.validate();
    return s;
}

void ProcessSpec::validate() const {
    if (trunc_depth < 1) throw parameter_error("procgen: truncation depth must be >= 1");
    if (burn_in < 0) throw parameter_error("procgen: burn-in must be >= 0");
    switch (kind) {
        case ProcessKind::IidUniform:
        case ProcessKind::CantorLinear:
            break;
        case ProcessKind::GeometricLinear:
            if (!(theta > 0.0 && theta < 1.0))
                throw parameter_error("procgen: geometric decay theta must lie in (0,1)");
            if (!(scale > 0.0)) throw parameter_error("procgen: geometric scale must be > 0");
            break;
        case ProcessKind::NonlinearAr:
            if (!(rho > 0.0 && rho < 1.0))
                throw parameter_error("procgen: contraction rho must lie in (0,1)");
            if (!(noise_half_width > 0.0))
                throw parameter_error("procgen: noise half-width must be > 0");
            break;
        case ProcessKind::GouezelMap:
            if (n_branches < 1) throw parameter_error("procgen: branch count N must be >= 1");
            if (!(coef_c > 0.0)) throw parameter_error("procgen: coefficients a_n must be > 0");
            if (!(coef_p > 1.0))
                throw parameter_error("procgen: coefficient power must exceed 1 for a summable tail");
            // 4 sum a_n < 1; bound the sum by coef_c (1 + 1/(p-1)).
            if (4.0 * coef_c * (1.0 + 1.0 / (coef_p - 1.0)) >= 1.0)
                throw constraint_error("procgen: Gouezel coefficients violate 4 sum a_n < 1");
            break;
    }
}

std::string ProcessSpec::kind_name() const {
    switch (kind) {
        case ProcessKind::IidUniform: return "iid-uniform";
        case ProcessKind::CantorLinear: return "cantor";
        case ProcessKind::GeometricLinear: return "geometric";
        case ProcessKind::NonlinearAr: return "nar";
        case ProcessKind::GouezelMap: return "gouezel";
    }
    return "?";
}

double ProcessSpec::support_lo() const {
    switch (kind) {
        case ProcessKind::IidUniform:
        case ProcessKind::CantorLinear:
        case ProcessKind::GouezelMap:
        case ProcessKind::NonlinearAr:
            return 0.0;
        case ProcessKind::GeometricLinear:
            return -scale / (1.0 - theta);
    }
    return 0.0;
}

double ProcessSpec::support_hi() const {
    switch (kind) {
        case ProcessKind::IidUniform:
        case ProcessKind::CantorLinear:
        case ProcessKind::GouezelMap:
            return 1.0;
        case ProcessKind::NonlinearAr:
            return 2.0 * noise_half_width / (1.0 - rho);
        case ProcessKind::GeometricLinear:
            return scale / (1.0 - theta);
    }
    return 1.0;
}

std::vector<double> cantor_path_from_bits(const std::function<int(long)>& bit, long n,
                                          int trunc_depth) {
    // X_k = sum_{i=1..L} 2 e_{k-i} 3^{-i}, evaluated oldest-bit-first so the
    // all-ones source collapses to exactly 1.0.
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long k = 1; k <= n; ++k) {
        double v = 0.0;
        for (int i = trunc_depth; i >= 1; --i) v = (v + 2.0 * bit(k - i)) / 3.0;
        out[static_cast<std::size_t>(k - 1)] = v;
    }
    return out;
}

namespace {

std::vector<double> generate_iid_uniform(RngStream& rng, long n, long burn) {
    for (long i = 0; i < burn; ++i) rng.uniform01();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& x : out) x = rng.uniform01();
    return out;
}

std::vector<double> generate_cantor(RngStream& rng, long n, int L, long burn) {
    long total = n + burn;
    // bits e_j for j = 1-L .. total-1, drawn in index order
    std::vector<int> bits(static_cast<std::size_t>(total - 1 + L));
    for (auto& b : bits) b = rng.bit();
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long k = burn + 1; k <= total; ++k) {
        double v = 0.0;
        for (int i = L; i >= 1; --i) v = (v + 2.0 * bits[static_cast<std::size_t>(k - i - 1 + L)]) / 3.0;
        out[static_cast<std::size_t>(k - burn - 1)] = v;
    }
    return out;
}

std::vector<double> generate_geometric(RngStream& rng, const ProcessSpec& spec, long n, long burn) {
    long total = n + burn;
    int L = spec.trunc_depth;
    // innovations e_j ~ U[-1,1] for j = 2-L .. total
    std::vector<double> e(static_cast<std::size_t>(total - 1 + L));
    for (auto& x : e) x = rng.uniform(-1.0, 1.0);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (long k = burn + 1; k <= total; ++k) {
        double v = 0.0;
        for (int i = L - 1; i >= 0; --i) v = v * spec.theta + e[static_cast<std::size_t>(k - i - 2 + L)];
        out[static_cast<std::size_t>(k - burn - 1)] = spec.scale * v;
    }
    return out;
}

std::vector<double> generate_nar(RngStream& rng, const ProcessSpec& spec, long n, long burn) {
    double w2 = 2.0 * spec.noise_half_width;
    double x = spec.noise_half_width / (1.0 - spec.rho);  // interior start
    for (long i = 0; i < burn; ++i) x = spec.rho * x + rng.uniform(0.0, w2);
    std::vector<double> out(static_cast<std::size_t>(n));
    for (auto& v : out) {
        x = spec.rho * x + rng.uniform(0.0, w2);
        v = x;
    }
    return out;
}

} // namespace

IntervalLayout gouezel_layout(const std::function<double(long)>& rule, int n_affine, long cutoff,
                              double tail_bound) {
    if (n_affine < 1) throw parameter_error("procgen: branch count N must be >= 1");
    if (cutoff < 1) throw parameter_error("procgen: layout cutoff must be >= 1");
    if (!(tail_bound >= 0.0)) throw parameter_error("procgen: tail bound must be >= 0");
    if (tail_bound > kTailTarget)
        throw precision_error("procgen: Gouezel tail bound exceeds 1e-12 at this cutoff");

    IntervalLayout layout;
    layout.cutoff = cutoff;
    layout.n_affine = n_affine;
    layout.tail_bound = tail_bound;
    layout.coeff.resize(static_cast<std::size_t>(cutoff));
    layout.branch_left.resize(static_cast<std::size_t>(cutoff) + 1);
    double sum = 0.0;
    for (long n = 1; n <= cutoff; ++n) {
        double a = rule(n);
        if (!(a > 0.0)) throw parameter_error("procgen: coefficients a_n must be > 0");
        layout.branch_left[static_cast<std::size_t>(n - 1)] = 4.0 * sum;
        layout.coeff[static_cast<std::size_t>(n - 1)] = a;
        sum += a;
    }
    layout.bad_region_end = 4.0 * sum;
    layout.branch_left.back() = layout.bad_region_end;
    if (layout.bad_region_end + 4.0 * tail_bound >= 1.0)
        throw constraint_error("procgen: Gouezel coefficients violate 4 sum a_n < 1");
    return layout;
}

IntervalLayout gouezel_layout(double coef_c, double coef_p, int n_affine, long cutoff) {
    if (!(coef_c > 0.0 && coef_p > 1.0))
        throw parameter_error("procgen: power-law rule needs c > 0, p > 1");
    // sum_{n>M} c n^-p <= c M^{1-p}/(p-1)
    double tail = 4.0 * coef_c * std::pow(static_cast<double>(cutoff), 1.0 - coef_p) / (coef_p - 1.0);
    return gouezel_layout([=](long n) { return coef_c / std::pow(static_cast<double>(n), coef_p); },
                          n_affine, cutoff, tail);
}

namespace {

double branch_eval(const IntervalLayout& layout, long n, double u, double sign) {
    double a = layout.coeff[static_cast<std::size_t>(n - 1)];
    double left = layout.branch_left[static_cast<std::size_t>(n - 1)];
    if (sign < 0.0) left += 2.0 * a;  // w_n maps onto the second half of I_n
    double freq = 4.0 * M_PI * std::pow(static_cast<double>(n), 4.0);
    return left + a * (2.0 * u + sign * std::sin(freq * u) / freq);
}

double branch_deriv(const IntervalLayout& layout, long n, double u, double sign) {
    double a = layout.coeff[static_cast<std::size_t>(n - 1)];
    double freq = 4.0 * M_PI * std::pow(static_cast<double>(n), 4.0);
    return a * (2.0 + sign * std::cos(freq * u));
}

// Unique u in [0,1) with branch(u) = x; bisection bracket is the whole branch
// domain, Newton polish near the root.
double branch_invert(const IntervalLayout& layout, long n, double x, double sign) {
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 30; ++i) {
        double mid = 0.5 * (lo + hi);
        if (branch_eval(layout, n, mid, sign) <= x)
            lo = mid;
        else
            hi = mid;
    }
    double u = 0.5 * (lo + hi);
    for (int i = 0; i < 20; ++i) {
        double f = branch_eval(layout, n, u, sign) - x;
        if (f == 0.0) break;
        if (f > 0.0)
            hi = u;
        else
            lo = u;
        double next = u - f / branch_deriv(layout, n, u, sign);
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        bool done = std::abs(next - u) < 1e-17;
        u = next;
        if (done) break;
    }
    if (!(std::abs(branch_eval(layout, n, u, sign) - x) < kInvertTol))
        throw numeric_error("procgen: Gouezel branch inversion failed to converge");
    return std::clamp(u, 0.0, std::nextafter(1.0, 0.0));
}

} // namespace

double gouezel_branch_v(const IntervalLayout& layout, long n, double u) {
    return branch_eval(layout, n, u, +1.0);
}

double gouezel_branch_w(const IntervalLayout& layout, long n, double u) {
    return branch_eval(layout, n, u, -1.0);
}

double gouezel_apply(const IntervalLayout& layout, double x) {
    if (!(x >= 0.0 && x < 1.0)) throw domain_error("procgen: Gouezel map argument outside [0,1)");
    double s = layout.bad_region_end;
    if (x >= s) {
        double w = layout.affine_width();
        auto piece = static_cast<long>((x - s) / w);
        piece = std::clamp<long>(piece, 0, layout.n_affine - 1);
        double u = (x - (s + piece * w)) / w;
        return std::clamp(u, 0.0, std::nextafter(1.0, 0.0));
    }
    // largest n with left end <= x
    auto it = std::upper_bound(layout.branch_left.begin(), layout.branch_left.end() - 1, x);
    long n = std::max<long>(1, it - layout.branch_left.begin());
    double a = layout.coeff[static_cast<std::size_t>(n - 1)];
    double left = layout.branch_left[static_cast<std::size_t>(n - 1)];
    double sign = (x < left + 2.0 * a) ? +1.0 : -1.0;
    return branch_invert(layout, n, x, sign);
}

ProcessPath generate(const ProcessSpec& spec, long n, std::uint64_t master_seed,
                     std::uint64_t replicate_id) {
    if (n < 1) throw parameter_error("procgen: path length must be >= 1");
    spec.validate();
    RngStream rng(master_seed, replicate_id);

    ProcessPath path;
    path.spec = spec;
    path.master_seed = master_seed;
    path.replicate_id = replicate_id;
    switch (spec.kind) {
        case ProcessKind::IidUniform:
            path.values = generate_iid_uniform(rng, n, spec.burn_in);
            break;
        case ProcessKind::CantorLinear:
            path.values = generate_cantor(rng, n, spec.trunc_depth, spec.burn_in);
            break;
        case ProcessKind::GeometricLinear:
            path.values = generate_geometric(rng, spec, n, spec.burn_in);
            break;
        case ProcessKind::NonlinearAr:
            path.values = generate_nar(rng, spec, n, spec.burn_in);
            break;
        case ProcessKind::GouezelMap: {
            IntervalLayout layout = gouezel_layout(spec.coef_c, spec.coef_p, spec.n_branches);
            double x = rng.uniform01();
            for (long i = 0; i < spec.burn_in; ++i) x = gouezel_apply(layout, x);
            path.values.resize(static_cast<std::size_t>(n));
            path.values[0] = x;
            for (long i = 1; i < n; ++i) {
                x = gouezel_apply(layout, x);
                path.values[static_cast<std::size_t>(i)] = x;
            }
            break;
        }
    }
    return path;
}

std::vector<double> iid_marginal_sample(const ProcessSpec& spec, long sample_size,
                                        std::uint64_t master_seed) {
    if (sample_size < 1) throw parameter_error("procgen: sample size must be >= 1");
    std::vector<double> out(static_cast<std::size_t>(sample_size));
    for (long r = 0; r < sample_size; ++r)
        out[static_cast<std::size_t>(r)] =
            generate(spec, 1, master_seed, static_cast<std::uint64_t>(r)).values[0];
    return out;
}

DistributionModel reference_cdf(const ProcessSpec& spec, long sample_size,
                                std::uint64_t master_seed) {
    switch (spec.kind) {
        case ProcessKind::IidUniform:
        case ProcessKind::GouezelMap:
            return DistributionModel::uniform01();
        case ProcessKind::CantorLinear:
            return DistributionModel::cantor();
        case ProcessKind::GeometricLinear:
        case ProcessKind::NonlinearAr: {
            // DKW band at confidence 1 - 1e-3
            double eps = std::sqrt(std::log(2.0 / 1e-3) / (2.0 * static_cast<double>(sample_size)));
            return DistributionModel::empirical(iid_marginal_sample(spec, sample_size, master_seed),
                                                eps);
        }
    }
    return DistributionModel::uniform01();
}

} // namespace epl
