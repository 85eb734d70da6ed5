#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "epl/distribution.hpp"

namespace epl {

enum class ProcessKind { IidUniform, CantorLinear, GeometricLinear, NonlinearAr, GouezelMap };

// Declarative description of a stationary process. Immutable after
// construction via the factories; validate() enforces the parameter ranges.
struct ProcessSpec {
    ProcessKind kind = ProcessKind::IidUniform;
    double theta = 0.5;             // GeometricLinear decay ratio, in (0,1)
    double scale = 1.0;             // GeometricLinear amplitude
    double rho = 0.5;               // NonlinearAr contraction, in (0,1)
    double noise_half_width = 0.25; // NonlinearAr innovations are uniform on [0, 2w]
    int n_branches = 4;             // GouezelMap N
    double coef_c = 0.01;           // GouezelMap a_n = coef_c / n^coef_p
    double coef_p = 3.0;
    int trunc_depth = 40;           // moving-average truncation L
    long burn_in = 0;

    static ProcessSpec iid_uniform();
    static ProcessSpec cantor_linear(int trunc_depth = 40);
    static ProcessSpec geometric_linear(double theta, double scale = 1.0, int trunc_depth = 40);
    static ProcessSpec nonlinear_ar(double rho, double noise_half_width, long burn_in = 1000);
    static ProcessSpec gouezel(int n_branches = 4, double coef_c = 0.01, double coef_p = 3.0);

    void validate() const;
    std::string kind_name() const;

    // Support of the stationary marginal ([lo,hi]; exact for the bounded
    // generators, limit set for NonlinearAr).
    double support_lo() const;
    double support_hi() const;
};

// A realized finite orbit X_1..X_n with its seed provenance. Regeneration
// with identical (spec, master_seed, replicate_id, n) is bit-identical.
struct ProcessPath {
    std::vector<double> values;
    ProcessSpec spec;
    std::uint64_t master_seed = 0;
    std::uint64_t replicate_id = 0;
};

ProcessPath generate(const ProcessSpec& spec, long n, std::uint64_t master_seed,
                     std::uint64_t replicate_id);

// Test hook: Cantor moving average driven by an explicit bit source
// e : index j -> {0,1}; X_k = sum_{i=1..L} 2 e_{k-i} / 3^i.
std::vector<double> cantor_path_from_bits(const std::function<int(long)>& bit, long n, int trunc_depth);

// Geometry of the Gouezel interval map: the countable family of nonlinear
// branch intervals I_n = [4 sum_{i<n} a_i, 4 sum_{i<=n} a_i), each split into
// halves of length 2 a_n, followed by N equal affine pieces tiling [S, 1).
struct IntervalLayout {
    std::vector<double> branch_left;  // branch_left[n-1] = left end of I_n, n = 1..cutoff; plus S at the back
    std::vector<double> coeff;        // a_n, n = 1..cutoff
    double bad_region_end = 0.0;      // S = 4 sum_{n<=cutoff} a_n
    double tail_bound = 0.0;          // rigorous bound on 4 sum_{n>cutoff} a_n
    int n_affine = 1;
    long cutoff = 0;

    double affine_width() const { return (1.0 - bad_region_end) / n_affine; }
};

// rule(n) = a_n must be positive and eventually decreasing; tail_bound is the
// caller's documented bound on 4 sum_{n>cutoff} a_n (precision error if it
// exceeds 1e-12, constraint error if 4 sum a_n >= 1).
IntervalLayout gouezel_layout(const std::function<double(long)>& rule, int n_affine, long cutoff,
                              double tail_bound);

// Power-law rule a_n = c/n^p with the integral tail bound 4c cutoff^{1-p}/(p-1).
IntervalLayout gouezel_layout(double coef_c, double coef_p, int n_affine, long cutoff = 150000);

// Inverse branches of T on I_n (image I_n^(1) resp. I_n^(2)); antiderivatives
// of the derivative prescriptions a_n(1+2cos^2(2 pi n^4 u)) and
// a_n(1+2sin^2(2 pi n^4 u)), vanishing phase at u = 0.
double gouezel_branch_v(const IntervalLayout& layout, long n, double u);
double gouezel_branch_w(const IntervalLayout& layout, long n, double u);

// One step of the forward map T; affine pieces are evaluated directly, branch
// intervals are inverted by bisection + Newton to |v_n(u) - x| < 1e-12.
double gouezel_apply(const IntervalLayout& layout, double x);

// Reference marginal distribution of the stationary process. Exact closed
// form where known; GeometricLinear and NonlinearAr get an empirical
// reference from i.i.d.-restarted replicates with a DKW error bound.
DistributionModel reference_cdf(const ProcessSpec& spec, long sample_size = 200000,
                                std::uint64_t master_seed = 0x9d2c5680u);

// X_1 from sample_size independent replicate streams (i.i.d. restarts).
std::vector<double> iid_marginal_sample(const ProcessSpec& spec, long sample_size,
                                        std::uint64_t master_seed);

} // namespace epl
