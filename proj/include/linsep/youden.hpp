#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "linsep/numerics.hpp"
#include "linsep/random.hpp"

namespace linsep {

enum class ExpansionMode {
    real_form,        // elementary symmetric expansion, even/odd groups
    complex_product,  // integrate Re/Im of the complex product directly
};

struct ImaginaryAxisResult {
    double value = 0.0;
    double imag_residual = 0.0;
    double err_estimate = 0.0;
    double condition = 1.0;
    bool converged = true;
    bool precision_warning = false;
};

// E[prod_j (1/2 + i c_j D(b_j g))] for g ~ N(0,1), requires sum b_j^2 <= 1.
// c_j = +1 gives Phi(i b_j g), c_j = -1 gives Phi(-i b_j g).
ImaginaryAxisResult imaginary_axis_expectation(std::span<const double> b, std::span<const double> c,
                                               const QuadConfig& cfg,
                                               ExpansionMode mode = ExpansionMode::real_form);

// Largest m evaluated without a precision warning.
inline constexpr int kYoudenWarnM = 12;
inline constexpr double kConditionLimit = 1e12;

struct YoudenSpec {
    std::vector<double> v;
    int k = 1;
    double rho = -1.0;

    int m() const { return static_cast<int>(v.size()); }
    void validate() const;
};

struct YoudenValue {
    double value = 0.0;
    double se = 0.0;
    double err_estimate = 0.0;
    double imag_residual = 0.0;
    double condition = 1.0;
    bool precision_warning = false;
    std::string method;
};

enum class YoudenMethod { quadrature, mc };

// P[g_l/v_l <= Sigma(v) <= g_r/v_r for l <= k < r], Sigma(v) = sum g_j v_j / |v|^2.
YoudenValue youden_closed(const YoudenSpec& spec, const QuadConfig& cfg,
                          ExpansionMode mode = ExpansionMode::real_form);

YoudenValue youden_mc(const YoudenSpec& spec, std::uint64_t samples, const RandomStream& stream,
                      unsigned workers = 1);

// Orthant probability P[eta_l < 0 (l <= k), eta_r > 0 (r > k)] for the
// covariance diag(1/v^2) + rho/|v|^2 J.
YoudenValue youden_rho(const YoudenSpec& spec, YoudenMethod method, const QuadConfig& cfg,
                       const RandomStream& stream, std::uint64_t samples = 1000000, unsigned workers = 1);

}  // namespace linsep
