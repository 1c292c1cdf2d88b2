#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace linsep {

// Raised for malformed user input. The CLI maps it to exit code 2.
class ValidationError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct QuadConfig {
    double max_abscissa = 12.0;  // G: panels on [0,G], transformed tail beyond
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    int max_subdivisions = 4000;

    void validate() const;
};

struct QuadResult {
    double value = 0.0;
    double err_estimate = 0.0;
    bool converged = true;
    int subdivisions = 0;
};

struct ComplexQuadResult {
    std::complex<double> value;
    double err_estimate = 0.0;
    bool converged = true;
    int subdivisions = 0;
};

struct VectorQuadResult {
    std::vector<double> value;
    std::vector<double> error;
    bool converged = true;
    int subdivisions = 0;
};

// |x| above this makes e^{x^2/2} too close to overflow for D(x).
inline constexpr double kGrowthGuard = 26.0;

double gaussian_pdf(double x);
double gaussian_cdf(double x);

// D(x) = (1/sqrt(2 pi)) int_0^x e^{t^2/2} dt, so that Phi(ix) = 1/2 + i D(x).
double growth_integral(double x);
// e^{-x^2/2} D(x). Bounded for all x, no guard needed.
double growth_integral_scaled(double x);

using VectorIntegrand = std::function<void(double, std::span<double>)>;

// int_0^inf h(g) dg. [0,G] is split adaptively; the tail uses g = G/t on (0,1].
// All components share the subdivision, the stopping rule is
// sum(err) <= max(abs_tol, rel_tol * sum|value|).
VectorQuadResult integrate_half_line(const VectorIntegrand& h, std::size_t dim,
                                     const QuadConfig& cfg);
QuadResult integrate_half_line(const std::function<double(double)>& h, const QuadConfig& cfg);

// int_R f(t) dt, folded onto the half line as f(t) + f(-t).
QuadResult integrate_line(const std::function<double(double)>& f, const QuadConfig& cfg);

// E[f(g)] for g ~ N(0,1). Evaluated as int_0^inf (f(g) + f(-g)) phi(g) dg,
// so f and g -> f(-g) hit identical abscissae.
QuadResult gauss_expect(const std::function<double(double)>& f, const QuadConfig& cfg);
ComplexQuadResult gauss_expect_complex(const std::function<std::complex<double>(double)>& f,
                                       const QuadConfig& cfg);

// Neumaier summation that also tracks the largest partial sum seen.
class CompensatedSum {
public:
    void add(double x);
    double value() const { return sum_ + comp_; }
    double max_partial() const { return max_partial_; }
    // max partial-sum magnitude over |result|; infinity when the result is 0
    // but some partial sum was not.
    double condition() const;

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double max_partial_ = 0.0;
};

// Exact (128-bit integer) for n <= 60, lgamma based beyond.
double binomial(int n, int k);
double log_binomial(int n, int k);

double clamp_probability(double x, double* distance = nullptr);

}  // namespace linsep
