#include "linsep/youden.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace linsep {

ImaginaryAxisResult imaginary_axis_expectation(std::span<const double> b, std::span<const double> c,
                                               const QuadConfig& cfg, ExpansionMode mode)
{
    if (b.size() != c.size()) throw ValidationError("imaginary_axis_expectation: size mismatch");
    const std::size_t m = b.size();
    double bb = 0.0;
    for (double x : b) bb += x * x;
    if (bb > 1.0 + 1e-12) throw ValidationError("imaginary_axis_expectation: sum of squared weights exceeds 1");
    // e^{-(1 - sum b^2) g^2 / 2} is what is left of phi(g) after each factor
    // absorbs e^{-b_j^2 g^2 / 2}.
    // The result moves like sqrt(deficit) when the tail is algebraic, so a
    // rounding-level deficit from normalising b must be treated as zero.
    double deficit = std::max(0.0, 1.0 - bb);
    if (deficit <= 32.0 * static_cast<double>(m) * std::numeric_limits<double>::epsilon()) deficit = 0.0;
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);

    ImaginaryAxisResult out;
    if (m == 0) {
        out.value = 1.0;
        return out;
    }

    if (mode == ExpansionMode::complex_product) {
        VectorIntegrand h = [&](double g, std::span<double> o) {
            const double w = inv_sqrt_2pi * std::exp(-0.5 * deficit * g * g);
            std::complex<double> pp(1.0, 0.0), pm(1.0, 0.0);
            for (std::size_t j = 0; j < m; ++j) {
                const double cj = 0.5 * std::exp(-0.5 * b[j] * b[j] * g * g);
                const double dj = c[j] * growth_integral_scaled(b[j] * g);
                pp *= std::complex<double>(cj, dj);
                pm *= std::complex<double>(cj, -dj);
            }
            const std::complex<double> s = (pp + pm) * w;
            o[0] = s.real();
            o[1] = s.imag();
        };
        auto r = integrate_half_line(h, 2, cfg);
        out.value = r.value[0];
        out.imag_residual = std::fabs(r.value[1]);
        out.err_estimate = r.error[0] + r.error[1];
        out.converged = r.converged;
    } else {
        // Coefficients e_q of prod_j (C_j + z d_j) at g and at -g.
        // Re = sum_{q even} (-1)^{q/2} e_q, Im = sum_{q odd} (-1)^{(q-1)/2} e_q;
        // the odd groups must cancel between g and -g.
        std::vector<double> pos(m + 1), neg(m + 1);
        auto expand = [&](double g, std::vector<double>& poly) {
            std::fill(poly.begin(), poly.end(), 0.0);
            poly[0] = 1.0;
            for (std::size_t j = 0; j < m; ++j) {
                const double cj = 0.5 * std::exp(-0.5 * b[j] * b[j] * g * g);
                const double dj = c[j] * growth_integral_scaled(b[j] * g);
                for (std::size_t q = j + 1; q > 0; --q) poly[q] = poly[q] * cj + poly[q - 1] * dj;
                poly[0] *= cj;
            }
        };
        VectorIntegrand h = [&](double g, std::span<double> o) {
            const double w = inv_sqrt_2pi * std::exp(-0.5 * deficit * g * g);
            expand(g, pos);
            expand(-g, neg);
            for (std::size_t q = 0; q <= m; ++q) o[q] = w * (pos[q] + neg[q]);
        };
        auto r = integrate_half_line(h, m + 1, cfg);
        CompensatedSum re, im;
        for (std::size_t q = 0; q <= m; ++q) {
            const double sign = ((q / 2) % 2 == 0) ? 1.0 : -1.0;
            (q % 2 == 0 ? re : im).add(sign * r.value[q]);
        }
        out.value = re.value();
        out.imag_residual = std::fabs(im.value());
        // Relative to |value|, floored so that values near zero are judged on
        // absolute error (1e12 * eps ~ 1e-4 relative, or 1e-10 absolute).
        out.condition = std::max(1.0, re.max_partial() / std::max(std::fabs(out.value), 1e-6));
        for (double e : r.error) out.err_estimate += e;
        out.converged = r.converged;
    }
    out.precision_warning = !out.converged || out.condition > kConditionLimit || static_cast<int>(m) > kYoudenWarnM;
    return out;
}

void YoudenSpec::validate() const
{
    if (v.empty()) throw ValidationError("YoudenSpec: v must be nonempty");
    for (double x : v)
        if (!std::isfinite(x) || x == 0.0) throw ValidationError("YoudenSpec: entries of v must be finite and nonzero");
    if (k < 1 || k > m()) throw ValidationError("YoudenSpec: k must lie in 1..m");
    if (!std::isfinite(rho) || rho < -1.0) throw ValidationError("YoudenSpec: rho must be >= -1");
}

namespace {

double norm2(const std::vector<double>& v)
{
    double s = 0.0;
    for (double x : v) s += x * x;
    return s;
}

YoudenValue from_counts(std::uint64_t hits, std::uint64_t samples, const char* method)
{
    YoudenValue out;
    const double p = static_cast<double>(hits) / static_cast<double>(samples);
    out.value = p;
    out.se = std::sqrt(p * (1.0 - p) / static_cast<double>(samples));
    out.method = method;
    return out;
}

// Counts the orthant event {eta_l < 0, l < k; eta_r > 0, r >= k} with eta from make_eta.
template <class MakeEta>
std::uint64_t count_orthant(const YoudenSpec& spec, std::uint64_t samples, const RandomStream& stream,
                            unsigned workers, MakeEta make_eta)
{
    const int m = spec.m();
    return run_chunked<std::uint64_t>(
        samples, workers, stream, 0,
        [&](RandomStream& s, std::uint64_t count) {
            std::vector<double> xi(m + 1), eta(m);
            std::uint64_t hits = 0;
            for (std::uint64_t i = 0; i < count; ++i) {
                for (auto& x : xi) x = s.normal();
                make_eta(xi, eta);
                bool ok = true;
                for (int j = 0; j < m && ok; ++j) ok = j < spec.k ? eta[j] < 0.0 : eta[j] > 0.0;
                hits += ok;
            }
            return hits;
        },
        [](std::uint64_t& a, std::uint64_t b) { a += b; });
}

}  // namespace

YoudenValue youden_closed(const YoudenSpec& spec, const QuadConfig& cfg, ExpansionMode mode)
{
    spec.validate();
    const double nv = std::sqrt(norm2(spec.v));
    std::vector<double> b(spec.m()), c(spec.m());
    for (int j = 0; j < spec.m(); ++j) {
        b[j] = std::fabs(spec.v[j]) / nv;
        c[j] = j < spec.k ? 1.0 : -1.0;
    }
    auto r = imaginary_axis_expectation(b, c, cfg, mode);
    YoudenValue out;
    out.value = r.value;
    out.err_estimate = r.err_estimate;
    out.imag_residual = r.imag_residual;
    out.condition = r.condition;
    out.precision_warning = r.precision_warning;
    out.method = mode == ExpansionMode::real_form ? "quadrature" : "quadrature_complex";
    return out;
}

YoudenValue youden_mc(const YoudenSpec& spec, std::uint64_t samples, const RandomStream& stream, unsigned workers)
{
    spec.validate();
    if (samples == 0) throw ValidationError("youden_mc: samples must be >= 1");
    const double vv = norm2(spec.v);
    const auto& v = spec.v;
    // eta_j = g_j/v_j - Sigma(v): the event g_l/v_l <= Sigma <= g_r/v_r.
    auto hits = count_orthant(spec, samples, stream, workers, [&](const std::vector<double>& g, std::vector<double>& eta) {
        double s = 0.0;
        for (std::size_t j = 0; j < v.size(); ++j) s += g[j] * v[j];
        s /= vv;
        for (std::size_t j = 0; j < v.size(); ++j) eta[j] = g[j] / v[j] - s;
    });
    return from_counts(hits, samples, "mc");
}

YoudenValue youden_rho(const YoudenSpec& spec, YoudenMethod method, const QuadConfig& cfg,
                       const RandomStream& stream, std::uint64_t samples, unsigned workers)
{
    spec.validate();
    const auto& v = spec.v;
    const int m = spec.m();
    const double vv = norm2(v);
    const double nv = std::sqrt(vv);
    const double rho = spec.rho;

    if (method == YoudenMethod::mc) {
        if (samples == 0) throw ValidationError("youden_rho: samples must be >= 1");
        std::uint64_t hits;
        if (rho >= 0.0) {
            const double sr = std::sqrt(rho);
            hits = count_orthant(spec, samples, stream, workers, [&](const std::vector<double>& xi, std::vector<double>& eta) {
                for (int j = 0; j < m; ++j) eta[j] = xi[j] / v[j] + sr * xi[m] / nv;
            });
        } else {
            const double lambda = 1.0 - std::sqrt(1.0 + rho);
            hits = count_orthant(spec, samples, stream, workers, [&](const std::vector<double>& xi, std::vector<double>& eta) {
                double s = 0.0;
                for (int j = 0; j < m; ++j) s += xi[j] * v[j];
                s *= lambda / vv;
                for (int j = 0; j < m; ++j) eta[j] = xi[j] / v[j] - s;
            });
        }
        return from_counts(hits, samples, "mc");
    }

    YoudenValue out;
    out.method = "quadrature";
    if (rho >= 0.0) {
        const double sr = std::sqrt(rho);
        auto r = gauss_expect(
            [&](double g) {
                double prod = 1.0;
                for (int j = 0; j < m; ++j) {
                    const double a = sr * g * std::fabs(v[j]) / nv;
                    prod *= gaussian_cdf(j < spec.k ? a : -a);
                }
                return prod;
            },
            cfg);
        out.value = r.value;
        out.err_estimate = r.err_estimate;
        out.precision_warning = !r.converged;
        return out;
    }
    const double sr = std::sqrt(-rho);
    std::vector<double> b(m), c(m);
    for (int j = 0; j < m; ++j) {
        b[j] = sr * std::fabs(v[j]) / nv;
        c[j] = j < spec.k ? 1.0 : -1.0;
    }
    auto r = imaginary_axis_expectation(b, c, cfg);
    out.value = r.value;
    out.err_estimate = r.err_estimate;
    out.imag_residual = r.imag_residual;
    out.condition = r.condition;
    out.precision_warning = r.precision_warning;
    return out;
}

}  // namespace linsep
