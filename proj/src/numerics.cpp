#include "linsep/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <gsl/gsl_sf_dawson.h>

namespace linsep {

void QuadConfig::validate() const
{
    if (!(max_abscissa > 0.0) || !std::isfinite(max_abscissa))
        throw ValidationError("QuadConfig: max_abscissa must be positive");
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0))
        throw ValidationError("QuadConfig: rel_tol and abs_tol must be positive");
    if (max_subdivisions < 1)
        throw ValidationError("QuadConfig: max_subdivisions must be >= 1");
}

double gaussian_pdf(double x)
{
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double gaussian_cdf(double x)
{
    if (!std::isfinite(x))
        throw ValidationError("gaussian_cdf: non-finite argument");
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double growth_integral_scaled(double x)
{
    const double y = x / std::numbers::sqrt2;
    // GSL's Dawson routine underflows somewhere near 1e307; its asymptote
    // 1/(2y) is exact to double precision long before that.
    const double f = std::fabs(y) > 1e150 ? 0.5 / y : gsl_sf_dawson(y);
    return f / std::sqrt(std::numbers::pi);
}

double growth_integral(double x)
{
    if (!std::isfinite(x))
        throw ValidationError("growth_integral: non-finite argument");
    if (std::fabs(x) > kGrowthGuard)
        throw std::range_error("growth_integral: |x| exceeds overflow guard " +
                               std::to_string(kGrowthGuard));
    return std::exp(0.5 * x * x) * growth_integral_scaled(x);
}

namespace {

// 21-point Gauss-Kronrod rule (QUADPACK qk21 constants).
constexpr double xgk[11] = {0.995657163025808080735527280689003, 0.973906528517171720077964012084452,
                            0.930157491355708226001207180059508, 0.865063366688984510732096688423493,
                            0.780817726586416897063717578345042, 0.679409568299024406234327365114874,
                            0.562757134668604683339000099272694, 0.433395394129247190799265943165784,
                            0.294392862701460198131126603103866, 0.148874338981631210884826001129720,
                            0.0};
constexpr double wgk[11] = {0.011694638867371874278064396062192, 0.032558162307964727478818972459390,
                            0.054755896574351996031381300244580, 0.075039674810919952767043140916190,
                            0.093125454583697605535065465083366, 0.109387158802297641899210590325805,
                            0.123491976262065851077958109831074, 0.134709217311473325928054001771707,
                            0.142775938577060080797094273138717, 0.147739104901338491374841515972068,
                            0.149445554002916905664936468389821};
constexpr double wg[5] = {0.066671344308688137593568809893332, 0.149451349150580593145776339657697,
                          0.219086362515982043995534934228163, 0.269266719309996355091226921569469,
                          0.295524224714752870173892994651338};

struct Panel {
    bool tail;
    double a, b;
    std::vector<double> val, err;
    double err_sum;
};

class PanelRule {
public:
    PanelRule(const VectorIntegrand& h, std::size_t dim, double G)
        : h_(h), dim_(dim), G_(G), f_(21 * dim)
    {
    }

    void eval(Panel& p)
    {
        const double center = 0.5 * (p.a + p.b);
        const double half = 0.5 * (p.b - p.a);
        // node order: center, then pairs (c - h x_j, c + h x_j) for j = 0..9
        node(p.tail, center, std::span<double>(f_.data(), dim_));
        for (int j = 0; j < 10; ++j) {
            node(p.tail, center - half * xgk[j], std::span<double>(f_.data() + (1 + 2 * j) * dim_, dim_));
            node(p.tail, center + half * xgk[j], std::span<double>(f_.data() + (2 + 2 * j) * dim_, dim_));
        }
        p.val.assign(dim_, 0.0);
        p.err.assign(dim_, 0.0);
        p.err_sum = 0.0;
        constexpr double eps = std::numeric_limits<double>::epsilon();
        for (std::size_t c = 0; c < dim_; ++c) {
            const double fc = f_[c];
            double rk = wgk[10] * fc, rg = 0.0, rabs = std::fabs(rk);
            for (int j = 0; j < 10; ++j) {
                const double f1 = f_[(1 + 2 * j) * dim_ + c], f2 = f_[(2 + 2 * j) * dim_ + c];
                rk += wgk[j] * (f1 + f2);
                rabs += wgk[j] * (std::fabs(f1) + std::fabs(f2));
                if (j % 2 == 1) rg += wg[j / 2] * (f1 + f2);
            }
            const double mean = 0.5 * rk;
            double rasc = wgk[10] * std::fabs(fc - mean);
            for (int j = 0; j < 10; ++j)
                rasc += wgk[j] * (std::fabs(f_[(1 + 2 * j) * dim_ + c] - mean) +
                                  std::fabs(f_[(2 + 2 * j) * dim_ + c] - mean));
            const double value = rk * half;
            rabs *= std::fabs(half);
            rasc *= std::fabs(half);
            double err = std::fabs((rk - rg) * half);
            if (rasc != 0.0 && err != 0.0) err = rasc * std::min(1.0, std::pow(200.0 * err / rasc, 1.5));
            if (rabs > std::numeric_limits<double>::min() / (50.0 * eps)) err = std::max(50.0 * eps * rabs, err);
            p.val[c] = value;
            p.err[c] = err;
            p.err_sum += err;
        }
    }

private:
    void node(bool tail, double x, std::span<double> out)
    {
        if (!tail) {
            h_(x, out);
            return;
        }
        const double g = G_ / x;
        h_(g, out);
        const double jac = G_ / (x * x);
        for (auto& o : out) {
            o *= jac;
            if (!std::isfinite(o)) o = 0.0;  // 0*inf far out in the tail carries no mass
        }
    }

    const VectorIntegrand& h_;
    std::size_t dim_;
    double G_;
    std::vector<double> f_;
};

}  // namespace

VectorQuadResult integrate_half_line(const VectorIntegrand& h, std::size_t dim, const QuadConfig& cfg)
{
    cfg.validate();
    const double G = cfg.max_abscissa;
    PanelRule rule(h, dim, G);

    std::vector<Panel> panels;
    constexpr int initial_body = 6;
    for (int i = 0; i < initial_body; ++i)
        panels.push_back({false, G * i / initial_body, G * (i + 1) / initial_body, {}, {}, 0.0});
    panels.push_back({true, 0.0, 0.5, {}, {}, 0.0});
    panels.push_back({true, 0.5, 1.0, {}, {}, 0.0});
    for (auto& p : panels) rule.eval(p);

    auto totals = [&](double& val_abs, double& err) {
        val_abs = 0.0;
        err = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
            double v = 0.0;
            for (const auto& p : panels) v += p.val[c];
            val_abs += std::fabs(v);
        }
        for (const auto& p : panels) err += p.err_sum;
    };

    VectorQuadResult out;
    double val_abs = 0.0, err = 0.0;
    totals(val_abs, err);
    int subdivisions = 0;
    bool converged = err <= std::max(cfg.abs_tol, cfg.rel_tol * val_abs);
    while (!converged) {
        if (subdivisions >= cfg.max_subdivisions) break;
        auto worst = std::max_element(panels.begin(), panels.end(),
                                      [](const Panel& x, const Panel& y) { return x.err_sum < y.err_sum; });
        const double mid = 0.5 * (worst->a + worst->b);
        if (!(mid > worst->a && mid < worst->b)) break;  // interval exhausted at machine precision
        Panel right{worst->tail, mid, worst->b, {}, {}, 0.0};
        worst->b = mid;
        rule.eval(*worst);
        rule.eval(right);
        panels.push_back(std::move(right));
        ++subdivisions;
        // Totals are recomputed only every few steps; the panel list is small.
        if (subdivisions % 8 == 0 || panels.size() < 64) {
            totals(val_abs, err);
        } else {
            err = 0.0;
            for (const auto& p : panels) err += p.err_sum;
        }
        converged = err <= std::max(cfg.abs_tol, cfg.rel_tol * val_abs);
    }

    std::sort(panels.begin(), panels.end(), [](const Panel& x, const Panel& y) {
        if (x.tail != y.tail) return !x.tail;
        return x.a < y.a;
    });
    out.value.assign(dim, 0.0);
    out.error.assign(dim, 0.0);
    for (std::size_t c = 0; c < dim; ++c) {
        CompensatedSum s;
        double e = 0.0;
        for (const auto& p : panels) {
            s.add(p.val[c]);
            e += p.err[c];
        }
        out.value[c] = s.value();
        out.error[c] = e;
    }
    out.converged = converged;
    out.subdivisions = subdivisions;
    return out;
}

QuadResult integrate_half_line(const std::function<double(double)>& h, const QuadConfig& cfg)
{
    VectorIntegrand vh = [&h](double g, std::span<double> out) { out[0] = h(g); };
    auto r = integrate_half_line(vh, 1, cfg);
    return {r.value[0], r.error[0], r.converged, r.subdivisions};
}

QuadResult integrate_line(const std::function<double(double)>& f, const QuadConfig& cfg)
{
    return integrate_half_line([&f](double t) { return f(t) + f(-t); }, cfg);
}

QuadResult gauss_expect(const std::function<double(double)>& f, const QuadConfig& cfg)
{
    return integrate_half_line(
        [&f](double g) {
            const double w = gaussian_pdf(g);
            if (w == 0.0) return 0.0;
            return (f(g) + f(-g)) * w;
        },
        cfg);
}

ComplexQuadResult gauss_expect_complex(const std::function<std::complex<double>(double)>& f,
                                       const QuadConfig& cfg)
{
    VectorIntegrand vh = [&f](double g, std::span<double> out) {
        const double w = gaussian_pdf(g);
        if (w == 0.0) {
            out[0] = out[1] = 0.0;
            return;
        }
        const std::complex<double> s = (f(g) + f(-g)) * w;
        out[0] = s.real();
        out[1] = s.imag();
    };
    auto r = integrate_half_line(vh, 2, cfg);
    return {{r.value[0], r.value[1]}, r.error[0] + r.error[1], r.converged, r.subdivisions};
}

void CompensatedSum::add(double x)
{
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x))
        comp_ += (sum_ - t) + x;
    else
        comp_ += (x - t) + sum_;
    sum_ = t;
    max_partial_ = std::max({max_partial_, std::fabs(x), std::fabs(sum_ + comp_)});
}

double CompensatedSum::condition() const
{
    const double r = std::fabs(value());
    if (r == 0.0) return max_partial_ == 0.0 ? 1.0 : std::numeric_limits<double>::infinity();
    return std::max(1.0, max_partial_ / r);
}

double binomial(int n, int k)
{
    if (n < 0 || k < 0 || k > n) return 0.0;
    if (n <= 60) {
        k = std::min(k, n - k);
        unsigned __int128 r = 1;
        for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
        return static_cast<double>(r);
    }
    return std::exp(log_binomial(n, k));
}

double log_binomial(int n, int k)
{
    if (n < 0 || k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double clamp_probability(double x, double* distance)
{
    const double c = std::clamp(x, 0.0, 1.0);
    if (distance) *distance = std::fabs(c - x);
    return c;
}

}  // namespace linsep
