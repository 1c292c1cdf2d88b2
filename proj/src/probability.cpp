#include "linsep/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "linsep/cone.hpp"
#include "linsep/volumes.hpp"
#include "linsep/youden.hpp"

namespace linsep {

ModelSpec ModelSpec::sign_flip(double delta, bool intercept)
{
    ModelSpec m;
    m.kind = ModelKind::sign_flip;
    m.delta = delta;
    m.intercept = intercept;
    return m;
}

ModelSpec ModelSpec::logit(double beta_star_norm, bool intercept)
{
    ModelSpec m;
    m.kind = ModelKind::logit;
    m.beta_star_norm = beta_star_norm;
    m.intercept = intercept;
    return m;
}

ModelSpec ModelSpec::probit(double beta_star_norm, bool intercept)
{
    ModelSpec m = logit(beta_star_norm, intercept);
    m.kind = ModelKind::probit;
    return m;
}

ModelSpec ModelSpec::signalless(double b, bool intercept)
{
    ModelSpec m;
    m.kind = ModelKind::signalless;
    m.b = b;
    m.intercept = intercept;
    return m;
}

void ModelSpec::validate() const
{
    switch (kind) {
    case ModelKind::sign_flip:
        if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("sign_flip: delta must lie in [0,1]");
        break;
    case ModelKind::signalless:
        if (!(b >= 0.0 && b <= 1.0)) throw ValidationError("signalless: b must lie in [0,1]");
        break;
    case ModelKind::logit:
    case ModelKind::probit:
        if (!(beta_star_norm > 0.0) || !std::isfinite(beta_star_norm))
            throw ValidationError(name() + ": beta_star_norm must be positive");
        break;
    }
}

std::string ModelSpec::name() const
{
    switch (kind) {
    case ModelKind::sign_flip: return "signflip";
    case ModelKind::logit: return "logit";
    case ModelKind::probit: return "probit";
    case ModelKind::signalless: return "signalless";
    }
    return "unknown";
}

double ModelSpec::param() const
{
    switch (kind) {
    case ModelKind::sign_flip: return delta;
    case ModelKind::signalless: return b;
    default: return beta_star_norm;
    }
}

ModelKind parse_model_kind(const std::string& s)
{
    if (s == "signflip" || s == "sign_flip") return ModelKind::sign_flip;
    if (s == "logit") return ModelKind::logit;
    if (s == "probit") return ModelKind::probit;
    if (s == "signalless" || s == "signalless_imbalanced") return ModelKind::signalless;
    throw ValidationError("unknown model '" + s + "'");
}

namespace {

// log sum_{j=0}^{top} C(n-1, j)
double log_binomial_prefix(int n, int top)
{
    top = std::min(top, n - 1);
    if (top < 0) return -std::numeric_limits<double>::infinity();
    if (n - 1 <= 60) {
        double s = 0.0;
        for (int j = 0; j <= top; ++j) s += binomial(n - 1, j);
        return std::log(s);
    }
    double mx = -std::numeric_limits<double>::infinity();
    for (int j = 0; j <= top; ++j) mx = std::max(mx, log_binomial(n - 1, j));
    double s = 0.0;
    for (int j = 0; j <= top; ++j) s += std::exp(log_binomial(n - 1, j) - mx);
    return mx + std::log(s);
}

// C(n,N) a^N (1-a)^{n-N}
double binomial_weight(int n, int N, double a)
{
    if (n <= 60) return binomial(n, N) * std::pow(a, N) * std::pow(1.0 - a, n - N);
    if ((a == 0.0 && N > 0) || (a == 1.0 && N < n)) return 0.0;
    const double la = N > 0 ? N * std::log(a) : 0.0;
    const double lb = N < n ? (n - N) * std::log1p(-a) : 0.0;
    return std::exp(log_binomial(n, N) + la + lb);
}

void check_np(int n, int p)
{
    if (n < 1) throw ValidationError("n must be >= 1");
    if (p < 1) throw ValidationError("p must be >= 1");
}

}  // namespace

double cover_probability(int n, int p, bool intercept)
{
    check_np(n, p);
    const int q = p + (intercept ? 1 : 0);
    if (q >= n) return 1.0;
    if (n - 1 <= 60) {
        double s = 0.0;
        for (int k = 0; k < q; ++k) s += binomial(n - 1, k);
        return std::ldexp(s, -(n - 1));
    }
    return std::min(1.0, std::exp(log_binomial_prefix(n, q - 1) - (n - 1) * std::numbers::ln2));
}

double separability_dim2_signflip(int n, double delta)
{
    if (n < 1) throw ValidationError("n must be >= 1");
    if (!(delta >= 0.0 && delta <= 1.0)) throw ValidationError("delta must lie in [0,1]");
    double s = std::pow(delta, n) + std::pow(1.0 - delta, n);
    for (int N = 1; N <= n - 1; ++N) s += 2.0 * std::pow(delta, N) * std::pow(1.0 - delta, n - N);
    return s;
}

ProbabilityResult separability_formula(int n, int p, const ModelSpec& model, const FormulaConfig& cfg,
                                       const RandomStream& stream)
{
    model.validate();
    check_np(n, p);
    if (p > n) throw ValidationError("separability_formula: requires p <= n");
    if (model.intercept) throw ValidationError("separability_formula: the formula covers models without intercept");
    cfg.quad.validate();

    double delta;
    ConditionalSampler sampler = cfg.sampler;
    bool exact_top = false;  // nu_n(P|A_N) = 1/C(n,N) for the half-normal law
    switch (model.kind) {
    case ModelKind::sign_flip:
        delta = model.delta;
        break;
    case ModelKind::signalless:
        // Without intercept y is independent of x, so v = y x_1 has the
        // sign-flip law with delta = 1/2.
        delta = 0.5;
        break;
    default: {
        if (!sampler)
            throw UnsupportedModelError("separability_formula: model '" + model.name() +
                                        "' needs a user-supplied conditional sampler for v | A_N");
        const double c = model.beta_star_norm;
        const bool logit = model.kind == ModelKind::logit;
        auto link = [&](double s) { return logit ? 1.0 / (1.0 + std::exp(-s)) : gaussian_cdf(s); };
        delta = gauss_expect([&](double g) { return link(c * std::fabs(g)); }, cfg.quad).value;
        break;
    }
    }
    if (!sampler) {
        exact_top = true;
        sampler = [](int N, std::span<double> v, RandomStream& rs) {
            for (std::size_t j = 0; j < v.size(); ++j) {
                const double a = std::fabs(rs.normal());
                v[j] = static_cast<int>(j) < N ? a : -a;
            }
        };
    }

    // Face dimensions n - p + 1 + j for odd j, capped at n.
    std::vector<int> faces;
    bool need_top = false;
    for (int j = 1; n - p + 1 + j <= n; j += 2) {
        const int f = n - p + 1 + j;
        if (f == n)
            need_top = true;
        else
            faces.push_back(f);
    }
    const bool mc_needed = !faces.empty() || (need_top && !exact_top);

    ProbabilityResult out;
    double value = std::pow(delta, n) + std::pow(1.0 - delta, n);
    double var = 0.0;
    for (int N = 1; N <= n - 1; ++N) {
        const double w = binomial_weight(n, N, delta);
        if (w < cfg.weight_cutoff) {
            out.skipped_mass += w;
            continue;
        }
        double term = 0.0;
        if (need_top && exact_top) term += 1.0 / binomial(n, N);
        if (mc_needed) {
            struct Moments {
                double sum = 0.0, sumsq = 0.0;
                bool warn = false;
            };
            auto mom = run_chunked<Moments>(
                cfg.outer_samples, cfg.workers, stream.substream(static_cast<std::uint64_t>(N)), Moments{},
                [&](RandomStream& rs, std::uint64_t count) {
                    Moments m;
                    std::vector<double> v(n);
                    for (std::uint64_t i = 0; i < count; ++i) {
                        sampler(N, v, rs);
                        ConeSpec cone(v);
                        double t = 0.0;
                        for (int f : faces) {
                            auto fv = face_volume_closed(cone, f, cfg.quad);
                            t += fv.value;
                            m.warn = m.warn || fv.precision_warning;
                        }
                        if (need_top && !exact_top) {
                            auto top = full_dimensional_volume(cone, cfg.quad);
                            t += top.value;
                            m.warn = m.warn || !top.converged;
                        }
                        m.sum += t;
                        m.sumsq += t * t;
                    }
                    return m;
                },
                [](Moments& a, const Moments& b) {
                    a.sum += b.sum;
                    a.sumsq += b.sumsq;
                    a.warn = a.warn || b.warn;
                },
                64);
            const double k = static_cast<double>(cfg.outer_samples);
            const double mean = mom.sum / k;
            const double s2 = k > 1 ? std::max(0.0, (mom.sumsq - k * mean * mean) / (k - 1)) : 0.0;
            term += mean;
            var += w * w * s2 / k;
            out.precision_warning = out.precision_warning || mom.warn;
        }
        value += 2.0 * w * term;
    }
    out.value = clamp_probability(value, &out.clamp_distance);
    out.se = 2.0 * std::sqrt(var);
    out.method = mc_needed ? "formula_mc" : "formula";
    out.samples = mc_needed ? cfg.outer_samples : 0;
    return out;
}

ProbabilityResult separability_intercept_signalless(int n, int p, double b, const QuadConfig& cfg)
{
    check_np(n, p);
    if (p > n) throw ValidationError("separability_intercept_signalless: requires p <= n");
    if (!(b >= 0.0 && b <= 1.0)) throw ValidationError("b must lie in [0,1]");
    cfg.validate();

    ProbabilityResult out;
    out.method = "formula";
    // mu_index for index = n - k, k = 1..n-1; mu_n separately.
    auto mu = [&](int index) {
        if (index == n) {
            double s = 0.0;
            for (int N = 1; N <= n - 1; ++N) s += std::pow(b, N) * std::pow(1.0 - b, n - N);
            return s;
        }
        const int k = n - index;
        const int m = k + 1;
        const double a = 1.0 / std::sqrt(static_cast<double>(m));
        std::vector<double> bw(m, a), cw(m, 2.0 * b - 1.0);
        auto im = imaginary_axis_expectation(bw, cw, cfg);
        out.precision_warning = out.precision_warning || im.precision_warning;
        double re = 1.0;
        if (n - m > 0) {
            auto r = gauss_expect(
                [&](double g) {
                    const double s = b * gaussian_cdf(g * a) + (1.0 - b) * gaussian_cdf(-g * a);
                    return std::pow(s, n - m);
                },
                cfg);
            re = r.value;
            out.precision_warning = out.precision_warning || !r.converged;
        }
        return binomial(n, m) * im.value * re;
    };

    double value = std::pow(b, n) + std::pow(1.0 - b, n);
    for (int j = 1; n - p + j <= n; j += 2) {
        const int index = n - p + j;
        if (index >= 1) value += 2.0 * mu(index);
    }
    out.value = clamp_probability(value, &out.clamp_distance);
    return out;
}

BoundResult bound_dimension(int n, int p, double t, double sigma, DimensionBoundVariant variant)
{
    check_np(n, p);
    if (!(t >= 0.0)) throw ValidationError("bound_dimension: t must be >= 0");
    if (!(sigma >= 0.0 && sigma <= 1.0)) throw ValidationError("bound_dimension: sigma must lie in [0,1]");
    BoundResult out;
    const double root = (4.0 + 1.0 / std::numbers::sqrt2) * std::sqrt(t / n);
    if (variant == DimensionBoundVariant::no_intercept) {
        out.kind = "dimension";
        out.condition_threshold = 2.0 * (p - 1) / n + root;
        out.condition_met = out.condition_threshold <= sigma && sigma <= 0.5;
    } else {
        out.kind = "dimension_intercept";
        out.condition_threshold = 2.0 * p / n + root;
        out.condition_met = out.condition_threshold <= std::min(sigma, 1.0 - sigma);
    }
    out.bound = out.condition_met ? std::min(1.0, 3.0 * std::exp(-t)) : 1.0;
    return out;
}

SignFlipBounds bound_signflip(int n, int p, double delta, bool intercept, double t)
{
    check_np(n, p);
    if (!(delta >= 0.5 && delta <= 1.0)) throw ValidationError("bound_signflip: delta must lie in [1/2, 1]");
    if (!(t >= 0.0)) throw ValidationError("bound_signflip: t must be >= 0");
    const int top = intercept ? p : p - 1;
    SignFlipBounds out;
    if (n - 1 <= 60) {
        double s = 0.0;
        for (int j = 0; j <= std::min(top, n - 1); ++j) s += binomial(n - 1, j);
        out.upper = std::min(1.0, 2.0 * std::pow(delta, n) * s);
        out.lower = std::min(1.0, 2.0 * std::pow(1.0 - delta, n) * s);
    } else {
        const double ls = log_binomial_prefix(n, top);
        out.upper = std::min(1.0, std::exp(std::numbers::ln2 + n * std::log(delta) + ls));
        out.lower = delta == 1.0 ? 0.0 : std::min(1.0, std::exp(std::numbers::ln2 + n * std::log1p(-delta) + ls));
    }
    BoundResult& r = out.rate_form;
    r.kind = "signflip_rate";
    const double first = p > 1 ? (p - 1.0) / n * std::log(std::numbers::e * (n - 1.0) / (p - 1.0)) : 0.0;
    r.condition_threshold = first + t / n;
    r.condition_met = 1.0 - delta >= r.condition_threshold;
    r.bound = r.condition_met ? std::min(1.0, 2.0 * std::exp(-t)) : 1.0;
    return out;
}

BoundResult bound_hayakawa(int n, int p, double tukey_depth)
{
    check_np(n, p);
    if (!(tukey_depth >= 0.0 && tukey_depth <= 0.5))
        throw ValidationError("bound_hayakawa: tukey depth must lie in [0, 1/2]");
    BoundResult out;
    out.kind = "hayakawa";
    out.condition_threshold = 3.0 * p / n;
    out.condition_met = tukey_depth >= out.condition_threshold;
    out.bound = out.condition_met ? std::ldexp(1.0, -p) : 1.0;
    return out;
}

}  // namespace linsep
