#include "linsep/volumes.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>
#include <tuple>

#include "linsep/projection.hpp"

namespace linsep {

std::string to_string(VolumeMethod m)
{
    switch (m) {
    case VolumeMethod::mc: return "mc";
    case VolumeMethod::combinatorial_mc: return "combinatorial_mc";
    case VolumeMethod::closed_form: return "closed_form";
    case VolumeMethod::exact_combinatorial: return "exact_combinatorial";
    }
    return "unknown";
}

namespace {

VolumeDistribution point_mass(int n, VolumeMethod method)
{
    VolumeDistribution d;
    d.probs.assign(n + 1, 0.0);
    d.probs[n] = 1.0;
    d.method = method;
    return d;
}

VolumeDistribution from_counts(const std::vector<std::uint64_t>& counts, std::uint64_t samples, VolumeMethod method)
{
    VolumeDistribution d;
    d.method = method;
    d.samples = samples;
    for (auto c : counts) {
        const double p = static_cast<double>(c) / static_cast<double>(samples);
        d.probs.push_back(p);
        d.se.push_back(std::sqrt(p * (1.0 - p) / static_cast<double>(samples)));
    }
    return d;
}

using Counts = std::vector<std::uint64_t>;

void add_counts(Counts& a, const Counts& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
}

}  // namespace

VolumeDistribution intrinsic_volumes_mc(const ConeSpec& cone, std::uint64_t samples, const RandomStream& stream,
                                        unsigned workers)
{
    if (samples == 0) throw ValidationError("intrinsic_volumes_mc: samples must be >= 1");
    const int n = cone.n();
    if (cone.full_space()) {
        auto d = point_mass(n, VolumeMethod::mc);
        d.se.assign(n + 1, 0.0);
        d.samples = samples;
        return d;
    }
    auto counts = run_chunked<Counts>(
        samples, workers, stream, Counts(n + 1, 0),
        [&](RandomStream& s, std::uint64_t count) {
            Counts c(n + 1, 0);
            std::vector<double> g(n);
            for (std::uint64_t i = 0; i < count; ++i) {
                for (auto& x : g) x = s.normal();
                ++c[projection_face_dim(cone, g)];
            }
            return c;
        },
        add_counts);
    return from_counts(counts, samples, VolumeMethod::mc);
}

VolumeDistribution intrinsic_volumes_combinatorial_mc(const ConeSpec& cone, std::uint64_t samples,
                                                      const RandomStream& stream, unsigned workers)
{
    if (samples == 0) throw ValidationError("intrinsic_volumes_combinatorial_mc: samples must be >= 1");
    const int n = cone.n();
    if (cone.full_space()) {
        auto d = point_mass(n, VolumeMethod::combinatorial_mc);
        d.se.assign(n + 1, 0.0);
        d.samples = samples;
        return d;
    }
    const auto& v = cone.v();
    auto counts = run_chunked<Counts>(
        samples, workers, stream, Counts(n + 1, 0),
        [&](RandomStream& s, std::uint64_t count) {
            Counts c(n + 1, 0);
            std::vector<double> g(n);
            std::vector<int> lo = cone.left(), ro = cone.right();
            const std::size_t nl = lo.size(), nr = ro.size();
            std::vector<double> lr(nl), rr(nr), lxv(nl + 1), lvv(nl + 1), rxv(nr + 1), rvv(nr + 1);
            for (std::uint64_t i = 0; i < count; ++i) {
                for (auto& x : g) x = s.normal();
                auto ratio = [&](int j) { return g[j] / v[j]; };
                // An (L, R) event forces every ratio in L below Sigma and every
                // ratio in L^c above it, so L is a prefix of the ascending left
                // ratios; likewise R for the descending right ratios.
                std::sort(lo.begin(), lo.end(), [&](int a, int b) { return ratio(a) < ratio(b); });
                std::sort(ro.begin(), ro.end(), [&](int a, int b) { return ratio(a) > ratio(b); });
                for (std::size_t a = 0; a < nl; ++a) {
                    lr[a] = ratio(lo[a]);
                    lxv[a + 1] = lxv[a] + g[lo[a]] * v[lo[a]];
                    lvv[a + 1] = lvv[a] + v[lo[a]] * v[lo[a]];
                }
                for (std::size_t b = 0; b < nr; ++b) {
                    rr[b] = ratio(ro[b]);
                    rxv[b + 1] = rxv[b] + g[ro[b]] * v[ro[b]];
                    rvv[b + 1] = rvv[b] + v[ro[b]] * v[ro[b]];
                }
                int face = -1;
                for (std::size_t a = 1; a <= nl && face < 0; ++a)
                    for (std::size_t b = 1; b <= nr; ++b) {
                        const double sig = (lxv[a] + rxv[b]) / (lvv[a] + rvv[b]);
                        const double above = std::min(a < nl ? lr[a] : INFINITY, rr[b - 1]);
                        const double below = std::max(lr[a - 1], b < nr ? rr[b] : -INFINITY);
                        if (above >= sig && sig >= below) {
                            face = n - static_cast<int>(a + b - 1);
                            break;
                        }
                    }
                if (face < 0 && lr[0] >= rr[0]) face = n;  // g in P
                if (face >= 0) ++c[face];
            }
            return c;
        },
        add_counts);
    return from_counts(counts, samples, VolumeMethod::combinatorial_mc);
}

double pair_count(int N, int n, int size)
{
    double total = 0.0;
    for (int l = 1; l < size; ++l) total += binomial(N, l) * binomial(n - N, size - l);
    return total;
}

namespace {

using TermKey = std::tuple<std::vector<double>, std::vector<double>, std::vector<double>>;

struct TermValue {
    double value;
    double err;
    double condition;
    double imag_residual;
    bool warning;
};

TermValue pair_term(const std::vector<double>& left_abs, const std::vector<double>& right_abs,
                    const std::vector<double>& rest, const QuadConfig& cfg, ExpansionMode mode)
{
    double ss = 0.0;
    for (double a : left_abs) ss += a * a;
    for (double a : right_abs) ss += a * a;
    const double nlr = std::sqrt(ss);
    std::vector<double> b, c;
    for (double a : left_abs) {
        b.push_back(a / nlr);
        c.push_back(1.0);
    }
    for (double a : right_abs) {
        b.push_back(a / nlr);
        c.push_back(-1.0);
    }
    auto y = imaginary_axis_expectation(b, c, cfg, mode);
    double comp = 1.0, comp_err = 0.0;
    bool comp_warn = false;
    if (!rest.empty()) {
        auto r = gauss_expect(
            [&](double g) {
                double prod = 1.0;
                for (double vj : rest) prod *= gaussian_cdf(g * vj / nlr);
                return prod;
            },
            cfg);
        comp = r.value;
        comp_err = r.err_estimate;
        comp_warn = !r.converged;
    }
    return {y.value * comp, std::fabs(y.value) * comp_err + std::fabs(comp) * y.err_estimate, y.condition,
            y.imag_residual, y.precision_warning || comp_warn};
}

void check_budget(const ConeSpec& cone, double pairs, const ClosedFormOptions& opts)
{
    if (cone.n() > opts.max_n)
        throw std::length_error("intrinsic volumes: n = " + std::to_string(cone.n()) + " exceeds the cap " +
                                std::to_string(opts.max_n));
    if (pairs > static_cast<double>(opts.max_pairs))
        throw std::length_error("intrinsic volumes: " + std::to_string(pairs) +
                                " (L,R) pairs exceed the subset budget " + std::to_string(opts.max_pairs));
}

void combinations(const std::vector<int>& items, int k, const std::function<void(const std::vector<int>&)>& fn)
{
    std::vector<int> idx(k);
    std::iota(idx.begin(), idx.end(), 0);
    std::vector<int> pick(k);
    const int n = static_cast<int>(items.size());
    if (k > n) return;
    for (;;) {
        for (int i = 0; i < k; ++i) pick[i] = items[idx[i]];
        fn(pick);
        int i = k - 1;
        while (i >= 0 && idx[i] == n - k + i) --i;
        if (i < 0) return;
        ++idx[i];
        for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
}

FaceVolume face_volume_impl(const ConeSpec& cone, int face_dim, const QuadConfig& cfg, const ClosedFormOptions& opts,
                            std::map<TermKey, TermValue>& memo)
{
    const int n = cone.n(), N = cone.N();
    const int size = n - face_dim + 1;
    const auto& v = cone.v();
    FaceVolume out;
    CompensatedSum sum;
    std::vector<char> in_pair(n, 0);
    for (int l = std::max(1, size - (n - N)); l <= std::min(N, size - 1); ++l) {
        const int r = size - l;
        combinations(cone.left(), l, [&](const std::vector<int>& L) {
            combinations(cone.right(), r, [&](const std::vector<int>& R) {
                std::fill(in_pair.begin(), in_pair.end(), 0);
                std::vector<double> la, ra, rest;
                for (int j : L) {
                    la.push_back(v[j]);
                    in_pair[j] = 1;
                }
                for (int j : R) {
                    ra.push_back(-v[j]);
                    in_pair[j] = 1;
                }
                for (int j = 0; j < n; ++j)
                    if (!in_pair[j]) rest.push_back(v[j]);
                std::sort(la.begin(), la.end());
                std::sort(ra.begin(), ra.end());
                std::sort(rest.begin(), rest.end());
                TermKey key{la, ra, rest};
                auto it = memo.find(key);
                if (it == memo.end()) it = memo.emplace(key, pair_term(la, ra, rest, cfg, opts.mode)).first;
                const TermValue& t = it->second;
                sum.add(t.value);
                out.err_estimate += t.err;
                out.max_condition = std::max(out.max_condition, t.condition);
                out.max_imag_residual = std::max(out.max_imag_residual, t.imag_residual);
                out.precision_warning = out.precision_warning || t.warning;
            });
        });
    }
    out.value = sum.value();
    return out;
}

}  // namespace

FaceVolume face_volume_closed(const ConeSpec& cone, int face_dim, const QuadConfig& cfg,
                              const ClosedFormOptions& opts)
{
    const int n = cone.n();
    if (cone.full_space()) throw std::domain_error("face_volume_closed: cone is full space");
    if (face_dim < 1 || face_dim > n - 1) throw ValidationError("face_volume_closed: face_dim must lie in 1..n-1");
    check_budget(cone, pair_count(cone.N(), n, n - face_dim + 1), opts);
    std::map<TermKey, TermValue> memo;
    return face_volume_impl(cone, face_dim, cfg, opts, memo);
}

VolumeDistribution intrinsic_volumes_closed(const ConeSpec& cone, const QuadConfig& cfg,
                                            const ClosedFormOptions& opts)
{
    cfg.validate();
    const int n = cone.n();
    if (cone.full_space()) return point_mass(n, VolumeMethod::closed_form);
    double pairs = 0.0;
    for (int s = 2; s <= n; ++s) pairs += pair_count(cone.N(), n, s);
    check_budget(cone, pairs, opts);

    VolumeDistribution d;
    d.method = VolumeMethod::closed_form;
    d.probs.assign(n + 1, 0.0);
    std::map<TermKey, TermValue> memo;
    CompensatedSum total;
    for (int f = 1; f <= n - 1; ++f) {
        auto fv = face_volume_impl(cone, f, cfg, opts, memo);
        d.probs[f] = fv.value;
        total.add(fv.value);
        d.err_estimate += fv.err_estimate;
        d.max_condition = std::max(d.max_condition, fv.max_condition);
        d.max_imag_residual = std::max(d.max_imag_residual, fv.max_imag_residual);
        d.precision_warning = d.precision_warning || fv.precision_warning;
    }
    d.probs[n] = 1.0 - total.value();
    return d;
}

QuadResult full_dimensional_volume(const ConeSpec& cone, const QuadConfig& cfg)
{
    if (cone.full_space()) return {1.0, 0.0, true, 0};
    const auto& v = cone.v();
    double scale = 0.0;
    for (double a : v) scale = std::max(scale, std::fabs(a));
    // density of max_r g_r/v_r times P[min_l g_l/v_l >= t], in u = t * scale
    auto f = [&](double u) {
        const double t = u / scale;
        double left = 1.0;
        for (int l : cone.left()) left *= gaussian_cdf(-v[l] * t);
        if (left == 0.0) return 0.0;
        double dens = 0.0;
        for (int r : cone.right()) {
            const double ar = -v[r];
            double term = ar * gaussian_pdf(ar * t);
            for (int q : cone.right())
                if (q != r) term *= gaussian_cdf(-v[q] * t);
            dens += term;
        }
        return left * dens / scale;
    };
    return integrate_line(f, cfg);
}

VolumeDistribution intrinsic_volumes_orthant_product(int N, int n)
{
    if (n < 0 || N < 0 || N > n) throw ValidationError("intrinsic_volumes_orthant_product: need 0 <= N <= n");
    VolumeDistribution d;
    d.method = VolumeMethod::exact_combinatorial;
    d.probs.assign(n + 1, 0.0);
    for (int k = N; k <= n; ++k) d.probs[k] = std::ldexp(binomial(n - N, k - N), -(n - N));
    return d;
}

double statistical_dimension(const VolumeDistribution& dist)
{
    double s = 0.0;
    for (std::size_t k = 0; k < dist.probs.size(); ++k) s += static_cast<double>(k) * dist.probs[k];
    return s;
}

KinematicResult kinematic_intersection_prob(const VolumeDistribution& dist, int k)
{
    const int n = dist.n();
    if (n < 0) throw ValidationError("kinematic_intersection_prob: empty distribution");
    if (k < 0 || k > n) throw ValidationError("kinematic_intersection_prob: k must lie in 0..n");
    for (double p : dist.probs)
        if (!std::isfinite(p)) throw ValidationError("kinematic_intersection_prob: distribution has non-finite entries");
    KinematicResult out;
    double odd = 0.0;
    for (int j = 1; k + j <= n; j += 2) odd += dist.probs[k + j];
    for (int j = k + 1; j <= n; ++j) out.lower += dist.probs[j];
    out.upper = out.lower + dist.probs[k];
    out.value = clamp_probability(2.0 * odd, &out.clamp_distance);
    return out;
}

double concentration_bound(double delta_c, double delta_polar, double t, ConcentrationSide side)
{
    if (!(t >= 0.0)) throw ValidationError("concentration_bound: t must be >= 0");
    if (!(delta_c >= 0.0) || !(delta_polar >= 0.0))
        throw ValidationError("concentration_bound: statistical dimensions must be >= 0");
    if (t == 0.0) return 1.0;
    const double denom = side == ConcentrationSide::above ? std::min(delta_c + t / 3.0, delta_polar - t / 3.0)
                                                          : std::min(delta_c - t / 3.0, delta_polar + t / 3.0);
    if (denom <= 0.0) return 1.0;
    return std::min(1.0, std::exp(-(t * t / 4.0) / denom));
}

}  // namespace linsep
