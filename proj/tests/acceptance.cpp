// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
// Seeds are fixed (1000 * criterion) so every run is identical.

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "linsep/empirical.hpp"
#include "linsep/probability.hpp"
#include "linsep/projection.hpp"
#include "linsep/volumes.hpp"
#include "linsep/youden.hpp"
#include "oracles.hpp"

using namespace linsep;
using oracle::Vec;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point t0)
{
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

double null_se(double p, std::uint64_t samples)
{
    return std::sqrt(std::max(p * (1 - p), 0.0) / static_cast<double>(samples));
}

// Collects failed checks; the first few are reported.
struct Tally {
    int checks = 0;
    std::vector<std::string> failures;

    void expect(bool ok, const std::string& what)
    {
        ++checks;
        if (!ok) failures.push_back(what);
    }
    bool ok() const { return failures.empty(); }
};

std::string str(double x)
{
    std::ostringstream o;
    o.precision(10);
    o << x;
    return o.str();
}

// ---- 1 ---------------------------------------------------------------------

void criterion1(Tally& t, std::ostream& info)
{
    const ConeSpec cone({1, 1, -1, -1});
    const Vec x_ok{1, 2, -3, -4}, x_fail{1, 3, -2, -4};
    const Vec naive{2.5, 2.5, -2.5, -2.5};

    const auto t0 = Clock::now();
    const auto ok = project(cone, x_ok);
    const auto fail = project(cone, x_fail);
    const auto report = verify_moreau(cone, x_fail, naive);
    const double elapsed = seconds_since(t0);

    t.expect(ok.y == naive, "success example is not (2.5,2.5,-2.5,-2.5)");
    const Vec want{2.5, 3, -2, -2.5};
    const Vec ref = oracle::projection_bruteforce(cone.v(), x_fail);
    for (int j = 0; j < 4; ++j) {
        t.expect(std::fabs(fail.y[j] - want[j]) <= 1e-12, "fail example coordinate " + std::to_string(j));
        t.expect(std::fabs(fail.y[j] - ref[j]) <= 1e-12, "fail example vs oracle " + std::to_string(j));
    }
    t.expect(!report.residual_in_polar, "naive candidate: condition (2) not flagged");
    t.expect(!report.ok(), "naive candidate accepted");
    t.expect(elapsed < 1e-3, "runtime " + str(elapsed) + " s");
    info << "runtime " << elapsed * 1e6 << " us";
}

// ---- 2 ---------------------------------------------------------------------

void criterion2(Tally& t, std::ostream& info)
{
    const auto t0 = Clock::now();
    oracle::Gen gen(2000);
    double worst = 0;
    for (int rep = 0; rep < 10000; ++rep) {
        const int n = gen.integer(2, 10);
        const Vec v = gen.mixed_v(n);
        const ConeSpec cone(v);
        const double scale = gen.uniform(0.1, 5);
        Vec x = gen.normals(n), x2 = gen.normals(n);
        for (auto& e : x) e *= scale;
        for (auto& e : x2) e *= scale;

        const auto r = project(cone, x);
        const Vec ref = oracle::projection_bruteforce(v, x);
        double err = 0;
        for (int j = 0; j < n; ++j) err = std::max(err, std::fabs(r.y[j] - ref[j]));
        worst = std::max(worst, err);
        t.expect(err <= 1e-9, "oracle mismatch " + str(err) + " at rep " + std::to_string(rep));

        const auto again = project(cone, r.y);
        double idem = 0;
        for (int j = 0; j < n; ++j) idem = std::max(idem, std::fabs(again.y[j] - r.y[j]));
        t.expect(idem <= 1e-9, "idempotence " + str(idem));

        const auto r2 = project(cone, x2);
        double dy = 0, dx = 0;
        for (int j = 0; j < n; ++j) {
            dy += (r.y[j] - r2.y[j]) * (r.y[j] - r2.y[j]);
            dx += (x[j] - x2[j]) * (x[j] - x2[j]);
        }
        t.expect(std::sqrt(dy) <= std::sqrt(dx) + 1e-9, "nonexpansiveness");

        for (int j = 0; j < n; ++j) t.expect(r.y[j] >= x[j] - 1e-12, "componentwise increase");
    }
    const double elapsed = seconds_since(t0);
    t.expect(elapsed < 30, "runtime " + str(elapsed) + " s");
    info << "10000 instances, max deviation " << worst << ", " << elapsed << " s";
}

// ---- 3 ---------------------------------------------------------------------

void criterion3(Tally& t, std::ostream& info)
{
    const auto t0 = Clock::now();
    oracle::Gen gen(3000);
    const RandomStream base(3000);
    const std::uint64_t samples = 1000000;
    double worst_z = 0;
    for (int c = 0; c < 20; ++c) {
        const int n = gen.integer(2, 7);
        const ConeSpec cone(gen.mixed_v(n));
        const auto closed = intrinsic_volumes_closed(cone, QuadConfig{});
        const auto mc = intrinsic_volumes_mc(cone, samples, base.substream(2 * c));
        const auto comb = intrinsic_volumes_combinatorial_mc(cone, samples, base.substream(2 * c + 1));

        double sum = 0;
        for (double p : closed.probs) sum += p;
        t.expect(std::fabs(sum - 1) <= 1e-8, "closed sum " + str(sum));
        t.expect(closed.probs[0] == 0.0, "nu_0 = " + str(closed.probs[0]));
        for (int k = 0; k <= n; ++k) {
            const double nu = closed.probs[k], se = null_se(nu, samples);
            for (const auto* d : {&mc, &comb}) {
                const double diff = std::fabs(d->probs[k] - nu);
                if (se > 0) worst_z = std::max(worst_z, diff / se);
                t.expect(diff <= 3 * se + 1e-12, "cone " + std::to_string(c) + " k=" + std::to_string(k) + " " +
                                                     to_string(d->method) + ": " + str(d->probs[k]) + " vs " + str(nu));
            }
        }
    }
    const double elapsed = seconds_since(t0);
    t.expect(elapsed < 300, "runtime " + str(elapsed) + " s");
    info << "20 cones, max |z| " << worst_z << ", " << elapsed << " s";
}

// ---- 4 ---------------------------------------------------------------------

void criterion4(Tally& t, std::ostream& info)
{
    for (int n = 0; n <= 12; ++n)
        for (int N = 0; N <= n; ++N) {
            const auto d = intrinsic_volumes_orthant_product(N, n);
            for (int k = 0; k <= n; ++k) {
                const double want = k < N ? 0.0 : oracle::binom(n - N, k - N) / std::ldexp(1.0, n - N);
                t.expect(d.probs[k] == want, "orthant N=" + std::to_string(N) + " n=" + std::to_string(n));
            }
            t.expect(statistical_dimension(d) == (n + N) / 2.0, "statistical dimension");
        }

    const RandomStream base(4000);
    const int trials = 100000;
    int cases = 0;
    double worst_z = 0;
    for (int n = 2; n <= 6; ++n)
        for (int N = 0; N < n; ++N)
            for (int k = 1; k < n; ++k) {
                const double exact = kinematic_intersection_prob(intrinsic_volumes_orthant_product(N, n), k).value;
                if (exact == 0.0 || exact == 1.0) continue;
                RandomStream rs = base.substream(static_cast<std::uint64_t>(100 * n + 10 * N + k));
                int hits = 0;
                for (int s = 0; s < trials; ++s) {
                    Eigen::MatrixXd G(n, n - k);
                    for (int i = 0; i < n; ++i)
                        for (int j = 0; j < n - k; ++j) G(i, j) = rs.normal();
                    const Eigen::MatrixXd Q =
                        Eigen::HouseholderQR<Eigen::MatrixXd>(G).householderQ() * Eigen::MatrixXd::Identity(n, n - k);
                    hits += oracle::meets_orthant_product(Q, N);
                }
                const double freq = static_cast<double>(hits) / trials, se = null_se(exact, trials);
                worst_z = std::max(worst_z, std::fabs(freq - exact) / se);
                t.expect(std::fabs(freq - exact) <= 3 * se, "rotation n=" + std::to_string(n) + " N=" + std::to_string(N) +
                                                                " k=" + std::to_string(k) + ": " + str(freq) + " vs " +
                                                                str(exact));
                ++cases;
            }
    info << "orthants n <= 12 exact; " << cases << " rotation cases, max |z| " << worst_z;
}

// ---- 5 ---------------------------------------------------------------------

void criterion5(Tally& t, std::ostream& info)
{
    const auto t0 = Clock::now();
    const QuadConfig q;
    // m = 1 is a tie (the mean is the observation), so the identities start at 2
    for (int m = 2; m <= 8; ++m) {
        const Vec ones(m, 1.0);
        double total = 0;
        std::vector<double> p(m + 1, 0.0);
        for (int k = 1; k <= m; ++k) p[k] = youden_closed({ones, k, -1.0}, q).value;
        // the mean lies strictly between min and max almost surely
        for (int k = 1; k < m; ++k) total += oracle::binom(m, k) * p[k];
        t.expect(std::fabs(total - 1) <= 1e-6, "partition m=" + std::to_string(m) + ": " + str(total));
        for (int k = 1; k < m; ++k)
            t.expect(std::fabs(p[k] - p[m - k]) <= 1e-8, "symmetry m=" + std::to_string(m) + " k=" + std::to_string(k));
        t.expect(std::fabs(p[m]) <= 1e-8, "p(m,m) = " + str(p[m]));
    }
    t.expect(std::fabs(youden_closed({{1, 1}, 1, -1.0}, q).value - 0.5) <= 1e-8, "p(2,1)");

    const RandomStream base(5000);
    const std::uint64_t samples = 1000000;
    const std::vector<YoudenSpec> specs{{{1, 2, 3}, 1, 0}, {{1, 2, 3}, 2, 0}, {{1, 1, 1, 1}, 2, 0},
                                        {{0.5, 1.5, 2, 1, 3}, 3, 0}, {{2, -1, 0.7}, 1, 0}};
    int idx = 0;
    double worst_z = 0;
    for (auto spec : specs)
        for (double rho : {-1.0, -0.5, 0.0, 2.0}) {
            spec.rho = rho;
            const auto quad = youden_rho(spec, YoudenMethod::quadrature, q, base);
            const auto mc = youden_rho(spec, YoudenMethod::mc, q, base.substream(static_cast<std::uint64_t>(idx++)), samples);
            const double se = null_se(quad.value, samples);
            worst_z = std::max(worst_z, std::fabs(mc.value - quad.value) / se);
            t.expect(std::fabs(mc.value - quad.value) <= 3 * se,
                     "rho=" + str(rho) + " m=" + std::to_string(spec.m()) + ": " + str(mc.value) + " vs " + str(quad.value));
        }
    const double elapsed = seconds_since(t0);
    t.expect(elapsed < 120, "runtime " + str(elapsed) + " s");
    info << "m <= 8 identities; " << idx << " quadrature/MC pairs, max |z| " << worst_z << ", " << elapsed << " s";
}

// ---- 6 ---------------------------------------------------------------------

void criterion6(Tally& t, std::ostream& info)
{
    for (int n = 1; n <= 20; ++n) {
        const double want = n / std::ldexp(1.0, n - 1);
        t.expect(separability_dim2_signflip(n, 0.5) == want, "dim2 n=" + std::to_string(n));
    }
    for (int n = 1; n <= 6; ++n)
        for (int p = 1; p <= n; ++p) {
            const double v = separability_intercept_signalless(n, p, 0.5, QuadConfig{}).value;
            t.expect(std::fabs(v - cover_probability(n, p, true)) <= 1e-6,
                     "intercept signalless n=" + std::to_string(n) + " p=" + std::to_string(p));
        }
    const RandomStream base(6000);
    const int trials = 10000;
    int cases = 0;
    double worst_z = 0;
    for (int n = 2; n <= 8; ++n)
        for (int p = 1; p < n; ++p) {
            const double c = oracle::cover(n, p), se = null_se(c, trials);
            const auto e = estimate_separability(ModelSpec::sign_flip(0.5), n, p, trials,
                                                 base.substream(static_cast<std::uint64_t>(10 * n + p)), 1, false);
            worst_z = std::max(worst_z, std::fabs(e.value - c) / se);
            t.expect(std::fabs(e.value - c) <= 3 * se,
                     "simulation n=" + std::to_string(n) + " p=" + std::to_string(p) + ": " + str(e.value) + " vs " + str(c));
            ++cases;
        }
    info << cases << " simulated settings, max |z| " << worst_z;
}

// ---- 7 ---------------------------------------------------------------------

void criterion7(Tally& t, std::ostream& info)
{
    const auto t0 = Clock::now();
    const RandomStream base(7000);
    const auto model = ModelSpec::sign_flip(0.8);
    for (int p : {2, 3}) {
        FormulaConfig cfg;
        cfg.outer_samples = 20000;
        const auto f = separability_formula(5, p, model, cfg, base.substream(static_cast<std::uint64_t>(p)));
        const auto e = estimate_separability(model, 5, p, 100000, base.substream(static_cast<std::uint64_t>(10 + p)), 1, false);
        const double se = std::sqrt(f.se * f.se + e.se * e.se);
        t.expect(std::fabs(f.value - e.value) <= 3 * se,
                 "p=" + std::to_string(p) + ": formula " + str(f.value) + " vs simulation " + str(e.value));
        info << "p=" << p << " formula " << f.value << " (" << f.method << ") simulation " << e.value << "; ";
    }
    const double elapsed = seconds_since(t0);
    t.expect(elapsed < 300, "runtime " + str(elapsed) + " s");
    info << elapsed << " s";
}

// ---- 8 ---------------------------------------------------------------------

void criterion8(Tally& t, std::ostream& info)
{
    struct Setting {
        int n, p;
        double t, sigma;
    };
    const std::vector<Setting> settings{{200, 1, 1.5, 0.45}, {400, 1, 2, 0.4},    {500, 2, 2, 0.45},   {1000, 1, 2, 0.25},
                                        {1000, 2, 3, 0.35},  {2000, 1, 3, 0.3},   {2000, 2, 4, 0.35},  {1500, 2, 2.5, 0.4},
                                        {800, 1, 2, 0.5},    {300, 1, 1.2, 0.5}};
    const RandomStream base(8000);
    int idx = 0;
    double worst_ratio = 0;
    for (const auto& s : settings) {
        const auto b = bound_dimension(s.n, s.p, s.t, s.sigma);
        t.expect(b.condition_met, "condition fails at n=" + std::to_string(s.n));
        t.expect(std::fabs(b.bound - 3 * std::exp(-s.t)) <= 1e-15, "bound value");
        const auto e = estimate_separability(ModelSpec::sign_flip(1 - s.sigma), s.n, s.p, 1000,
                                             base.substream(static_cast<std::uint64_t>(idx++)), 1, false);
        worst_ratio = std::max(worst_ratio, e.value / b.bound);
        t.expect(e.value <= b.bound, "S=" + str(e.value) + " above " + str(b.bound));
    }

    int cases = 0;
    for (auto [n, p] : std::vector<std::pair<int, int>>{{6, 2}, {8, 3}})
        for (double d : {0.6, 0.75, 0.9}) {
            const auto b = bound_signflip(n, p, d, false);
            const auto e = estimate_separability(ModelSpec::sign_flip(d), n, p, 100000,
                                                 base.substream(static_cast<std::uint64_t>(100 + idx++)), 1, false);
            t.expect(b.lower - 3 * e.se <= e.value && e.value <= b.upper + 3 * e.se,
                     "delta=" + str(d) + " n=" + std::to_string(n) + ": " + str(e.value) + " not in [" + str(b.lower) +
                         ", " + str(b.upper) + "]");
            ++cases;
        }

    for (int n = 1; n <= 20; ++n)
        for (int p = 1; p <= n + 1; ++p)
            for (bool ic : {false, true}) {
                const auto b = bound_signflip(n, p, 0.5, ic);
                const double c = cover_probability(n, p, ic);
                t.expect(b.upper == c && b.lower == c, "delta=1/2 n=" + std::to_string(n) + " p=" + std::to_string(p));
            }
    info << "10 dimension-bound settings (max S/bound " << worst_ratio << "), " << cases << " sign-flip brackets";
}

// ---- 9 ---------------------------------------------------------------------

Eigen::MatrixXd gaussian(oracle::Gen& gen, int n, int p)
{
    Eigen::MatrixXd Z(n, p);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < p; ++j) Z(i, j) = gen.normal();
    return Z;
}

Eigen::MatrixXd tricky(oracle::Gen& gen)
{
    const int n = gen.integer(1, 8), p = gen.integer(1, 4);
    Eigen::MatrixXd Z = gaussian(gen, n, p);
    switch (gen.integer(0, 4)) {
    case 0:
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < p; ++j) Z(i, j) = gen.integer(-1, 1);
        break;
    case 1:
        for (int i = 1; i < n; i += 2) Z.row(i) = -Z.row(i - 1) * gen.uniform(0.5, 2);
        break;
    case 2:
        if (p > 1) Z.col(p - 1) = Z.col(0);
        break;
    case 3:
        Z.row(gen.integer(0, n - 1)).setZero();
        break;
    default:
        Z = gaussian(gen, n, 1) * gaussian(gen, 1, p);
        break;
    }
    return Z;
}

void criterion9(Tally& t, std::ostream& info)
{
    auto lattice = [&](const Eigen::MatrixXd& Z, const std::string& label) {
        const bool c = complete_separable(Z), w = weakly_separable(Z), nt = nontrivially_separable(Z),
                   cs = candes_sur_separable(Z);
        t.expect(!c || w, label + ": complete but not weak");
        t.expect(!w || nt, label + ": weak but not nontrivial");
        t.expect(!cs || nt, label + ": candes_sur but not nontrivial");
    };

    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(3, 2);
    A(0, 0) = -1;
    A(1, 0) = 1;
    A(2, 1) = 1;
    t.expect(weakly_separable(A) && !complete_separable(A), "(-e1, e1, e2) should be weak but not complete");
    lattice(A, "(-e1, e1, e2)");
    Eigen::MatrixXd B = Eigen::MatrixXd::Zero(2, 2);
    B(0, 0) = -1;
    B(1, 0) = 1;
    t.expect(nontrivially_separable(B) && !weakly_separable(B), "(-e1, e1) should be nontrivial but not weak");
    lattice(B, "(-e1, e1)");

    oracle::Gen gen(9000);
    for (int rep = 0; rep < 1000; ++rep) {
        const Eigen::MatrixXd Z = rep % 2 ? tricky(gen) : gaussian(gen, gen.integer(1, 10), gen.integer(1, 4));
        lattice(Z, "random dataset " + std::to_string(rep));
    }

    int disagreements = 0, separable = 0;
    for (int rep = 0; rep < 1000; ++rep) {
        const int p = gen.integer(2, 4), n = gen.integer(p + 1, p + 6);
        const Eigen::MatrixXd Z = gaussian(gen, n, p);
        const bool c = complete_separable(Z);
        const bool same = c == weakly_separable(Z) && c == nontrivially_separable(Z) && c == candes_sur_separable(Z);
        disagreements += !same;
        separable += c;
        t.expect(same, "generic dataset " + std::to_string(rep) + " disagrees");
    }
    info << "1000 lattice datasets + 2 counterexamples; generic: " << disagreements << " disagreements, " << separable
         << "/1000 separable";
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<void(Tally&, std::ostream&)>>> criteria{
        {"projection worked examples", criterion1},
        {"projection against the exhaustive oracle", criterion2},
        {"intrinsic volumes: closed form vs both Monte Carlo estimators", criterion3},
        {"orthant products and the kinematic formula", criterion4},
        {"Youden identities and quadrature vs Monte Carlo", criterion5},
        {"Cover recovery", criterion6},
        {"separability formula vs simulation", criterion7},
        {"bound validity", criterion8},
        {"separability definition lattice", criterion9},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Tally t;
        std::ostringstream info;
        try {
            criteria[i].second(t, info);
        } catch (const std::exception& e) {
            t.failures.push_back(std::string("exception: ") + e.what());
        }
        std::cout << (t.ok() ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ["
                  << info.str() << "; " << t.checks << " checks]\n";
        for (std::size_t f = 0; f < t.failures.size() && f < 5; ++f) std::cout << "    " << t.failures[f] << "\n";
        if (t.failures.size() > 5) std::cout << "    ... " << t.failures.size() - 5 << " more\n";
        std::cout.flush();
        failed += !t.ok();
    }
    return failed == 0 ? 0 : 1;
}
