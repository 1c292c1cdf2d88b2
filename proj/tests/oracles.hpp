#pragma once

// Independent reference implementations used by the tests. Nothing here calls
// into the library except for plain data types.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec = std::vector<double>;

// ---- generators ------------------------------------------------------------

struct Gen {
    std::mt19937_64 eng;
    explicit Gen(std::uint64_t seed) : eng(seed) {}

    double normal() { return std::normal_distribution<double>(0.0, 1.0)(eng); }
    double uniform(double a, double b) { return std::uniform_real_distribution<double>(a, b)(eng); }
    int integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(eng); }
    bool coin() { return integer(0, 1) == 1; }

    Vec normals(int n)
    {
        Vec x(n);
        for (auto& e : x) e = normal();
        return x;
    }

    // nonzero entries, at least one of each sign when n >= 2
    Vec mixed_v(int n)
    {
        Vec v(n);
        for (;;) {
            int pos = 0;
            for (auto& e : v) {
                const double mag = uniform(0.2, 3.0);
                e = coin() ? mag : -mag;
                pos += e > 0;
            }
            if (n < 2 || (pos > 0 && pos < n)) return v;
        }
    }
};

// ---- projection ------------------------------------------------------------

inline bool in_cone(const Vec& v, const Vec& x, double tol)
{
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double r = x[j] / v[j];
        if (v[j] > 0) lo = std::min(lo, r);
        else hi = std::max(hi, r);
    }
    return lo >= hi - tol;
}

inline bool moreau_ok(const Vec& v, const Vec& x, const Vec& y, double tol)
{
    if (!in_cone(v, y, tol)) return false;
    double wv = 0.0, wy = 0.0;
    for (std::size_t j = 0; j < v.size(); ++j) {
        const double w = x[j] - y[j];
        if (w > tol) return false;
        wv += w * v[j];
        wy += w * y[j];
    }
    return std::fabs(wv) <= tol && std::fabs(wy) <= tol;
}

// Enumerates every nonempty (L, R) and the identity candidate; returns the
// Moreau-valid candidate closest to x.
inline Vec projection_bruteforce(const Vec& v, const Vec& x)
{
    const int n = static_cast<int>(v.size());
    std::vector<int> left, right;
    for (int j = 0; j < n; ++j) (v[j] > 0 ? left : right).push_back(j);
    double scale = 1.0;
    for (int j = 0; j < n; ++j) scale = std::max({scale, std::fabs(x[j]), std::fabs(v[j])});
    const double tol = 1e-9 * scale * scale;

    Vec best;
    double best_d = std::numeric_limits<double>::infinity();
    auto consider = [&](const Vec& y) {
        if (!moreau_ok(v, x, y, tol)) return;
        double d = 0.0;
        for (int j = 0; j < n; ++j) d += (x[j] - y[j]) * (x[j] - y[j]);
        if (d < best_d) {
            best_d = d;
            best = y;
        }
    };
    consider(x);
    if (left.empty() || right.empty()) return best;
    const int nl = static_cast<int>(left.size()), nr = static_cast<int>(right.size());
    for (int ml = 1; ml < (1 << nl); ++ml)
        for (int mr = 1; mr < (1 << nr); ++mr) {
            double num = 0.0, den = 0.0;
            std::vector<int> act;
            for (int i = 0; i < nl; ++i)
                if (ml >> i & 1) act.push_back(left[i]);
            for (int i = 0; i < nr; ++i)
                if (mr >> i & 1) act.push_back(right[i]);
            for (int j : act) {
                num += x[j] * v[j];
                den += v[j] * v[j];
            }
            Vec y = x;
            for (int j : act) y[j] = num / den * v[j];
            consider(y);
        }
    return best;
}

// ---- subspace meets an orthant product -------------------------------------

// Does span(Q) (n x d, full column rank) meet R^N x [0,inf)^{n-N} outside 0?
// With S the last n-N rows, this asks for c != 0 with Q_S c >= 0. If d > |S|
// a null vector of Q_S works. Otherwise {c : Q_S c >= 0} is pointed and is
// nontrivial iff it has an extreme ray, i.e. a null vector of some d-1 rows
// of Q_S that satisfies all rows up to sign.
inline bool meets_orthant_product(const Eigen::MatrixXd& Q, int N)
{
    const int n = static_cast<int>(Q.rows()), d = static_cast<int>(Q.cols());
    const int m = n - N;
    if (d > m) return true;
    const Eigen::MatrixXd QS = Q.bottomRows(m);
    std::vector<bool> sel(m, false);
    std::fill(sel.begin(), sel.begin() + (d - 1), true);
    do {
        Eigen::MatrixXd A(d - 1, d);
        for (int i = 0, r = 0; i < m; ++i)
            if (sel[i]) A.row(r++) = QS.row(i);
        Eigen::VectorXd ray;
        if (d == 1) {
            ray = Eigen::VectorXd::Ones(1);
        } else {
            Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
            const Eigen::MatrixXd ker = lu.kernel();
            if (ker.cols() != 1) continue;
            ray = ker.col(0);
        }
        const Eigen::VectorXd s = QS * ray;
        const double tol = 1e-12 * s.cwiseAbs().maxCoeff();
        if ((s.array() >= -tol).all() || (s.array() <= tol).all()) return true;
    } while (std::prev_permutation(sel.begin(), sel.end()));
    return false;
}

// ---- separability in one and two dimensions --------------------------------

// Rows of Z (n x 1 or n x 2): is there beta with Z beta > 0 componentwise?
inline bool complete_separable_low_dim(const Eigen::MatrixXd& Z)
{
    const int n = static_cast<int>(Z.rows());
    if (Z.cols() == 1) {
        const bool pos = (Z.col(0).array() > 0).all();
        const bool neg = (Z.col(0).array() < 0).all();
        return pos || neg;
    }
    // p = 2: the points lie in an open half plane iff some angular gap
    // between consecutive directions exceeds pi.
    std::vector<double> ang;
    for (int i = 0; i < n; ++i) {
        if (Z(i, 0) == 0.0 && Z(i, 1) == 0.0) return false;
        ang.push_back(std::atan2(Z(i, 1), Z(i, 0)));
    }
    std::sort(ang.begin(), ang.end());
    double gap = ang.front() + 2 * M_PI - ang.back();
    for (int i = 1; i < n; ++i) gap = std::max(gap, ang[i] - ang[i - 1]);
    return gap > M_PI;
}

// ---- closed-form reference values ------------------------------------------

inline double binom(int n, int k)
{
    if (k < 0 || k > n) return 0.0;
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return std::round(r);
}

inline double cover(int n, int p)
{
    if (p >= n) return 1.0;
    double s = 0.0;
    for (int k = 0; k < p; ++k) s += binom(n - 1, k);
    return s / std::pow(2.0, n - 1);
}

}  // namespace oracle
