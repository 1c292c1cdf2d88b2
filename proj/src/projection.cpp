#include "linsep/projection.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "linsep/numerics.hpp"

namespace linsep {

namespace {

struct LoopState {
    bool inside = false;
    std::vector<int> lorder, rorder;  // left ratios ascending, right ratios descending
    std::size_t a = 0, b = 0;         // L = lorder[0..a), R = rorder[0..b)
    double sigma = 0.0;
};

LoopState run_projection(const ConeSpec& cone, std::span<const double> x, std::vector<ProjectionStep>* trace)
{
    LoopState s;
    if (cone.full_space()) {
        s.inside = true;
        return s;
    }
    const auto& v = cone.v();
    auto ratio = [&](int j) { return x[j] / v[j]; };
    s.lorder = cone.left();
    s.rorder = cone.right();
    std::stable_sort(s.lorder.begin(), s.lorder.end(), [&](int i, int j) { return ratio(i) < ratio(j); });
    std::stable_sort(s.rorder.begin(), s.rorder.end(), [&](int i, int j) { return ratio(i) > ratio(j); });

    const double min_left = ratio(s.lorder.front());
    const double max_right = ratio(s.rorder.front());
    if (min_left >= max_right - cone.default_tol(x)) {
        s.inside = true;
        return s;
    }
    // Violated sets are prefixes of the sorted orders.
    std::size_t nl_bar = 0, nr_bar = 0;
    while (nl_bar < s.lorder.size() && ratio(s.lorder[nl_bar]) < max_right) ++nl_bar;
    while (nr_bar < s.rorder.size() && ratio(s.rorder[nr_bar]) > min_left) ++nr_bar;

    const int l0 = s.lorder[0], r0 = s.rorder[0];
    double sxv = x[l0] * v[l0] + x[r0] * v[r0];
    double svv = v[l0] * v[l0] + v[r0] * v[r0];
    s.a = s.b = 1;
    for (;;) {
        const double sig = sxv / svv;
        const bool grow_left = s.a < nl_bar && ratio(s.lorder[s.a]) <= sig;
        const bool grow_right = s.b < nr_bar && ratio(s.rorder[s.b]) >= sig;
        // No admissible extension means y^{LR} is already in P.
        if (!grow_left && !grow_right) {
            s.sigma = sig;
            break;
        }
        if (grow_left) {
            const int j = s.lorder[s.a++];
            sxv += x[j] * v[j];
            svv += v[j] * v[j];
        }
        if (grow_right) {
            const int j = s.rorder[s.b++];
            sxv += x[j] * v[j];
            svv += v[j] * v[j];
        }
        if (trace) trace->push_back({sig, sxv / svv, grow_left, grow_right});
    }
    return s;
}

}  // namespace

double sigma(const ConeSpec& cone, std::span<const double> x, const CandidatePair& pair)
{
    check_length(cone, x, "sigma");
    if (pair.L.empty() && pair.R.empty()) throw ValidationError("sigma: empty index pair");
    double num = 0.0, den = 0.0;
    auto add = [&](int j) {
        if (j < 0 || j >= cone.n()) throw ValidationError("sigma: index out of range");
        num += x[j] * cone.v()[j];
        den += cone.v()[j] * cone.v()[j];
    };
    for (int j : pair.L) add(j);
    for (int j : pair.R) add(j);
    return num / den;
}

std::vector<double> candidate_point(const ConeSpec& cone, std::span<const double> x, const CandidatePair& pair)
{
    const double s = sigma(cone, x, pair);
    std::vector<double> y(x.begin(), x.end());
    for (int j : pair.L) y[j] = cone.v()[j] * s;
    for (int j : pair.R) y[j] = cone.v()[j] * s;
    return y;
}

CandidatePair violated_sets(const ConeSpec& cone, std::span<const double> x)
{
    check_length(cone, x, "violated_sets");
    CandidatePair out;
    if (cone.full_space()) return out;
    const auto& v = cone.v();
    double min_left = INFINITY, max_right = -INFINITY;
    for (int l : cone.left()) min_left = std::min(min_left, x[l] / v[l]);
    for (int r : cone.right()) max_right = std::max(max_right, x[r] / v[r]);
    for (int l : cone.left())
        if (x[l] / v[l] < max_right) out.L.push_back(l);
    for (int r : cone.right())
        if (x[r] / v[r] > min_left) out.R.push_back(r);
    return out;
}

ProjectionResult project(const ConeSpec& cone, std::span<const double> x, std::vector<ProjectionStep>* trace)
{
    check_length(cone, x, "project");
    for (double a : x)
        if (!std::isfinite(a)) throw ValidationError("project: x has a non-finite entry");
    LoopState s = run_projection(cone, x, trace);
    ProjectionResult out;
    out.y.assign(x.begin(), x.end());
    if (s.inside) {
        out.face_dim = cone.n();
        return out;
    }
    CandidatePair pair;
    pair.L.assign(s.lorder.begin(), s.lorder.begin() + s.a);
    pair.R.assign(s.rorder.begin(), s.rorder.begin() + s.b);
    for (int j : pair.L) out.y[j] = cone.v()[j] * s.sigma;
    for (int j : pair.R) out.y[j] = cone.v()[j] * s.sigma;
    std::sort(pair.L.begin(), pair.L.end());
    std::sort(pair.R.begin(), pair.R.end());
    out.face_dim = cone.n() - static_cast<int>(s.a + s.b - 1);
    out.terminal_pair = std::move(pair);
    return out;
}

int projection_face_dim(const ConeSpec& cone, std::span<const double> x)
{
    LoopState s = run_projection(cone, x, nullptr);
    return s.inside ? cone.n() : cone.n() - static_cast<int>(s.a + s.b - 1);
}

std::string MoreauReport::describe() const
{
    std::ostringstream os;
    os << "(1) y in P: " << (in_cone ? "ok" : "FAILED") << "; (2) x-y in polar: "
       << (residual_in_polar ? "ok" : "FAILED") << "; (3) <x-y,y>=0: " << (orthogonal ? "ok" : "FAILED")
       << " (inner product " << inner_product << ")";
    return os.str();
}

MoreauReport verify_moreau(const ConeSpec& cone, std::span<const double> x, std::span<const double> y, double tol)
{
    check_length(cone, x, "verify_moreau");
    check_length(cone, y, "verify_moreau");
    MoreauReport rep;
    double scale = 1.0;
    for (double a : x) scale = std::max(scale, std::fabs(a));
    for (double a : y) scale = std::max(scale, std::fabs(a));
    std::vector<double> w(x.size());
    for (std::size_t j = 0; j < x.size(); ++j) w[j] = x[j] - y[j];
    rep.in_cone = contains(cone, y, tol * scale);
    rep.residual_in_polar = polar_contains(cone, w, tol * scale);
    rep.inner_product = std::inner_product(w.begin(), w.end(), y.begin(), 0.0);
    rep.orthogonal = std::fabs(rep.inner_product) <= tol * scale * scale * static_cast<double>(x.size());
    return rep;
}

}  // namespace linsep
