#include "linsep/cone.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <json.hpp>

#include "linsep/numerics.hpp"

namespace linsep {

ConeSpec::ConeSpec(std::vector<double> v) : v_(std::move(v))
{
    if (v_.empty()) throw ValidationError("ConeSpec: v must have at least one entry");
    double ss = 0.0;
    for (std::size_t j = 0; j < v_.size(); ++j) {
        if (!std::isfinite(v_[j]) || v_[j] == 0.0)
            throw ValidationError("ConeSpec: entry " + std::to_string(j) + " of v is zero or not finite");
        (v_[j] > 0 ? left_ : right_).push_back(static_cast<int>(j));
        ss += v_[j] * v_[j];
    }
    norm_ = std::sqrt(ss);
    perm_ = left_;
    perm_.insert(perm_.end(), right_.begin(), right_.end());
}

double ConeSpec::default_tol(std::span<const double> x) const
{
    double m = 1.0;
    for (double a : x) m = std::max(m, std::fabs(a));
    for (double a : v_) m = std::max(m, std::fabs(a));
    return 1e-9 * m;
}

ConeSpec ConeSpec::from_json(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ValidationError(std::string("cone JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("v") || !j["v"].is_array())
        throw ValidationError("cone JSON: expected an object {\"v\": [...]}");
    std::vector<double> v;
    for (const auto& e : j["v"]) {
        if (!e.is_number()) throw ValidationError("cone JSON: entries of v must be numbers");
        v.push_back(e.get<double>());
    }
    return ConeSpec(std::move(v));
}

std::string ConeSpec::to_json() const
{
    return nlohmann::json{{"v", v_}}.dump();
}

void check_length(const ConeSpec& cone, std::span<const double> x, const char* what)
{
    if (static_cast<int>(x.size()) != cone.n())
        throw ValidationError(std::string(what) + ": length " + std::to_string(x.size()) +
                              " does not match cone dimension " + std::to_string(cone.n()));
}

bool contains(const ConeSpec& cone, std::span<const double> x, std::optional<double> tol)
{
    check_length(cone, x, "contains");
    if (cone.full_space()) return true;
    const double t = tol ? *tol : cone.default_tol(x);
    const auto& v = cone.v();
    double min_left = INFINITY, max_right = -INFINITY;
    for (int l : cone.left()) min_left = std::min(min_left, x[l] / v[l]);
    for (int r : cone.right()) max_right = std::max(max_right, x[r] / v[r]);
    return min_left >= max_right - t;
}

bool polar_contains(const ConeSpec& cone, std::span<const double> w, double tol)
{
    check_length(cone, w, "polar_contains");
    double dot = 0.0, ww = 0.0;
    for (int j = 0; j < cone.n(); ++j) {
        if (w[j] > tol) return false;
        dot += w[j] * cone.v()[j];
        ww += w[j] * w[j];
    }
    return std::fabs(dot) <= tol * std::sqrt(ww) * cone.norm();
}

std::vector<FacetNormal> facets(const ConeSpec& cone)
{
    if (cone.full_space()) throw std::domain_error("facets: cone is full space (all entries of v share a sign)");
    std::vector<FacetNormal> out;
    out.reserve(cone.left().size() * cone.right().size());
    const auto& v = cone.v();
    for (int l : cone.left())
        for (int r : cone.right()) {
            FacetNormal f{l, r, std::vector<double>(cone.n(), 0.0)};
            f.a[l] = -1.0 / std::fabs(v[l]);
            f.a[r] = -1.0 / std::fabs(v[r]);
            out.push_back(std::move(f));
        }
    return out;
}

std::vector<FacetCoefficient> decompose_polar(const ConeSpec& cone, std::span<const double> w, double tol)
{
    check_length(cone, w, "decompose_polar");
    for (int j = 0; j < cone.n(); ++j)
        if (w[j] > tol)
            throw ValidationError("decompose_polar: w is not in the polar cone (entry " + std::to_string(j) +
                                  " is positive)");
    if (!polar_contains(cone, w, tol))
        throw ValidationError("decompose_polar: w is not in the polar cone (w is not orthogonal to v)");
    if (cone.full_space()) {
        // polar of R^n is {0}
        return {};
    }

    const auto& v = cone.v();
    const auto& L = cone.left();
    const auto& R = cone.right();
    const std::size_t nl = L.size(), nr = R.size();
    std::vector<double> beta(nl * nr, 0.0);
    // current value of (sum beta a)_j
    std::vector<double> cur(cone.n(), 0.0);

    for (std::size_t k = 0; k < nl; ++k) {
        const int lk = L[k];
        std::size_t q = 0;
        while (cur[lk] > w[lk] && q < nr) {
            const int rq = R[q];
            if (cur[rq] > w[rq]) {
                const double ak = -1.0 / std::fabs(v[lk]);
                const double aq = -1.0 / std::fabs(v[rq]);
                const double old = beta[k * nr + q];
                const double rest_k = cur[lk] - old * ak;
                const double rest_q = cur[rq] - old * aq;
                // The smaller of the two fills one side exactly without
                // pushing the other below its target.
                const double b = std::max(0.0, std::min((w[lk] - rest_k) / ak, (w[rq] - rest_q) / aq));
                beta[k * nr + q] = b;
                cur[lk] = rest_k + b * ak;
                cur[rq] = rest_q + b * aq;
            }
            ++q;
        }
    }

    double scale = 1.0;
    for (int j = 0; j < cone.n(); ++j) scale = std::max(scale, std::fabs(w[j]));
    std::vector<double> recon(cone.n(), 0.0);
    std::vector<FacetCoefficient> out;
    out.reserve(beta.size());
    for (std::size_t k = 0; k < nl; ++k)
        for (std::size_t q = 0; q < nr; ++q) {
            const double b = beta[k * nr + q];
            out.push_back({L[k], R[q], b});
            recon[L[k]] -= b / std::fabs(v[L[k]]);
            recon[R[q]] -= b / std::fabs(v[R[q]]);
        }
    for (int j = 0; j < cone.n(); ++j)
        if (std::fabs(recon[j] - w[j]) > tol * scale)
            throw std::runtime_error("decompose_polar: reconstruction residual " +
                                     std::to_string(std::fabs(recon[j] - w[j])) + " at entry " +
                                     std::to_string(j) + " exceeds tolerance");
    return out;
}

bool envelope_contains(int N, int n, std::span<const double> x, double tol)
{
    if (static_cast<int>(x.size()) != n || N < 0 || N > n)
        throw ValidationError("envelope_contains: length mismatch");
    bool left_ok = true, right_ok = true;
    for (int j = 0; j < N; ++j) left_ok = left_ok && x[j] >= -tol;
    for (int j = N; j < n; ++j) right_ok = right_ok && x[j] >= -tol;
    return left_ok || right_ok;
}

bool envelope_contains(const ConeSpec& cone, std::span<const double> x, double tol)
{
    check_length(cone, x, "envelope_contains");
    std::vector<double> c(x.size());
    for (int i = 0; i < cone.n(); ++i) c[i] = x[cone.perm()[i]];
    return envelope_contains(cone.N(), cone.n(), c, tol);
}

}  // namespace linsep
