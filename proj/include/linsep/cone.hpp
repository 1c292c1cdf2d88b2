#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace linsep {

// P = span{v} + [0,inf)^n. User order is kept; canonical order (positives
// first, then negatives) is available through perm().
class ConeSpec {
public:
    explicit ConeSpec(std::vector<double> v);

    int n() const { return static_cast<int>(v_.size()); }
    int N() const { return static_cast<int>(left_.size()); }
    const std::vector<double>& v() const { return v_; }
    // perm()[c] = user index of canonical position c
    const std::vector<int>& perm() const { return perm_; }
    const std::vector<int>& left() const { return left_; }    // user indices with v > 0
    const std::vector<int>& right() const { return right_; }  // user indices with v < 0
    bool full_space() const { return left_.empty() || right_.empty(); }
    double norm() const { return norm_; }

    // 1e-9 * max(1, |x|_inf, |v|_inf)
    double default_tol(std::span<const double> x) const;

    static ConeSpec from_json(const std::string& text);
    std::string to_json() const;

private:
    std::vector<double> v_;
    std::vector<int> perm_, left_, right_;
    double norm_ = 0.0;
};

struct FacetNormal {
    int l;  // user index, v_l > 0
    int r;  // user index, v_r < 0
    std::vector<double> a;  // -e_l/|v_l| - e_r/|v_r|
};

struct FacetCoefficient {
    int l;
    int r;
    double beta;
};

bool contains(const ConeSpec& cone, std::span<const double> x, std::optional<double> tol = {});
bool polar_contains(const ConeSpec& cone, std::span<const double> w, double tol = 1e-9);

// Throws std::domain_error when the cone is the full space.
std::vector<FacetNormal> facets(const ConeSpec& cone);

// Non-negative coefficients over all (l, r) pairs with sum beta_lr a^lr = w.
// The reconstruction is verified before returning.
std::vector<FacetCoefficient> decompose_polar(const ConeSpec& cone, std::span<const double> w,
                                              double tol = 1e-9);

// x in canonical order: true iff x_1..x_N >= -tol or x_{N+1}..x_n >= -tol.
bool envelope_contains(int N, int n, std::span<const double> x, double tol = 1e-9);
// Same test with x in the cone's user order.
bool envelope_contains(const ConeSpec& cone, std::span<const double> x, double tol = 1e-9);

void check_length(const ConeSpec& cone, std::span<const double> x, const char* what);

}  // namespace linsep
