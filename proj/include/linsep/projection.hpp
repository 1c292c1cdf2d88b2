#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linsep/cone.hpp"

namespace linsep {

struct CandidatePair {
    std::vector<int> L;  // user indices with v > 0
    std::vector<int> R;  // user indices with v < 0
};

struct ProjectionResult {
    std::vector<double> y;
    std::optional<CandidatePair> terminal_pair;  // empty when x was already in P
    int face_dim = 0;
};

// One loop iteration of the projection, for instrumented tests.
struct ProjectionStep {
    double sigma_before;
    double sigma_after;
    bool grew_left;
    bool grew_right;
};

double sigma(const ConeSpec& cone, std::span<const double> x, const CandidatePair& pair);

// y^{LR}: v_j * sigma on L u R, x elsewhere.
std::vector<double> candidate_point(const ConeSpec& cone, std::span<const double> x, const CandidatePair& pair);

// Left indices in some violated inequality, and right indices likewise.
CandidatePair violated_sets(const ConeSpec& cone, std::span<const double> x);

ProjectionResult project(const ConeSpec& cone, std::span<const double> x,
                         std::vector<ProjectionStep>* trace = nullptr);

// Face dimension of the projection of x, without building y.
int projection_face_dim(const ConeSpec& cone, std::span<const double> x);

struct MoreauReport {
    bool in_cone = false;           // (1) y in P
    bool residual_in_polar = false; // (2) x - y in the polar
    bool orthogonal = false;        // (3) <x - y, y> = 0
    double inner_product = 0.0;

    bool ok() const { return in_cone && residual_in_polar && orthogonal; }
    std::string describe() const;
};

MoreauReport verify_moreau(const ConeSpec& cone, std::span<const double> x, std::span<const double> y,
                           double tol = 1e-9);

}  // namespace linsep
