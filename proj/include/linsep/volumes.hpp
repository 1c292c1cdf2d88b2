#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "linsep/cone.hpp"
#include "linsep/numerics.hpp"
#include "linsep/random.hpp"
#include "linsep/youden.hpp"

namespace linsep {

enum class VolumeMethod { mc, combinatorial_mc, closed_form, exact_combinatorial };

std::string to_string(VolumeMethod m);

struct VolumeDistribution {
    std::vector<double> probs;  // indexed by face dimension 0..n
    std::vector<double> se;     // empty for exact methods
    VolumeMethod method = VolumeMethod::closed_form;
    std::uint64_t samples = 0;
    // closed form diagnostics
    double max_condition = 1.0;
    double max_imag_residual = 0.0;
    double err_estimate = 0.0;
    bool precision_warning = false;

    int n() const { return static_cast<int>(probs.size()) - 1; }
};

struct ClosedFormOptions {
    int max_n = 22;
    std::uint64_t max_pairs = std::uint64_t{1} << 20;
    ExpansionMode mode = ExpansionMode::real_form;
};

VolumeDistribution intrinsic_volumes_mc(const ConeSpec& cone, std::uint64_t samples, const RandomStream& stream,
                                        unsigned workers = 1);

VolumeDistribution intrinsic_volumes_closed(const ConeSpec& cone, const QuadConfig& cfg,
                                            const ClosedFormOptions& opts = {});

// Pair-sum estimator that never projects: for each draw it tests the
// inequality event of every (L, R) pair that can possibly hold.
VolumeDistribution intrinsic_volumes_combinatorial_mc(const ConeSpec& cone, std::uint64_t samples,
                                                      const RandomStream& stream, unsigned workers = 1);

VolumeDistribution intrinsic_volumes_orthant_product(int N, int n);

struct FaceVolume {
    double value = 0.0;
    double err_estimate = 0.0;
    double max_condition = 1.0;
    double max_imag_residual = 0.0;
    bool precision_warning = false;
};

// nu_f for 1 <= f <= n-1 from the pair sum, only the pairs of size n - f + 1.
FaceVolume face_volume_closed(const ConeSpec& cone, int face_dim, const QuadConfig& cfg,
                              const ClosedFormOptions& opts = {});

// nu_n = P[min_l g_l/v_l >= max_r g_r/v_r] as a one-dimensional integral.
QuadResult full_dimensional_volume(const ConeSpec& cone, const QuadConfig& cfg);

// Number of (L, R) pairs with |L| + |R| = size and both sides nonempty.
double pair_count(int N, int n, int size);

double statistical_dimension(const VolumeDistribution& dist);

struct KinematicResult {
    double value = 0.0;  // 2 sum_{j odd} nu_{k+j}, clamped
    double lower = 0.0;  // sum_{j >= k+1} nu_j
    double upper = 0.0;  // sum_{j >= k} nu_j
    double clamp_distance = 0.0;
};

KinematicResult kinematic_intersection_prob(const VolumeDistribution& dist, int k);

enum class ConcentrationSide { above, below };

double concentration_bound(double delta_c, double delta_polar, double t, ConcentrationSide side);

}  // namespace linsep
