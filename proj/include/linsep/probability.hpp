#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>

#include "linsep/numerics.hpp"
#include "linsep/random.hpp"

namespace linsep {

// A model whose conditional law of v given the sign pattern is not available.
class UnsupportedModelError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

enum class ModelKind { sign_flip, logit, probit, signalless };

struct ModelSpec {
    ModelKind kind = ModelKind::sign_flip;
    double delta = 1.0;           // sign_flip: probability of a correct label
    double b = 0.5;               // signalless: P[y = 1]
    double beta_star_norm = 1.0;  // logit / probit
    bool intercept = false;

    static ModelSpec sign_flip(double delta, bool intercept = false);
    static ModelSpec logit(double beta_star_norm, bool intercept = false);
    static ModelSpec probit(double beta_star_norm, bool intercept = false);
    static ModelSpec signalless(double b, bool intercept = true);

    void validate() const;
    std::string name() const;
    double param() const;  // delta, b or |beta*| depending on kind
};

ModelKind parse_model_kind(const std::string& s);

struct ProbabilityResult {
    double value = 0.0;
    double se = 0.0;
    std::string method;
    double clamp_distance = 0.0;
    double skipped_mass = 0.0;
    bool precision_warning = false;
    std::uint64_t samples = 0;
};

struct BoundResult {
    double bound = 1.0;
    bool condition_met = false;
    double condition_threshold = 0.0;
    std::string kind;
};

// Fills v (length n) with a draw of v | A_N: entries 0..N-1 positive, the rest negative.
using ConditionalSampler = std::function<void(int N, std::span<double> v, RandomStream& rs)>;

struct FormulaConfig {
    QuadConfig quad;
    std::uint64_t outer_samples = 2000;
    unsigned workers = 1;
    double weight_cutoff = 1e-12;
    ConditionalSampler sampler;  // required for logit / probit
};

double cover_probability(int n, int p, bool intercept);

ProbabilityResult separability_formula(int n, int p, const ModelSpec& model, const FormulaConfig& cfg,
                                       const RandomStream& stream);

double separability_dim2_signflip(int n, double delta);

ProbabilityResult separability_intercept_signalless(int n, int p, double b, const QuadConfig& cfg);

enum class DimensionBoundVariant { no_intercept, intercept_signalless };

// sigma: probability of a wrong label; for the intercept variant pass b,
// min(b, 1 - b) is taken.
BoundResult bound_dimension(int n, int p, double t, double sigma,
                            DimensionBoundVariant variant = DimensionBoundVariant::no_intercept);

struct SignFlipBounds {
    double upper = 1.0;
    double lower = 0.0;
    BoundResult rate_form;
};

SignFlipBounds bound_signflip(int n, int p, double delta, bool intercept, double t = 1.0);

BoundResult bound_hayakawa(int n, int p, double tukey_depth);

}  // namespace linsep
