#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "linsep/probability.hpp"
#include "linsep/random.hpp"

namespace linsep {

struct Dataset {
    Eigen::MatrixXd features;  // n x p
    std::vector<int> labels;   // +-1

    int n() const { return static_cast<int>(features.rows()); }
    int p() const { return static_cast<int>(features.cols()); }
    void validate() const;

    // header x1..xp,y
    static Dataset from_csv(std::istream& in);
    void to_csv(std::ostream& out) const;
};

enum class Separability { complete, weak, nontrivial, candes_sur };

Separability parse_separability(const std::string& s);
std::string to_string(Separability s);

// How complete separability is decided.
enum class CompleteRoute {
    automatic,  // primal for n <= 4(p+1), Farkas otherwise
    primal,     // Z beta >= 1 feasible
    farkas,     // {Z^T lambda = 0, 1^T lambda = 1, lambda >= 0} infeasible
};

// Rows z_j = y_j x_j; with intercept the first column is y.
Eigen::MatrixXd signed_features(const Dataset& ds, bool intercept);

bool complete_separable(const Eigen::MatrixXd& Z, CompleteRoute route = CompleteRoute::automatic);
bool weakly_separable(const Eigen::MatrixXd& Z);
bool nontrivially_separable(const Eigen::MatrixXd& Z);
bool candes_sur_separable(const Eigen::MatrixXd& Z);

// Pivoted elimination, pivots below 1e-10 * |Z| count as zero.
int numerical_rank(const Eigen::MatrixXd& Z);

bool check_separability(const Dataset& ds, Separability definition, bool intercept,
                        CompleteRoute route = CompleteRoute::automatic);

Dataset sample_dataset(const ModelSpec& model, int n, int p, RandomStream& rs);

// Frequency of complete separability over sampled datasets. The model's own
// intercept flag is ignored in favour of the argument.
ProbabilityResult estimate_separability(const ModelSpec& model, int n, int p, std::uint64_t trials,
                                        const RandomStream& stream, unsigned workers, bool intercept);

}  // namespace linsep
