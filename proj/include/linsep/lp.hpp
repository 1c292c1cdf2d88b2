#pragma once

#include <string>
#include <vector>

namespace linsep {

enum class Sense { le, ge, eq };
enum class VarBound { nonneg, free };

// rows: sum_j A[i][j] x_j (sense_i) b_i; optional objective is maximized.
struct LpProblem {
    int num_vars = 0;
    std::vector<std::vector<double>> A;
    std::vector<double> b;
    std::vector<Sense> senses;
    std::vector<double> objective;  // empty: feasibility only
    std::vector<VarBound> bounds;   // empty: all nonneg

    void add_row(std::vector<double> row, Sense sense, double rhs);
    void validate() const;
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
    LpStatus status = LpStatus::infeasible;
    std::vector<double> x;
    double objective = 0.0;
    double phase1_infeasibility = 0.0;  // phase-1 optimum (sum of artificials)
    double max_violation = 0.0;         // of x against the original rows
    int iterations = 0;

    bool feasible() const { return status != LpStatus::infeasible; }
};

inline constexpr double kLpTol = 1e-9;

// Dense two-phase tableau simplex with Bland's rule.
LpResult lp_solve(const LpProblem& problem, double tol = kLpTol);

// Phase 1 only; the objective is ignored.
LpResult lp_feasible(const LpProblem& problem, double tol = kLpTol);

std::string to_string(LpStatus s);

}  // namespace linsep
