#include "linsep/lp.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "linsep/numerics.hpp"

namespace linsep {

void LpProblem::add_row(std::vector<double> row, Sense sense, double rhs)
{
    A.push_back(std::move(row));
    senses.push_back(sense);
    b.push_back(rhs);
}

void LpProblem::validate() const
{
    if (num_vars < 0) throw ValidationError("LpProblem: negative variable count");
    if (A.size() != b.size() || A.size() != senses.size())
        throw ValidationError("LpProblem: rows, right-hand side and senses differ in length");
    for (const auto& row : A)
        if (static_cast<int>(row.size()) != num_vars) throw ValidationError("LpProblem: row length != num_vars");
    if (!objective.empty() && static_cast<int>(objective.size()) != num_vars)
        throw ValidationError("LpProblem: objective length != num_vars");
    if (!bounds.empty() && static_cast<int>(bounds.size()) != num_vars)
        throw ValidationError("LpProblem: bounds length != num_vars");
    for (double v : b)
        if (!std::isfinite(v)) throw ValidationError("LpProblem: non-finite right-hand side");
}

std::string to_string(LpStatus s)
{
    switch (s) {
    case LpStatus::optimal: return "optimal";
    case LpStatus::infeasible: return "infeasible";
    case LpStatus::unbounded: return "unbounded";
    }
    return "unknown";
}

namespace {

class Tableau {
public:
    Tableau(int rows, int cols) : m_(rows), n_(cols), t_(static_cast<std::size_t>(rows) * (cols + 1), 0.0) {}

    double& at(int i, int j) { return t_[static_cast<std::size_t>(i) * (n_ + 1) + j]; }
    double& rhs(int i) { return at(i, n_); }
    int rows() const { return m_; }
    int cols() const { return n_; }

    void pivot(int r, int c, std::vector<double>& cost, double& z)
    {
        const double pv = at(r, c);
        for (int j = 0; j <= n_; ++j) at(r, j) /= pv;
        at(r, c) = 1.0;
        for (int i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = at(i, c);
            if (f == 0.0) continue;
            for (int j = 0; j <= n_; ++j) at(i, j) -= f * at(r, j);
            at(i, c) = 0.0;
        }
        const double f = cost[c];
        if (f != 0.0) {
            for (int j = 0; j < n_; ++j) cost[j] -= f * at(r, j);
            z -= f * rhs(r);
            cost[c] = 0.0;
        }
    }

private:
    int m_, n_;
    std::vector<double> t_;
};

// Minimizes cost over the tableau with Bland's rule. Returns false when unbounded.
bool run_simplex(Tableau& T, std::vector<int>& basis, std::vector<double>& cost, double& z,
                 const std::vector<char>& banned, double tol, int& iterations, int max_iter)
{
    for (;;) {
        int enter = -1;
        for (int j = 0; j < T.cols(); ++j)
            if (!banned[j] && cost[j] < -tol) {
                enter = j;
                break;
            }
        if (enter < 0) return true;
        int leave = -1;
        double best = 0.0;
        for (int i = 0; i < T.rows(); ++i) {
            const double a = T.at(i, enter);
            if (a <= tol) continue;
            const double ratio = T.rhs(i) / a;
            if (leave < 0 || ratio < best - 1e-15 || (std::fabs(ratio - best) <= 1e-15 && basis[i] < basis[leave])) {
                leave = i;
                best = ratio;
            }
        }
        if (leave < 0) return false;
        T.pivot(leave, enter, cost, z);
        basis[leave] = enter;
        if (++iterations > max_iter) throw std::runtime_error("lp_solve: iteration guard exceeded (cycling?)");
    }
}

LpResult solve(const LpProblem& pr, double tol, bool phase2)
{
    pr.validate();
    const int m = static_cast<int>(pr.A.size());
    const int nv = pr.num_vars;
    auto is_free = [&](int j) { return !pr.bounds.empty() && pr.bounds[j] == VarBound::free; };

    // structural columns
    std::vector<int> pos_col(nv), neg_col(nv, -1);
    int ns = 0;
    for (int j = 0; j < nv; ++j) {
        pos_col[j] = ns++;
        if (is_free(j)) neg_col[j] = ns++;
    }
    std::vector<Sense> sense = pr.senses;
    std::vector<double> sign(m, 1.0);
    int n_slack = 0, n_art = 0;
    for (int i = 0; i < m; ++i) {
        if (pr.b[i] < 0.0) {
            sign[i] = -1.0;
            if (sense[i] == Sense::le)
                sense[i] = Sense::ge;
            else if (sense[i] == Sense::ge)
                sense[i] = Sense::le;
        }
        if (sense[i] != Sense::eq) ++n_slack;
        if (sense[i] != Sense::le) ++n_art;
    }
    const int art0 = ns + n_slack;
    const int cols = art0 + n_art;
    Tableau T(m, cols);
    std::vector<int> basis(m);
    std::vector<char> is_art(cols, 0);
    int slack = ns, art = art0;
    double bscale = 1.0;
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < nv; ++j) {
            const double a = sign[i] * pr.A[i][j];
            T.at(i, pos_col[j]) = a;
            if (neg_col[j] >= 0) T.at(i, neg_col[j]) = -a;
        }
        T.rhs(i) = sign[i] * pr.b[i];
        bscale = std::max(bscale, std::fabs(T.rhs(i)));
        if (sense[i] == Sense::le) {
            T.at(i, slack) = 1.0;
            basis[i] = slack++;
        } else {
            if (sense[i] == Sense::ge) T.at(i, slack++) = -1.0;
            T.at(i, art) = 1.0;
            is_art[art] = 1;
            basis[i] = art++;
        }
    }

    LpResult res;
    const int max_iter = 50 * (m + cols) + 1000;
    // phase 1: minimize the sum of artificials
    std::vector<double> cost(cols, 0.0);
    double z = 0.0;
    for (int j = 0; j < cols; ++j) cost[j] = is_art[j] ? 1.0 : 0.0;
    for (int i = 0; i < m; ++i)
        if (is_art[basis[i]]) {
            for (int j = 0; j < cols; ++j) cost[j] -= T.at(i, j);
            z -= T.rhs(i);
        }
    std::vector<char> none(cols, 0);
    run_simplex(T, basis, cost, z, none, tol, res.iterations, max_iter);
    res.phase1_infeasibility = std::max(0.0, -z);
    if (res.phase1_infeasibility > tol * bscale) {
        res.status = LpStatus::infeasible;
        return res;
    }
    // drive zero-level artificials out of the basis where possible
    for (int i = 0; i < m; ++i) {
        if (!is_art[basis[i]]) continue;
        for (int j = 0; j < art0; ++j)
            if (std::fabs(T.at(i, j)) > tol) {
                std::vector<double> dummy(cols, 0.0);
                double dz = 0.0;
                T.pivot(i, j, dummy, dz);
                basis[i] = j;
                break;
            }
    }

    res.status = LpStatus::optimal;
    if (phase2 && !pr.objective.empty()) {
        std::vector<double> c(cols, 0.0);
        for (int j = 0; j < nv; ++j) {
            c[pos_col[j]] = -pr.objective[j];
            if (neg_col[j] >= 0) c[neg_col[j]] = pr.objective[j];
        }
        cost = c;
        z = 0.0;
        for (int i = 0; i < m; ++i) {
            const double cb = c[basis[i]];
            if (cb == 0.0) continue;
            for (int j = 0; j < cols; ++j) cost[j] -= cb * T.at(i, j);
            z -= cb * T.rhs(i);
        }
        if (!run_simplex(T, basis, cost, z, is_art, tol, res.iterations, max_iter)) res.status = LpStatus::unbounded;
    }

    std::vector<double> xs(cols, 0.0);
    for (int i = 0; i < m; ++i) xs[basis[i]] = T.rhs(i);
    res.x.assign(nv, 0.0);
    for (int j = 0; j < nv; ++j) res.x[j] = xs[pos_col[j]] - (neg_col[j] >= 0 ? xs[neg_col[j]] : 0.0);
    if (!pr.objective.empty())
        for (int j = 0; j < nv; ++j) res.objective += pr.objective[j] * res.x[j];
    for (int i = 0; i < m; ++i) {
        double lhs = 0.0;
        for (int j = 0; j < nv; ++j) lhs += pr.A[i][j] * res.x[j];
        double viol = 0.0;
        if (pr.senses[i] == Sense::le) viol = lhs - pr.b[i];
        else if (pr.senses[i] == Sense::ge) viol = pr.b[i] - lhs;
        else viol = std::fabs(lhs - pr.b[i]);
        res.max_violation = std::max(res.max_violation, viol);
    }
    for (int j = 0; j < nv; ++j)
        if (!is_free(j)) res.max_violation = std::max(res.max_violation, -res.x[j]);
    return res;
}

}  // namespace

LpResult lp_solve(const LpProblem& problem, double tol)
{
    return solve(problem, tol, true);
}

LpResult lp_feasible(const LpProblem& problem, double tol)
{
    return solve(problem, tol, false);
}

}  // namespace linsep
