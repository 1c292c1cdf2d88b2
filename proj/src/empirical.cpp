#include "linsep/empirical.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "linsep/lp.hpp"
#include "linsep/numerics.hpp"

namespace linsep {

void Dataset::validate() const
{
    if (features.rows() != static_cast<Eigen::Index>(labels.size()))
        throw ValidationError("Dataset: feature rows and labels differ in length");
    if (features.rows() < 1 || features.cols() < 1) throw ValidationError("Dataset: need n >= 1 and p >= 1");
    for (int y : labels)
        if (y != 1 && y != -1) throw ValidationError("Dataset: labels must be -1 or 1");
    if (!features.allFinite()) throw ValidationError("Dataset: non-finite feature value");
}

namespace {

std::vector<std::string> split_csv(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
        while (!cell.empty() && (cell.back() == '\r' || cell.back() == ' ')) cell.pop_back();
        while (!cell.empty() && cell.front() == ' ') cell.erase(cell.begin());
        out.push_back(cell);
    }
    return out;
}

}  // namespace

Dataset Dataset::from_csv(std::istream& in)
{
    std::string line;
    if (!std::getline(in, line)) throw ValidationError("dataset CSV: missing header");
    const auto header = split_csv(line);
    if (header.size() < 2 || header.back() != "y")
        throw ValidationError("dataset CSV: header must be x1,...,xp,y");
    const int p = static_cast<int>(header.size()) - 1;
    std::vector<std::vector<double>> rows;
    std::vector<int> labels;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line == "\r") continue;
        const auto cells = split_csv(line);
        if (static_cast<int>(cells.size()) != p + 1)
            throw ValidationError("dataset CSV: line " + std::to_string(lineno) + " has the wrong number of columns");
        std::vector<double> row(p);
        try {
            for (int j = 0; j < p; ++j) row[j] = std::stod(cells[j]);
            const double y = std::stod(cells[p]);
            if (y != 1.0 && y != -1.0) throw ValidationError("");
            labels.push_back(static_cast<int>(y));
        } catch (const std::exception&) {
            throw ValidationError("dataset CSV: line " + std::to_string(lineno) + " is not numeric or y not in {-1,1}");
        }
        rows.push_back(std::move(row));
    }
    Dataset ds;
    ds.features.resize(static_cast<Eigen::Index>(rows.size()), p);
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (int j = 0; j < p; ++j) ds.features(static_cast<Eigen::Index>(i), j) = rows[i][j];
    ds.labels = std::move(labels);
    ds.validate();
    return ds;
}

void Dataset::to_csv(std::ostream& out) const
{
    for (int j = 0; j < p(); ++j) out << 'x' << (j + 1) << ',';
    out << "y\n";
    out.precision(17);
    for (int i = 0; i < n(); ++i) {
        for (int j = 0; j < p(); ++j) out << features(i, j) << ',';
        out << labels[i] << '\n';
    }
}

Separability parse_separability(const std::string& s)
{
    if (s == "complete") return Separability::complete;
    if (s == "weak") return Separability::weak;
    if (s == "nontrivial") return Separability::nontrivial;
    if (s == "candes_sur") return Separability::candes_sur;
    throw ValidationError("unknown separability definition '" + s + "'");
}

std::string to_string(Separability s)
{
    switch (s) {
    case Separability::complete: return "complete";
    case Separability::weak: return "weak";
    case Separability::nontrivial: return "nontrivial";
    case Separability::candes_sur: return "candes_sur";
    }
    return "unknown";
}

Eigen::MatrixXd signed_features(const Dataset& ds, bool intercept)
{
    ds.validate();
    const int n = ds.n(), p = ds.p();
    const int off = intercept ? 1 : 0;
    Eigen::MatrixXd Z(n, p + off);
    for (int i = 0; i < n; ++i) {
        if (intercept) Z(i, 0) = ds.labels[i];
        for (int j = 0; j < p; ++j) Z(i, j + off) = ds.labels[i] * ds.features(i, j);
    }
    return Z;
}

namespace {

std::vector<double> row_of(const Eigen::MatrixXd& Z, int i)
{
    std::vector<double> r(Z.cols());
    for (int j = 0; j < Z.cols(); ++j) r[j] = Z(i, j);
    return r;
}

bool complete_primal(const Eigen::MatrixXd& Z)
{
    LpProblem lp;
    lp.num_vars = static_cast<int>(Z.cols());
    lp.bounds.assign(lp.num_vars, VarBound::free);
    for (int i = 0; i < Z.rows(); ++i) lp.add_row(row_of(Z, i), Sense::ge, 1.0);
    return lp_feasible(lp).feasible();
}

bool complete_farkas(const Eigen::MatrixXd& Z)
{
    // Gordan: exactly one of {Z beta > 0} and {Z^T lambda = 0, lambda >= 0, lambda != 0}.
    const int n = static_cast<int>(Z.rows()), p = static_cast<int>(Z.cols());
    LpProblem lp;
    lp.num_vars = n;
    for (int c = 0; c < p; ++c) {
        std::vector<double> row(n);
        for (int i = 0; i < n; ++i) row[i] = Z(i, c);
        lp.add_row(std::move(row), Sense::eq, 0.0);
    }
    lp.add_row(std::vector<double>(n, 1.0), Sense::eq, 1.0);
    return !lp_feasible(lp).feasible();
}

}  // namespace

bool complete_separable(const Eigen::MatrixXd& Z, CompleteRoute route)
{
    if (route == CompleteRoute::automatic)
        route = Z.rows() <= 4 * (Z.cols() + 1) ? CompleteRoute::primal : CompleteRoute::farkas;
    return route == CompleteRoute::primal ? complete_primal(Z) : complete_farkas(Z);
}

bool weakly_separable(const Eigen::MatrixXd& Z)
{
    LpProblem lp;
    lp.num_vars = static_cast<int>(Z.cols());
    lp.bounds.assign(lp.num_vars, VarBound::free);
    for (int i = 0; i < Z.rows(); ++i) {
        lp.add_row(row_of(Z, i), Sense::ge, 0.0);
        lp.add_row(row_of(Z, i), Sense::le, 1.0);
    }
    lp.objective.assign(lp.num_vars, 0.0);
    for (int j = 0; j < Z.cols(); ++j) lp.objective[j] = Z.col(j).sum();
    const auto r = lp_solve(lp);
    if (r.status != LpStatus::optimal) throw std::runtime_error("weakly_separable: LP " + to_string(r.status));
    // A weak separator rescaled to max_j (Z beta)_j = 1 scores at least 1,
    // so anything clearly above zero is decisive.
    return r.objective > 0.5;
}

int numerical_rank(const Eigen::MatrixXd& Z)
{
    if (Z.size() == 0) return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(Z);
    lu.setThreshold(1e-10);
    return static_cast<int>(lu.rank());
}

bool nontrivially_separable(const Eigen::MatrixXd& Z)
{
    return numerical_rank(Z) < Z.cols() || weakly_separable(Z);
}

bool candes_sur_separable(const Eigen::MatrixXd& Z)
{
    const int n = static_cast<int>(Z.rows()), p = static_cast<int>(Z.cols());
    if (p < 2) return false;  // span of no columns is {0}
    const Eigen::VectorXd z1 = Z.col(0);
    const Eigen::MatrixXd Zm = Z.rightCols(p - 1);
    const double nz1 = z1.norm();

    // u = 0: a nonzero multiple of z1 inside span(Z_{-1}).
    if (nz1 > 0.0) {
        const Eigen::VectorXd alpha = Zm.colPivHouseholderQr().solve(z1);
        if ((Zm * alpha - z1).norm() <= 1e-9 * nz1) return true;
    }

    // u != 0: Z_{-1} alpha - lambda z1 - u = 0, u >= 0. Variables (alpha, lambda, u).
    const int nv = (p - 1) + 1 + n;
    auto base = [&] {
        LpProblem lp;
        lp.num_vars = nv;
        lp.bounds.assign(nv, VarBound::nonneg);
        for (int j = 0; j < p; ++j) lp.bounds[j] = VarBound::free;
        for (int i = 0; i < n; ++i) {
            std::vector<double> row(nv, 0.0);
            for (int j = 0; j < p - 1; ++j) row[j] = Zm(i, j);
            row[p - 1] = -z1(i);
            row[p + i] = -1.0;
            lp.add_row(std::move(row), Sense::eq, 0.0);
        }
        return lp;
    };
    bool has_pos = false, has_neg = false;
    for (int i = 0; i < n; ++i) {
        has_pos = has_pos || z1(i) > 0.0;
        has_neg = has_neg || z1(i) < 0.0;
    }
    if (has_pos && has_neg) {
        // Here u = -lambda z1 is impossible for u >= 0, u != 0, so the witness is nonzero.
        LpProblem lp = base();
        std::vector<double> row(nv, 0.0);
        for (int i = 0; i < n; ++i) row[p + i] = 1.0;
        lp.add_row(std::move(row), Sense::eq, 1.0);
        return lp_feasible(lp).feasible();
    }
    // z1 has one sign: ask directly for a witness with some coordinate away from 0.
    for (int i = 0; i < n; ++i)
        for (double s : {1.0, -1.0}) {
            LpProblem lp = base();
            std::vector<double> row(nv, 0.0);
            for (int j = 0; j < p - 1; ++j) row[j] = s * Zm(i, j);
            lp.add_row(std::move(row), Sense::ge, 1.0);
            if (lp_feasible(lp).feasible()) return true;
        }
    return false;
}

bool check_separability(const Dataset& ds, Separability definition, bool intercept, CompleteRoute route)
{
    const Eigen::MatrixXd Z = signed_features(ds, intercept);
    switch (definition) {
    case Separability::complete: return complete_separable(Z, route);
    case Separability::weak: return weakly_separable(Z);
    case Separability::nontrivial: return nontrivially_separable(Z);
    case Separability::candes_sur: return candes_sur_separable(Z);
    }
    return false;
}

Dataset sample_dataset(const ModelSpec& model, int n, int p, RandomStream& rs)
{
    model.validate();
    if (n < 1 || p < 1) throw ValidationError("sample_dataset: need n >= 1 and p >= 1");
    Dataset ds;
    ds.features.resize(n, p);
    ds.labels.resize(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < p; ++j) ds.features(i, j) = rs.normal();
        const double u = rs.uniform();
        const double x1 = ds.features(i, 0);
        double prob_pos;
        switch (model.kind) {
        case ModelKind::sign_flip: {
            const double oracle = x1 >= 0.0 ? 1.0 : 0.0;
            prob_pos = model.delta * oracle + (1.0 - model.delta) * (1.0 - oracle);
            break;
        }
        case ModelKind::logit: prob_pos = 1.0 / (1.0 + std::exp(-model.beta_star_norm * x1)); break;
        case ModelKind::probit: prob_pos = gaussian_cdf(model.beta_star_norm * x1); break;
        case ModelKind::signalless: prob_pos = model.b; break;
        default: throw ValidationError("sample_dataset: unsupported model");
        }
        ds.labels[i] = u < prob_pos ? 1 : -1;
    }
    return ds;
}

ProbabilityResult estimate_separability(const ModelSpec& model, int n, int p, std::uint64_t trials,
                                        const RandomStream& stream, unsigned workers, bool intercept)
{
    model.validate();
    if (trials == 0) throw ValidationError("estimate_separability: trials must be >= 1");
    const auto hits = run_chunked<std::uint64_t>(
        trials, workers, stream, 0,
        [&](RandomStream& rs, std::uint64_t count) {
            std::uint64_t h = 0;
            for (std::uint64_t t = 0; t < count; ++t) {
                const Dataset ds = sample_dataset(model, n, p, rs);
                h += check_separability(ds, Separability::complete, intercept);
            }
            return h;
        },
        [](std::uint64_t& a, std::uint64_t b) { a += b; }, 256);
    ProbabilityResult out;
    out.value = static_cast<double>(hits) / static_cast<double>(trials);
    out.se = std::sqrt(out.value * (1.0 - out.value) / static_cast<double>(trials));
    out.method = "mc";
    out.samples = trials;
    return out;
}

}  // namespace linsep
