#include "gsdesign/regression.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "gsdesign/errors.hpp"

namespace gsdesign {

namespace {

constexpr double kSolveTol = 1e-9;

// Solves (G + lambda I) alpha = e with a dense LDLT factorization and
// verifies the residual; near-singular systems surface as a NumericError
// instead of silently bad weights.
Eigen::VectorXd solve_ridge(const SymMatrix& gram, const std::vector<double>& e, double lambda) {
    const int m = gram.n;
    Eigen::MatrixXd a = Eigen::Map<const Eigen::MatrixXd>(gram.a.data(), m, m);
    a.diagonal().array() += lambda;
    const Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(e.data(), m);

    const Eigen::LDLT<Eigen::MatrixXd> ldlt(a);
    const Eigen::VectorXd alpha = ldlt.solve(rhs);
    const double resid = (a * alpha - rhs).norm();
    const double scale = std::max(rhs.norm(), 1e-300);
    if (!alpha.allFinite() || resid > kSolveTol * scale)
        throw NumericError("ridge system is singular or ill-conditioned; use lambda > 0");
    return alpha;
}

}  // namespace

TrainedModel fit(const TrainingSet& train, const GSParams& params, double lambda,
                 bool normalized, const DescriptorTable& table, int jobs) {
    const int m = train.size();
    validate_params(params);
    if (m < 1) throw ContractError("fit: empty training set");
    if (static_cast<int>(train.activities.size()) != m)
        throw ContractError("fit: sequence/activity count mismatch");
    if (lambda < 0.0) throw ContractError("fit: lambda must be >= 0");
    for (const auto& s : train.sequences)
        if (s.empty()) throw ContractError("fit: training sequences must be non-empty");

    const SymMatrix gram = gram_matrix(train.sequences, params, table, normalized, jobs);
    const Eigen::VectorXd alpha = solve_ridge(gram, train.activities, lambda);

    TrainedModel model;
    model.sequences = train.sequences;
    model.params = params;
    model.lambda = lambda;
    model.normalized = normalized;
    model.descriptor_digest = table.digest();
    model.alpha.assign(alpha.data(), alpha.data() + m);
    model.beta.resize(m);
    for (int i = 0; i < m; ++i)
        model.beta[i] = model.alpha[i] / std::sqrt(gs(train.sequences[i], train.sequences[i], params, table));
    return model;
}

double predict_h(const TrainedModel& model, const Sequence& x, const DescriptorTable& table) {
    if (model.normalized)
        throw ContractError("predict_h: model was trained on the normalized kernel");
    double sum = 0.0;
    for (int i = 0; i < model.size(); ++i)
        sum += model.alpha[i] * gs(model.sequences[i], x, model.params, table);
    return sum;
}

double predict_h_star(const TrainedModel& model, const Sequence& x, const DescriptorTable& table) {
    if (!model.normalized)
        throw ContractError("predict_h_star: model was trained on the unnormalized kernel");
    if (x.empty()) throw ContractError("predict_h_star: empty sequence");
    double sum = 0.0;
    for (int i = 0; i < model.size(); ++i)
        sum += model.beta[i] * gs(model.sequences[i], x, model.params, table);
    return sum / std::sqrt(gs(x, x, model.params, table));
}

double predict(const TrainedModel& model, const Sequence& x, const DescriptorTable& table) {
    return model.normalized ? predict_h_star(model, x, table) : predict_h(model, x, table);
}

CvResult cross_validate(const TrainingSet& train,
                        const std::vector<GSParams>& param_grid,
                        const std::vector<double>& lambda_grid,
                        int folds, bool normalized, const DescriptorTable& table,
                        std::optional<std::uint64_t> seed, int jobs) {
    const int m = train.size();
    if (param_grid.empty() || lambda_grid.empty()) throw ContractError("cross_validate: empty grid");
    if (folds < 2) throw ContractError("cross_validate: need at least 2 folds");
    if (folds > m) throw ContractError("cross_validate: more folds than examples");

    std::vector<int> order(m);
    std::iota(order.begin(), order.end(), 0);
    if (seed) {
        std::mt19937_64 rng(*seed);
        std::shuffle(order.begin(), order.end(), rng);
    }

    CvResult best;
    double best_score = std::numeric_limits<double>::infinity();
    bool any = false;

    for (const auto& params : param_grid) {
        for (const double lambda : lambda_grid) {
            double sse = 0.0;
            int n_val = 0;
            bool failed = false;
            for (int f = 0; f < folds && !failed; ++f) {
                const int lo = static_cast<int>(static_cast<long long>(f) * m / folds);
                const int hi = static_cast<int>(static_cast<long long>(f + 1) * m / folds);
                TrainingSet sub;
                for (int t = 0; t < m; ++t) {
                    if (t >= lo && t < hi) continue;
                    sub.sequences.push_back(train.sequences[order[t]]);
                    sub.activities.push_back(train.activities[order[t]]);
                }
                try {
                    const TrainedModel mdl = fit(sub, params, lambda, normalized, table, jobs);
                    for (int t = lo; t < hi; ++t) {
                        const double err =
                            predict(mdl, train.sequences[order[t]], table) - train.activities[order[t]];
                        sse += err * err;
                        ++n_val;
                    }
                } catch (const NumericError&) {
                    failed = true;
                }
            }
            if (failed || n_val == 0) continue;
            const double score = sse / n_val;
            any = true;
            if (score < best_score) {
                best_score = score;
                best = CvResult{params, lambda, score};
            }
        }
    }
    if (!any) throw NumericError("cross_validate: every grid point failed to solve; use lambda > 0");
    return best;
}

}  // namespace gsdesign
