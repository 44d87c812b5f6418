#ifndef GSDESIGN_REGRESSION_HPP
#define GSDESIGN_REGRESSION_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "gsdesign/model.hpp"

namespace gsdesign {

struct TrainingSet {
    std::vector<Sequence> sequences;
    std::vector<double> activities;

    int size() const { return static_cast<int>(sequences.size()); }
};

// Kernel ridge regression: solves (G + lambda I) alpha = e on the selected
// Gram matrix and derives beta. lambda = 0 is allowed but fails with a
// NumericError if the Gram matrix is singular.
TrainedModel fit(const TrainingSet& train, const GSParams& params, double lambda,
                 bool normalized, const DescriptorTable& table, int jobs = 1);

// sum_i alpha_i gs(x_i, x); requires an unnormalized model.
double predict_h(const TrainedModel& model, const Sequence& x, const DescriptorTable& table);

// (1/sqrt(gs(x,x))) sum_i beta_i gs(x_i, x); requires a normalized model
// and a non-empty x.
double predict_h_star(const TrainedModel& model, const Sequence& x, const DescriptorTable& table);

// Dispatches on model.normalized.
double predict(const TrainedModel& model, const Sequence& x, const DescriptorTable& table);

struct CvResult {
    GSParams params;
    double lambda = 0.0;
    double score = 0.0;  // mean squared validation error
};

// Grid search over params x lambdas, scored by K-fold mean squared error.
// Folds are contiguous and deterministic unless a seed is supplied, in which
// case the example order is shuffled once up front. Grid points are visited
// params-major, lambdas-minor; ties keep the earliest point. Grid points
// whose every fold fails to solve are skipped; if all do, a NumericError is
// raised.
CvResult cross_validate(const TrainingSet& train,
                        const std::vector<GSParams>& param_grid,
                        const std::vector<double>& lambda_grid,
                        int folds, bool normalized, const DescriptorTable& table,
                        std::optional<std::uint64_t> seed = std::nullopt, int jobs = 1);

}  // namespace gsdesign

#endif
