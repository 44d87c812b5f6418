#ifndef GSDESIGN_MODEL_HPP
#define GSDESIGN_MODEL_HPP

#include <string>
#include <vector>

#include "gsdesign/gs_kernel.hpp"

namespace gsdesign {

// A fitted predictor: dual weights over the training sequences plus the
// kernel configuration they were fit under. Immutable once built.
//
// alpha are the ridge-regression weights for the selected Gram matrix
// (normalized or raw); beta[i] = alpha[i] / sqrt(gs(x_i, x_i)). The
// normalized predictor is (1/sqrt(gs(x,x))) * sum_i beta[i] gs(x_i, x),
// the unnormalized one sum_i alpha[i] gs(x_i, x).
struct TrainedModel {
    std::vector<Sequence> sequences;
    std::vector<double> alpha;
    std::vector<double> beta;
    GSParams params;
    double lambda = 0.0;
    bool normalized = true;
    std::string descriptor_digest;

    int size() const { return static_cast<int>(sequences.size()); }

    // Weights of the linear part the dynamic program maximizes: beta for the
    // normalized predictor, alpha for the unnormalized one.
    const std::vector<double>& linear_weights() const { return normalized ? beta : alpha; }
};

}  // namespace gsdesign

#endif
