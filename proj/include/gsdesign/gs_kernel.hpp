#ifndef GSDESIGN_GS_KERNEL_HPP
#define GSDESIGN_GS_KERNEL_HPP

#include <cmath>
#include <vector>

#include "gsdesign/descriptors.hpp"

namespace gsdesign {

// Kernel hyperparameters. sigma_p and sigma_c accept 0 and infinity as
// first-class values: sigma = 0 turns the Gaussian into an indicator
// (positions must coincide / p-mers must have zero encoding distance) and
// sigma = infinity removes the penalty entirely.
struct GSParams {
    int k = 1;
    double sigma_p = 1.0;
    double sigma_c = 1.0;
};

// Rejects k < 1 and negative or NaN sigmas; infinity passes.
void validate_params(const GSParams& params);

// exp(-d2 / (2 sigma^2)) with the limit conventions above.
inline double gauss_penalty(double d2, double sigma) {
    if (sigma == 0.0) return d2 == 0.0 ? 1.0 : 0.0;
    return std::exp(-d2 / (2.0 * sigma * sigma));  // sigma = inf gives exp(-0) = 1
}

// Position-shift factor for p-mers anchored at offsets i and j.
inline double position_factor(int i, int j, double sigma_p) {
    const double d = static_cast<double>(i) - static_cast<double>(j);
    return gauss_penalty(d * d, sigma_p);
}

// Physicochemical similarity of two equal-length p-mers.
double pmer_similarity(const Sequence& s, int s_off,
                       const Sequence& t, int t_off,
                       int p, const DescriptorTable& table, double sigma_c);

// Convenience overload comparing whole sequences as p-mers.
double pmer_similarity(const Sequence& s, const Sequence& t,
                       const DescriptorTable& table, double sigma_c);

// The kernel value: sum over p = 1..k and all start-offset pairs of
// position_factor * pmer_similarity. Exactly symmetric in x and y.
double gs(const Sequence& x, const Sequence& y, const GSParams& params,
          const DescriptorTable& table);

// Same sum split by substring length; partials[p-1] holds the length-p
// contribution (the p = 2 entry is the classic Spectrum value when
// sigma_p = inf and sigma_c = 0).
std::vector<double> gs_partials(const Sequence& x, const Sequence& y,
                                const GSParams& params, const DescriptorTable& table);

// gs(x,y) / sqrt(gs(x,x) gs(y,y)); both sequences must be non-empty.
double normalized_kernel(const Sequence& x, const Sequence& y,
                         const GSParams& params, const DescriptorTable& table);

// Dense symmetric matrix of kernel values, row-major.
struct SymMatrix {
    int n = 0;
    std::vector<double> a;

    double operator()(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
    double& operator()(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
};

// Gram matrix of the (optionally normalized) kernel. jobs > 1 computes
// cells in parallel; every cell is produced by the same scalar code path,
// so the result is identical to the serial reference bit for bit.
SymMatrix gram_matrix(const std::vector<Sequence>& seqs, const GSParams& params,
                      const DescriptorTable& table, bool normalized, int jobs = 1);

// Plain-loop reference used by tests and the benchmark.
SymMatrix gram_matrix_serial(const std::vector<Sequence>& seqs, const GSParams& params,
                             const DescriptorTable& table, bool normalized);

}  // namespace gsdesign

#endif
