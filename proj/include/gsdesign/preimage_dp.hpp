#ifndef GSDESIGN_PREIMAGE_DP_HPP
#define GSDESIGN_PREIMAGE_DP_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "gsdesign/model.hpp"

namespace gsdesign {

// k-mers are coded as big-endian base-|A| integers (first character most
// significant), so code order equals lexicographic order.
int kmer_code(const Sequence& x, int pos, int k, int asize);
Sequence kmer_chars(int code, int k, int asize);

struct DpBuildOptions {
    long long max_cells = 1 << 23;  // cap on per-table cell count
    int jobs = 1;
};

// Tables of the de Bruijn dynamic program maximizing the linear part
// L(x) = sum_i w_i gs(x_i, x) over x in A^l, with w the model's linear
// weights. States are (start position j, k-mer v).
//
// omega[p-1][j * |A|^p + t] is the weighted affinity of placing the p-mer
// t at position j: sum_i w_i sum_{i'} position_factor(i', j) *
// pmer_similarity(x_i at i', t).
//
// node_weight W(j, v) folds the omega entries so that
// sum_j W(j, k-mer of x at j) = L(x) exactly: interior states take the
// p-mer prefixes of v, the terminal state j = l-k additionally absorbs
// every shorter substring starting inside its k-mer.
//
// prefix_best T(j, v) is the best prefix sum over strings whose k-mer at
// position j is v, with prefix_arg the prepended character achieving it
// (lexicographic-smallest on ties; -1 at j = 0). suffix_best S(j, v) is
// the mirror-image best completion value with suffix_arg the appended
// character (-1 at j = l-k); it drives global argmax reconstruction,
// which must run left to right to produce the lexicographically smallest
// maximizer.
struct DpTables {
    int l = 0;
    int k = 0;
    int asize = 0;
    int n_kmers = 0;
    std::vector<long long> pow_a;  // pow_a[p] = |A|^p

    std::vector<std::vector<double>> omega;
    std::vector<double> node_weight;
    std::vector<double> prefix_best;
    std::vector<int> prefix_arg;
    std::vector<double> suffix_best;
    std::vector<int> suffix_arg;

    int states() const { return l - k + 1; }

    double omega_at(int p, int j, int t) const {
        return omega[p - 1][static_cast<std::size_t>(j) * pow_a[p] + t];
    }
    double w(int j, int v) const { return node_weight[static_cast<std::size_t>(j) * n_kmers + v]; }
    double t(int j, int v) const { return prefix_best[static_cast<std::size_t>(j) * n_kmers + v]; }
    double s(int j, int v) const { return suffix_best[static_cast<std::size_t>(j) * n_kmers + v]; }
};

// Builds all tables for candidates of length l. Throws ContractError when
// l < k and ResourceError when the state space exceeds options.max_cells.
// jobs > 1 splits the omega construction across threads; each cell is
// produced by the same scalar code in the same order, so the result is
// identical to the serial reference bit for bit.
DpTables build_tables(const TrainedModel& model, int l, const DescriptorTable& table,
                      const DpBuildOptions& options = {});
DpTables build_tables_serial(const TrainedModel& model, int l, const DescriptorTable& table,
                             const DpBuildOptions& options = {});

// The string of length l maximizing L and its value max_v T(l-k, v); ties
// resolve to the lexicographically smallest string.
std::pair<Sequence, double> argmax_linear(const DpTables& tables);

// g = T(j_star, v_star) + interior_sum: the best L over all completions of
// a suffix whose first k-mer is v_star at position j_star, where
// interior_sum is the sum of W over the later k-mer positions of the fixed
// suffix. Constant time.
double suffix_value(const DpTables& tables, int j_star, int v_star, double interior_sum);

// The length j_star + k prefix achieving T(j_star, v_star), reconstructed
// through prefix_arg. Its last k characters spell v_star.
Sequence argmax_prefix(const DpTables& tables, int j_star, int v_star);

}  // namespace gsdesign

#endif
