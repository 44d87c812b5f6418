#ifndef GSDESIGN_BOUND_HPP
#define GSDESIGN_BOUND_HPP

#include <cstdint>

#include "gsdesign/preimage_dp.hpp"

namespace gsdesign {

// How the cross-term lower bound minimizes over unknown prefix characters:
// exact enumerates every assignment of the characters a p-mer straddles,
// fast charges each unknown position its worst-case distance to the aligned
// known character, hybrid uses exact for p <= 2 and fast above. Always
// fast <= exact <= true value, so all modes keep f sound.
enum class CrossMode { exact, fast, hybrid };

inline constexpr long long kDefaultExactCap = 1 << 20;

// A branch-and-bound node: a fixed suffix of the candidate, its position in
// the DP state space, and the cached bound components. Prefix positions
// 0..l-s-1 are unknown; the suffix occupies positions l-s..l-1.
//
// g is the exact best of the linear part over all completions. f is a lower
// bound and f_upper an upper bound on the completion self-kernels; both
// collapse to gs(suffix, suffix) at a leaf, making F exact there. F is
// g/sqrt(f) when g >= 0 and g/sqrt(f_upper) otherwise; dividing a negative
// g by the smaller root would push the bound below reachable predictions.
struct SuffixState {
    Sequence suffix;
    int l = 0;
    int j_star = 0;
    int v_star = 0;
    double interior_sum = 0.0;
    double g = 0.0;
    double f = 0.0;
    double f_upper = 0.0;
    double F = 0.0;

    int size() const { return suffix.size(); }
    bool leaf() const { return suffix.size() == l; }
};

// gs(suffix, suffix). Position factors depend only on offset differences,
// so this equals the suffix-suffix block of any completion's self-kernel.
double self_kernel_suffix(const Sequence& suffix, const GSParams& params,
                          const DescriptorTable& table);

// Lower bound on the prefix-suffix cross term of gs(x, x), valid for every
// completion x. exact_cap limits the per-(p, i) assignment enumeration in
// exact mode; exceeding it is a ResourceError suggesting fast mode.
double cross_lower_bound(const Sequence& suffix, int l, const GSParams& params,
                         const DescriptorTable& table, CrossMode mode = CrossMode::hybrid,
                         long long exact_cap = kDefaultExactCap);

// Lower bound on the prefix-prefix term of gs(x, x): unknown-position pairs
// are charged the largest possible aligned distance, known pairs the exact
// one, identical positions zero.
double prefix_lower_bound(const Sequence& suffix, int l, const GSParams& params,
                          const DescriptorTable& table);

// Upper-bound counterparts: unknown positions contribute zero distance.
double cross_upper_bound(const Sequence& suffix, int l, const GSParams& params,
                         const DescriptorTable& table);
double prefix_upper_bound(const Sequence& suffix, int l, const GSParams& params,
                          const DescriptorTable& table);

// f = gs(suffix, suffix) + 2 * cross + prefix, below gs(x, x) for every
// completion x; strictly positive. Equals gs exactly at a leaf.
double f_lower_bound(const Sequence& suffix, int l, const GSParams& params,
                     const DescriptorTable& table, CrossMode mode = CrossMode::hybrid,
                     long long exact_cap = kDefaultExactCap);
double f_upper_bound(const Sequence& suffix, int l, const GSParams& params,
                     const DescriptorTable& table);

// The subspace bound from cached components; f_lower <= 0 is an internal
// invariant failure.
double bound_value(double g, double f_lower, double f_upper);

// Returns state.F after re-checking the positivity invariant.
double bound_F(const SuffixState& state);

// Builds and extends suffix states against a fixed table set. When
// linear_objective is set (unnormalized designs) the self-kernel bounds are
// skipped and F = g, which is exact for the linear part.
struct BoundEvaluator {
    const DpTables* tables = nullptr;
    GSParams params;
    const DescriptorTable* table = nullptr;
    CrossMode mode = CrossMode::hybrid;
    long long exact_cap = kDefaultExactCap;
    bool linear_objective = false;

    // State for the length-k suffix spelled by k-mer code v.
    SuffixState root(int v) const;

    // State for the suffix a . state.suffix: g via the prefix-table
    // recurrence, f recomputed from scratch. Child g never exceeds the
    // parent's.
    SuffixState extend(const SuffixState& state, std::uint8_t a) const;
};

}  // namespace gsdesign

#endif
