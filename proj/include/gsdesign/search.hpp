#ifndef GSDESIGN_SEARCH_HPP
#define GSDESIGN_SEARCH_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "gsdesign/bound.hpp"

namespace gsdesign {

struct SearchOptions {
    int top_k = 1;
    std::optional<long long> max_nodes;  // expansion budget
    std::optional<double> max_seconds;   // wall-clock budget
    CrossMode mode = CrossMode::hybrid;
    long long exact_cap = kDefaultExactCap;
    DpBuildOptions build;
};

struct SearchStats {
    long long expanded = 0;  // nodes whose children were generated
    long long pruned = 0;    // nodes dropped because their bound missed the gate
    long long leaves = 0;    // complete strings evaluated
    std::size_t queue_peak = 0;
    double seconds = 0.0;
    // Largest bound ever pruned; on an optimal run it must not exceed the
    // final k-th best value, which is what makes pruning audits possible.
    double max_dropped_bound = 0.0;
    bool any_dropped = false;
};

struct SearchResult {
    // (sequence, objective value), best first; values non-increasing, ties
    // lexicographic ascending.
    std::vector<std::pair<Sequence, double>> ranked;
    SearchStats stats;
    bool optimal = false;  // true iff the run terminated by bound exhaustion
};

// Best-first branch and bound over suffixes, maximizing the normalized
// predictor. Seeds one node per k-mer, then alternates popping the best
// bound with a greedy descent that follows the best child and pushes the
// siblings that beat the current k-th best leaf (strictly; the gate is
// -infinity until top_k leaves exist). On budget expiry the in-flight
// descent still runs to its leaf so the incumbent list is usable, and the
// result is flagged non-optimal.
SearchResult design(const TrainedModel& model, int l, const DescriptorTable& table,
                    const SearchOptions& options = {});

// Unnormalized counterpart: top_k = 1 is the dynamic program's argmax
// directly; larger top_k runs the same branch and bound with F = g, exact
// for the linear objective.
SearchResult design_unnormalized(const TrainedModel& model, int l, const DescriptorTable& table,
                                 const SearchOptions& options = {});

// Overlap fraction |a intersect b| / max(|a|, |b|) and the Pearson
// correlation of rank positions over the intersection; the correlation is
// absent when the intersection has fewer than two sequences. Duplicates
// within one list are a contract violation.
std::pair<double, std::optional<double>> compare_rankings(const std::vector<Sequence>& a,
                                                          const std::vector<Sequence>& b);

// Raw-string variant for ranked lists read back from results files.
std::pair<double, std::optional<double>> compare_rankings(const std::vector<std::string>& a,
                                                          const std::vector<std::string>& b);

}  // namespace gsdesign

#endif
