#ifndef GSDESIGN_ORACLE_HPP
#define GSDESIGN_ORACLE_HPP

#include <utility>
#include <vector>

#include "gsdesign/model.hpp"

namespace gsdesign {

// Exhaustive enumeration over A^length, optionally with the trailing
// characters pinned to fixed_suffix. Everything here evaluates objectives
// through direct gs() calls only, independently of the dynamic program,
// the bound, and the search it certifies.
struct EnumerationSpec {
    int asize = 0;
    int length = 0;
    Sequence fixed_suffix;
    long long cap = 1'000'000;  // limit on enumerated candidates

    int free_positions() const { return length - fixed_suffix.size(); }
};

enum class Objective { h, h_star, linear };

// Maximum of the objective over all candidates; ties resolve to the
// lexicographically smallest string. jobs > 1 evaluates candidates in
// parallel; each value is computed by the same scalar code, so results
// match the serial scan bit for bit.
std::pair<Sequence, double> enum_max_objective(const TrainedModel& model,
                                               const EnumerationSpec& spec, Objective objective,
                                               const DescriptorTable& table, int jobs = 1);

// Minimum of gs(x, x) over all candidates; the defining comparison for the
// self-kernel lower bound.
std::pair<Sequence, double> enum_min_self_kernel(const EnumerationSpec& spec,
                                                 const GSParams& params,
                                                 const DescriptorTable& table, int jobs = 1);

// Top k candidates sorted by objective descending, lexicographic ascending
// on ties: the same order the search's ranked output uses.
std::vector<std::pair<Sequence, double>> enum_top_k(const TrainedModel& model,
                                                    const EnumerationSpec& spec,
                                                    Objective objective, int k,
                                                    const DescriptorTable& table, int jobs = 1);

}  // namespace gsdesign

#endif
