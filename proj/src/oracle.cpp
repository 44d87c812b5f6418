#include "gsdesign/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gsdesign/errors.hpp"

namespace gsdesign {

namespace {

long long candidate_count(const EnumerationSpec& spec, const DescriptorTable& table) {
    if (spec.asize != table.size())
        throw ContractError("enumeration: spec alphabet size does not match the table");
    if (spec.length < 1) throw ContractError("enumeration: length must be >= 1");
    if (spec.fixed_suffix.size() > spec.length)
        throw ContractError("enumeration: fixed suffix longer than the target length");
    long long count = 1;
    for (int q = 0; q < spec.free_positions(); ++q) {
        count *= spec.asize;
        if (count > spec.cap)
            throw ResourceError("enumeration: " + std::to_string(spec.asize) + "^" +
                                std::to_string(spec.free_positions()) +
                                " candidates exceed the cap of " + std::to_string(spec.cap));
    }
    return count;
}

void fill_candidate(Sequence& x, long long code, const EnumerationSpec& spec) {
    const int free = spec.free_positions();
    for (int q = free - 1; q >= 0; --q) {
        x.chars[q] = static_cast<std::uint8_t>(code % spec.asize);
        code /= spec.asize;
    }
    for (int q = 0; q < spec.fixed_suffix.size(); ++q)
        x.chars[free + q] = spec.fixed_suffix[q];
}

// Evaluates every candidate into a flat array indexed by code (code order
// is lexicographic order, shared suffix included).
std::vector<double> sweep(const EnumerationSpec& spec, long long count, int jobs,
                          const std::function<double(const Sequence&)>& eval) {
    std::vector<double> values(count);
#ifdef _OPENMP
    if (jobs > 1) {
#pragma omp parallel num_threads(jobs)
        {
            Sequence x;
            x.chars.resize(spec.length);
#pragma omp for schedule(static)
            for (long long code = 0; code < count; ++code) {
                fill_candidate(x, code, spec);
                values[code] = eval(x);
            }
        }
        return values;
    }
#else
    (void)jobs;
#endif
    Sequence x;
    x.chars.resize(spec.length);
    for (long long code = 0; code < count; ++code) {
        fill_candidate(x, code, spec);
        values[code] = eval(x);
    }
    return values;
}

std::function<double(const Sequence&)> objective_fn(const TrainedModel& model,
                                                    Objective objective,
                                                    const DescriptorTable& table) {
    switch (objective) {
        case Objective::h:
            return [&](const Sequence& x) {
                double sum = 0.0;
                for (int i = 0; i < model.size(); ++i)
                    sum += model.alpha[i] * gs(model.sequences[i], x, model.params, table);
                return sum;
            };
        case Objective::h_star:
            return [&](const Sequence& x) {
                double sum = 0.0;
                for (int i = 0; i < model.size(); ++i)
                    sum += model.beta[i] * gs(model.sequences[i], x, model.params, table);
                return sum / std::sqrt(gs(x, x, model.params, table));
            };
        case Objective::linear:
            return [&](const Sequence& x) {
                const std::vector<double>& w = model.linear_weights();
                double sum = 0.0;
                for (int i = 0; i < model.size(); ++i)
                    sum += w[i] * gs(model.sequences[i], x, model.params, table);
                return sum;
            };
    }
    throw ContractError("enumeration: unknown objective");
}

}  // namespace

std::pair<Sequence, double> enum_max_objective(const TrainedModel& model,
                                               const EnumerationSpec& spec, Objective objective,
                                               const DescriptorTable& table, int jobs) {
    const long long count = candidate_count(spec, table);
    const std::vector<double> values =
        sweep(spec, count, jobs, objective_fn(model, objective, table));
    long long arg = 0;
    for (long long code = 1; code < count; ++code)
        if (values[code] > values[arg]) arg = code;
    Sequence x;
    x.chars.resize(spec.length);
    fill_candidate(x, arg, spec);
    return {x, values[arg]};
}

std::pair<Sequence, double> enum_min_self_kernel(const EnumerationSpec& spec,
                                                 const GSParams& params,
                                                 const DescriptorTable& table, int jobs) {
    const long long count = candidate_count(spec, table);
    const std::vector<double> values = sweep(
        spec, count, jobs, [&](const Sequence& x) { return gs(x, x, params, table); });
    long long arg = 0;
    for (long long code = 1; code < count; ++code)
        if (values[code] < values[arg]) arg = code;
    Sequence x;
    x.chars.resize(spec.length);
    fill_candidate(x, arg, spec);
    return {x, values[arg]};
}

std::vector<std::pair<Sequence, double>> enum_top_k(const TrainedModel& model,
                                                    const EnumerationSpec& spec,
                                                    Objective objective, int k,
                                                    const DescriptorTable& table, int jobs) {
    const long long count = candidate_count(spec, table);
    if (k < 1 || k > count)
        throw ContractError("enum_top_k: k must be in [1, candidate count]");
    const std::vector<double> values =
        sweep(spec, count, jobs, objective_fn(model, objective, table));
    std::vector<long long> order(count);
    std::iota(order.begin(), order.end(), 0);
    // Code ascending doubles as lexicographic ascending on value ties.
    std::partial_sort(order.begin(), order.begin() + k, order.end(),
                      [&](long long a, long long b) {
                          if (values[a] != values[b]) return values[a] > values[b];
                          return a < b;
                      });
    std::vector<std::pair<Sequence, double>> out;
    out.reserve(k);
    for (int r = 0; r < k; ++r) {
        Sequence x;
        x.chars.resize(spec.length);
        fill_candidate(x, order[r], spec);
        out.emplace_back(std::move(x), values[order[r]]);
    }
    return out;
}

}  // namespace gsdesign
