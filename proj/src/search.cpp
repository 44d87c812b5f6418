#include "gsdesign/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <queue>
#include <string>

#include "gsdesign/errors.hpp"

namespace gsdesign {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// priority_queue pops the largest element under this "less than": higher
// bound first, then longer suffix (reaches leaves sooner), then
// lexicographically smaller suffix.
struct NodeOrder {
    bool operator()(const SuffixState& a, const SuffixState& b) const {
        if (a.F != b.F) return a.F < b.F;
        if (a.suffix.size() != b.suffix.size()) return a.suffix.size() < b.suffix.size();
        return b.suffix < a.suffix;
    }
};

// The best top_k leaves seen so far, kept sorted by value descending with
// lexicographic ascending ties: the enumeration oracle's order.
class Incumbents {
public:
    explicit Incumbents(int cap) : cap_(cap) {}

    double gate() const {
        return static_cast<int>(items_.size()) == cap_ ? items_.back().second : kNegInf;
    }

    void offer(const Sequence& seq, double value) {
        const bool full = static_cast<int>(items_.size()) == cap_;
        if (full) {
            const auto& worst = items_.back();
            if (value < worst.second || (value == worst.second && !(seq < worst.first))) return;
            items_.pop_back();
        }
        auto pos = std::upper_bound(items_.begin(), items_.end(), std::make_pair(seq, value),
                                    [](const auto& x, const auto& y) {
                                        if (x.second != y.second) return x.second > y.second;
                                        return x.first < y.first;
                                    });
        items_.insert(pos, {seq, value});
    }

    std::vector<std::pair<Sequence, double>> take() { return std::move(items_); }

private:
    int cap_;
    std::vector<std::pair<Sequence, double>> items_;
};

SearchResult run_branch_and_bound(const TrainedModel& model, int l, const DescriptorTable& table,
                                  const SearchOptions& options, bool linear_objective) {
    if (options.top_k < 1) throw ContractError("design: top_k must be >= 1");
    const auto t0 = std::chrono::steady_clock::now();
    const auto elapsed = [&] {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    };

    const DpTables tables = build_tables(model, l, table, options.build);
    const BoundEvaluator ev{&tables,          model.params,      &table,
                            options.mode,     options.exact_cap, linear_objective};

    SearchResult result;
    SearchStats& st = result.stats;
    Incumbents inc(options.top_k);
    std::priority_queue<SuffixState, std::vector<SuffixState>, NodeOrder> frontier;

    const auto drop = [&](double bound) {
        ++st.pruned;
        if (!st.any_dropped || bound > st.max_dropped_bound) st.max_dropped_bound = bound;
        st.any_dropped = true;
    };
    const auto budget_left = [&] {
        if (options.max_nodes && st.expanded >= *options.max_nodes) return false;
        if (options.max_seconds && elapsed() >= *options.max_seconds) return false;
        return true;
    };

    for (int v = 0; v < tables.n_kmers; ++v) {
        SuffixState seed = ev.root(v);
        if (seed.leaf()) {
            ++st.leaves;
            inc.offer(seed.suffix, seed.F);
        } else {
            frontier.push(std::move(seed));
        }
    }
    st.queue_peak = frontier.size();

    bool truncated = false;
    while (!frontier.empty()) {
        if (!(frontier.top().F > inc.gate())) {
            // Bound exhaustion: every remaining node is at or below the
            // k-th best leaf, so all of them prune at once.
            drop(frontier.top().F);
            st.pruned += static_cast<long long>(frontier.size()) - 1;
            break;
        }
        if (!budget_left()) {
            truncated = true;
            break;
        }
        SuffixState cur = frontier.top();
        frontier.pop();

        // Greedy descent. Once the budget runs out mid-descent, the dive
        // still finishes (without pushing siblings) so at least one leaf
        // backs the incumbent list.
        bool dive_only = false;
        while (true) {
            if (!dive_only && !budget_left()) {
                truncated = true;
                dive_only = true;
            }
            ++st.expanded;
            if (cur.size() + 1 == l) {
                for (int a = 0; a < tables.asize; ++a) {
                    const SuffixState leaf = ev.extend(cur, static_cast<std::uint8_t>(a));
                    ++st.leaves;
                    inc.offer(leaf.suffix, leaf.F);
                }
                break;
            }
            std::vector<SuffixState> kids;
            kids.reserve(tables.asize);
            for (int a = 0; a < tables.asize; ++a)
                kids.push_back(ev.extend(cur, static_cast<std::uint8_t>(a)));
            int best = 0;
            for (int a = 1; a < tables.asize; ++a)
                if (kids[a].F > kids[best].F) best = a;
            if (!dive_only) {
                for (int a = 0; a < tables.asize; ++a) {
                    if (a == best) continue;
                    if (kids[a].F > inc.gate())
                        frontier.push(std::move(kids[a]));
                    else
                        drop(kids[a].F);
                }
                st.queue_peak = std::max(st.queue_peak, frontier.size());
                if (!(kids[best].F > inc.gate())) {
                    drop(kids[best].F);
                    break;
                }
            }
            cur = std::move(kids[best]);
        }
        if (truncated) break;
    }

    result.ranked = inc.take();
    result.optimal = !truncated;
    st.seconds = elapsed();
    return result;
}

}  // namespace

SearchResult design(const TrainedModel& model, int l, const DescriptorTable& table,
                    const SearchOptions& options) {
    if (!model.normalized)
        throw ContractError("design: model was trained on the unnormalized kernel");
    return run_branch_and_bound(model, l, table, options, false);
}

SearchResult design_unnormalized(const TrainedModel& model, int l, const DescriptorTable& table,
                                 const SearchOptions& options) {
    if (model.normalized)
        throw ContractError("design_unnormalized: model was trained on the normalized kernel");
    if (options.top_k == 1) {
        const auto t0 = std::chrono::steady_clock::now();
        const DpTables tables = build_tables(model, l, table, options.build);
        SearchResult result;
        result.ranked.push_back(argmax_linear(tables));
        result.optimal = true;
        result.stats.leaves = 1;
        result.stats.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return result;
    }
    return run_branch_and_bound(model, l, table, options, true);
}

namespace {

template <typename Key>
std::pair<double, std::optional<double>> compare_rankings_impl(const std::vector<Key>& a,
                                                               const std::vector<Key>& b) {
    std::map<Key, int> rank_a, rank_b;
    for (std::size_t r = 0; r < a.size(); ++r)
        if (!rank_a.emplace(a[r], static_cast<int>(r)).second)
            throw ContractError("compare_rankings: first list repeats a sequence");
    for (std::size_t r = 0; r < b.size(); ++r)
        if (!rank_b.emplace(b[r], static_cast<int>(r)).second)
            throw ContractError("compare_rankings: second list repeats a sequence");

    std::vector<std::pair<double, double>> ranks;
    for (const auto& [seq, ra] : rank_a) {
        const auto it = rank_b.find(seq);
        if (it != rank_b.end()) ranks.emplace_back(ra, it->second);
    }
    const std::size_t denom = std::max(a.size(), b.size());
    const double overlap = denom == 0 ? 0.0 : static_cast<double>(ranks.size()) / denom;
    if (ranks.size() < 2) return {overlap, std::nullopt};

    double ma = 0.0, mb = 0.0;
    for (const auto& [ra, rb] : ranks) {
        ma += ra;
        mb += rb;
    }
    ma /= ranks.size();
    mb /= ranks.size();
    double saa = 0.0, sbb = 0.0, sab = 0.0;
    for (const auto& [ra, rb] : ranks) {
        saa += (ra - ma) * (ra - ma);
        sbb += (rb - mb) * (rb - mb);
        sab += (ra - ma) * (rb - mb);
    }
    return {overlap, sab / std::sqrt(saa * sbb)};
}

}  // namespace

std::pair<double, std::optional<double>> compare_rankings(const std::vector<Sequence>& a,
                                                          const std::vector<Sequence>& b) {
    return compare_rankings_impl(a, b);
}

std::pair<double, std::optional<double>> compare_rankings(const std::vector<std::string>& a,
                                                          const std::vector<std::string>& b) {
    return compare_rankings_impl(a, b);
}

}  // namespace gsdesign
