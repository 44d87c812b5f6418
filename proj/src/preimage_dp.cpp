#include "gsdesign/preimage_dp.hpp"

#include <algorithm>
#include <climits>
#include <limits>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "gsdesign/errors.hpp"

namespace gsdesign {

int kmer_code(const Sequence& x, int pos, int k, int asize) {
    int code = 0;
    for (int q = 0; q < k; ++q) code = code * asize + x[pos + q];
    return code;
}

Sequence kmer_chars(int code, int k, int asize) {
    Sequence out;
    out.chars.resize(k);
    for (int q = k - 1; q >= 0; --q) {
        out.chars[q] = static_cast<std::uint8_t>(code % asize);
        code /= asize;
    }
    return out;
}

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Flat layout of every training offset: position (i, i') lives at
// base[i] + i'. One distance-sum layer per p-mer depth reuses it.
struct TrainingLayout {
    std::vector<int> base;
    int total = 0;
    int max_len = 0;
};

TrainingLayout layout_of(const std::vector<Sequence>& seqs) {
    TrainingLayout lay;
    lay.base.resize(seqs.size());
    for (std::size_t i = 0; i < seqs.size(); ++i) {
        lay.base[i] = lay.total;
        lay.total += seqs[i].size();
        lay.max_len = std::max(lay.max_len, seqs[i].size());
    }
    return lay;
}

struct OmegaScratch {
    std::vector<std::vector<double>> dsum;  // dsum[p-1][flat pos], p-mer distance sums
    std::vector<double> csum;               // weight-summed similarity per offset

    OmegaScratch(int k, int total, int max_len)
        : dsum(k, std::vector<double>(std::max(total, 1), 0.0)),
          csum(std::max(max_len, 1), 0.0) {}
};

// Depth-first walk over the tree of p-mers sharing a first character.
// At each node the aligned squared-distance sums against every training
// offset extend the parent's by one character, so a full sweep costs
// O(|A|^k * total offsets) instead of re-deriving each p-mer from scratch.
struct OmegaBuilder {
    const std::vector<Sequence>& seqs;
    const std::vector<double>& weights;
    const DescriptorTable& table;
    const GSParams& params;
    int l;
    TrainingLayout lay;
    DpTables& out;

    void emit(int p, int code, OmegaScratch& scratch) const {
        const int top = lay.max_len - p;
        if (top < 0) return;  // no training p-mer this long; row stays 0
        const std::vector<double>& d = scratch.dsum[p - 1];
        std::vector<double>& c = scratch.csum;
        std::fill(c.begin(), c.begin() + top + 1, 0.0);
        for (std::size_t i = 0; i < seqs.size(); ++i) {
            const int hi = seqs[i].size() - p;
            const int base = lay.base[i];
            for (int off = 0; off <= hi; ++off)
                c[off] += weights[i] * gauss_penalty(d[base + off], params.sigma_c);
        }
        std::vector<double>& row = out.omega[p - 1];
        const long long stride = out.pow_a[p];
        for (int j = 0; j + p <= l; ++j) {
            double acc = 0.0;
            for (int off = 0; off <= top; ++off)
                acc += position_factor(off, j, params.sigma_p) * c[off];
            row[static_cast<std::size_t>(j) * stride + code] = acc;
        }
    }

    void visit(int p, int code, OmegaScratch& scratch) const {
        emit(p, code, scratch);
        if (p == params.k) return;
        const std::vector<double>& d = scratch.dsum[p - 1];
        std::vector<double>& dn = scratch.dsum[p];
        for (int c = 0; c < table.size(); ++c) {
            for (std::size_t i = 0; i < seqs.size(); ++i) {
                const int hi = seqs[i].size() - (p + 1);
                const int base = lay.base[i];
                for (int off = 0; off <= hi; ++off)
                    dn[base + off] = d[base + off] + table.sq(seqs[i][off + p], c);
            }
            visit(p + 1, code * table.size() + c, scratch);
        }
    }

    void seed(int c0, OmegaScratch& scratch) const {
        std::vector<double>& d0 = scratch.dsum[0];
        for (std::size_t i = 0; i < seqs.size(); ++i) {
            const int base = lay.base[i];
            for (int off = 0; off < seqs[i].size(); ++off)
                d0[base + off] = table.sq(seqs[i][off], c0);
        }
        visit(1, c0, scratch);
    }
};

DpTables build_impl(const TrainedModel& model, int l, const DescriptorTable& table,
                    const DpBuildOptions& options, int jobs) {
    const int k = model.params.k;
    const int asize = table.size();
    validate_params(model.params);
    if (l < k) throw ContractError("build_tables: target length " + std::to_string(l) +
                                   " is shorter than k = " + std::to_string(k));
    const std::vector<double>& weights = model.linear_weights();
    if (weights.size() != model.sequences.size())
        throw ContractError("build_tables: model weight count does not match its sequences");

    DpTables t;
    t.l = l;
    t.k = k;
    t.asize = asize;
    t.pow_a.resize(k + 1);
    t.pow_a[0] = 1;
    for (int p = 1; p <= k; ++p) {
        t.pow_a[p] = t.pow_a[p - 1] * asize;
        if (t.pow_a[p] > options.max_cells)
            throw ResourceError("build_tables: |A|^" + std::to_string(p) + " = " +
                                std::to_string(t.pow_a[p]) +
                                " k-mer states exceed the cell cap of " +
                                std::to_string(options.max_cells));
    }
    if (t.pow_a[k] > INT_MAX) throw ResourceError("build_tables: k-mer code overflows int");
    t.n_kmers = static_cast<int>(t.pow_a[k]);

    const int states = l - k + 1;
    long long cells = static_cast<long long>(states) * t.n_kmers;
    for (int p = 1; p <= k; ++p) cells = std::max(cells, (l - p + 1) * t.pow_a[p]);
    if (cells > options.max_cells)
        throw ResourceError("build_tables: " + std::to_string(cells) +
                            " table cells exceed the cap of " + std::to_string(options.max_cells) +
                            "; lower k or l, or raise the cap");

    t.omega.resize(k);
    for (int p = 1; p <= k; ++p)
        t.omega[p - 1].assign(static_cast<std::size_t>(l - p + 1) * t.pow_a[p], 0.0);

    const TrainingLayout lay = layout_of(model.sequences);
    const OmegaBuilder builder{model.sequences, weights, table, model.params, l, lay, t};

#ifdef _OPENMP
    if (jobs > 1) {
#pragma omp parallel for schedule(dynamic, 1) num_threads(jobs)
        for (int c0 = 0; c0 < asize; ++c0) {
            OmegaScratch scratch(k, lay.total, lay.max_len);
            builder.seed(c0, scratch);
        }
    } else
#else
    (void)jobs;
#endif
    {
        OmegaScratch scratch(k, lay.total, lay.max_len);
        for (int c0 = 0; c0 < asize; ++c0) builder.seed(c0, scratch);
    }

    // Fold omega into per-state node weights. Interior states take the p-mer
    // prefixes of their k-mer; the terminal state also absorbs every shorter
    // substring starting past its own start, so each (p, position) pair of a
    // candidate string is counted exactly once along its state path.
    const int nk = t.n_kmers;
    t.node_weight.assign(static_cast<std::size_t>(states) * nk, 0.0);
    for (int j = 0; j < states; ++j) {
        const bool terminal = (j == l - k);
        for (int v = 0; v < nk; ++v) {
            double acc = 0.0;
            for (int p = 1; p <= k; ++p)
                acc += t.omega_at(p, j, static_cast<int>(v / t.pow_a[k - p]));
            if (terminal) {
                for (int q = 1; q < k; ++q)
                    for (int p = 1; p + q <= k; ++p)
                        acc += t.omega_at(p, j + q,
                                          static_cast<int>((v / t.pow_a[k - q - p]) % t.pow_a[p]));
            }
            t.node_weight[static_cast<std::size_t>(j) * nk + v] = acc;
        }
    }

    // Left-to-right best-prefix table with prepend back-links.
    t.prefix_best.resize(t.node_weight.size());
    t.prefix_arg.assign(t.node_weight.size(), -1);
    for (int v = 0; v < nk; ++v) t.prefix_best[v] = t.node_weight[v];
    const long long head = t.pow_a[k - 1];
    for (int j = 1; j < states; ++j) {
        for (int v = 0; v < nk; ++v) {
            const int tail = v / asize;
            double best = kNegInf;
            int arg = -1;
            for (int a = 0; a < asize; ++a) {
                const double cand = t.prefix_best[static_cast<std::size_t>(j - 1) * nk + a * head + tail];
                if (cand > best) {
                    best = cand;
                    arg = a;
                }
            }
            const std::size_t cell = static_cast<std::size_t>(j) * nk + v;
            t.prefix_best[cell] = t.node_weight[cell] + best;
            t.prefix_arg[cell] = arg;
        }
    }

    // Right-to-left best-completion table with append links; the argmax scan
    // keeps the smallest character so reconstruction is lexicographic-first.
    t.suffix_best.resize(t.node_weight.size());
    t.suffix_arg.assign(t.node_weight.size(), -1);
    for (int v = 0; v < nk; ++v) {
        const std::size_t cell = static_cast<std::size_t>(states - 1) * nk + v;
        t.suffix_best[cell] = t.node_weight[cell];
    }
    for (int j = states - 2; j >= 0; --j) {
        for (int v = 0; v < nk; ++v) {
            const long long succ0 = (v % head) * asize;
            double best = kNegInf;
            int arg = -1;
            for (int c = 0; c < asize; ++c) {
                const double cand = t.suffix_best[static_cast<std::size_t>(j + 1) * nk + succ0 + c];
                if (cand > best) {
                    best = cand;
                    arg = c;
                }
            }
            const std::size_t cell = static_cast<std::size_t>(j) * nk + v;
            t.suffix_best[cell] = t.node_weight[cell] + best;
            t.suffix_arg[cell] = arg;
        }
    }
    return t;
}

}  // namespace

DpTables build_tables(const TrainedModel& model, int l, const DescriptorTable& table,
                      const DpBuildOptions& options) {
    return build_impl(model, l, table, options, options.jobs);
}

DpTables build_tables_serial(const TrainedModel& model, int l, const DescriptorTable& table,
                             const DpBuildOptions& options) {
    return build_impl(model, l, table, options, 1);
}

std::pair<Sequence, double> argmax_linear(const DpTables& tables) {
    const int nk = tables.n_kmers;
    const int last = tables.states() - 1;
    double value = kNegInf;
    for (int v = 0; v < nk; ++v) value = std::max(value, tables.t(last, v));

    // Reconstruct through suffix_best so ties fall to the lexicographically
    // smallest string; walking prefix_best backward would only minimize the
    // final k-mer, not the whole sequence.
    double best = kNegInf;
    int v0 = 0;
    for (int v = 0; v < nk; ++v) {
        if (tables.s(0, v) > best) {
            best = tables.s(0, v);
            v0 = v;
        }
    }
    Sequence x = kmer_chars(v0, tables.k, tables.asize);
    x.chars.reserve(tables.l);
    int v = v0;
    const long long head = tables.pow_a[tables.k - 1];
    for (int j = 0; j < last; ++j) {
        const int c = tables.suffix_arg[static_cast<std::size_t>(j) * nk + v];
        x.chars.push_back(static_cast<std::uint8_t>(c));
        v = static_cast<int>((v % head) * tables.asize + c);
    }
    return {x, value};
}

double suffix_value(const DpTables& tables, int j_star, int v_star, double interior_sum) {
    if (j_star < 0 || j_star >= tables.states())
        throw ContractError("suffix_value: node position out of range");
    if (v_star < 0 || v_star >= tables.n_kmers)
        throw ContractError("suffix_value: k-mer code out of range");
    return tables.t(j_star, v_star) + interior_sum;
}

Sequence argmax_prefix(const DpTables& tables, int j_star, int v_star) {
    if (j_star < 0 || j_star >= tables.states())
        throw ContractError("argmax_prefix: node position out of range");
    if (v_star < 0 || v_star >= tables.n_kmers)
        throw ContractError("argmax_prefix: k-mer code out of range");
    std::vector<std::uint8_t> rev;
    rev.reserve(j_star);
    int v = v_star;
    const long long head = tables.pow_a[tables.k - 1];
    for (int j = j_star; j >= 1; --j) {
        const int a = tables.prefix_arg[static_cast<std::size_t>(j) * tables.n_kmers + v];
        rev.push_back(static_cast<std::uint8_t>(a));
        v = static_cast<int>(a * head + v / tables.asize);
    }
    Sequence out;
    out.chars.assign(rev.rbegin(), rev.rend());
    const Sequence tail = kmer_chars(v_star, tables.k, tables.asize);
    out.chars.insert(out.chars.end(), tail.chars.begin(), tail.chars.end());
    return out;
}

}  // namespace gsdesign
