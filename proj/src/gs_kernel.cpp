#include "gsdesign/gs_kernel.hpp"

#include <algorithm>

#include "gsdesign/errors.hpp"

namespace gsdesign {

void validate_params(const GSParams& params) {
    if (params.k < 1) throw ContractError("kernel params: k must be >= 1");
    if (!(params.sigma_p >= 0.0)) throw ContractError("kernel params: sigma_p must be >= 0");
    if (!(params.sigma_c >= 0.0)) throw ContractError("kernel params: sigma_c must be >= 0");
}

double pmer_similarity(const Sequence& s, int s_off,
                       const Sequence& t, int t_off,
                       int p, const DescriptorTable& table, double sigma_c) {
    double d2 = 0.0;
    for (int q = 0; q < p; ++q) d2 += table.sq(s[s_off + q], t[t_off + q]);
    return gauss_penalty(d2, sigma_c);
}

double pmer_similarity(const Sequence& s, const Sequence& t,
                       const DescriptorTable& table, double sigma_c) {
    if (s.size() != t.size())
        throw ContractError("pmer_similarity: length mismatch (" + std::to_string(s.size()) + " vs " +
                            std::to_string(t.size()) + ")");
    if (s.empty()) throw ContractError("pmer_similarity: empty p-mer");
    return pmer_similarity(s, 0, t, 0, s.size(), table, sigma_c);
}

namespace {

// Accumulates the triple sum with one pass per start-offset pair, extending
// the compared substrings one character at a time so the aligned squared
// distance is a running total: O(k |x| |y|) overall.
void gs_accumulate(const Sequence& x, const Sequence& y, const GSParams& params,
                   const DescriptorTable& table, std::vector<double>& partials) {
    const int nx = x.size();
    const int ny = y.size();
    partials.assign(params.k, 0.0);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            const double pf = position_factor(i, j, params.sigma_p);
            if (pf == 0.0) continue;
            const int pmax = std::min({params.k, nx - i, ny - j});
            double d2 = 0.0;
            for (int p = 1; p <= pmax; ++p) {
                d2 += table.sq(x[i + p - 1], y[j + p - 1]);
                partials[p - 1] += pf * gauss_penalty(d2, params.sigma_c);
            }
        }
    }
}

}  // namespace

std::vector<double> gs_partials(const Sequence& x, const Sequence& y,
                                const GSParams& params, const DescriptorTable& table) {
    // Canonical argument order keeps the summation order, and therefore the
    // floating-point result, exactly symmetric.
    const bool swap = y < x;
    const Sequence& a = swap ? y : x;
    const Sequence& b = swap ? x : y;
    std::vector<double> partials;
    gs_accumulate(a, b, params, table, partials);
    return partials;
}

double gs(const Sequence& x, const Sequence& y, const GSParams& params,
          const DescriptorTable& table) {
    const auto partials = gs_partials(x, y, params, table);
    double total = 0.0;
    for (const double v : partials) total += v;
    return total;
}

double normalized_kernel(const Sequence& x, const Sequence& y,
                         const GSParams& params, const DescriptorTable& table) {
    if (x.empty() || y.empty()) throw ContractError("normalized_kernel: sequences must be non-empty");
    const double kxx = gs(x, x, params, table);
    const double kyy = gs(y, y, params, table);
    if (kxx <= 0.0 || kyy <= 0.0)
        throw NumericError("normalized_kernel: zero self-kernel");
    return gs(x, y, params, table) / std::sqrt(kxx * kyy);
}

namespace {

double gram_cell(const std::vector<Sequence>& seqs, const std::vector<double>& selfs,
                 int i, int j, const GSParams& params, const DescriptorTable& table,
                 bool normalized) {
    const double v = gs(seqs[i], seqs[j], params, table);
    return normalized ? v / std::sqrt(selfs[i] * selfs[j]) : v;
}

std::vector<double> self_kernels(const std::vector<Sequence>& seqs, const GSParams& params,
                                 const DescriptorTable& table) {
    std::vector<double> selfs(seqs.size());
    for (std::size_t i = 0; i < seqs.size(); ++i) selfs[i] = gs(seqs[i], seqs[i], params, table);
    return selfs;
}

}  // namespace

SymMatrix gram_matrix_serial(const std::vector<Sequence>& seqs, const GSParams& params,
                             const DescriptorTable& table, bool normalized) {
    const int m = static_cast<int>(seqs.size());
    const auto selfs = self_kernels(seqs, params, table);
    SymMatrix g;
    g.n = m;
    g.a.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) {
        g(i, i) = normalized ? 1.0 : selfs[i];
        for (int j = i + 1; j < m; ++j) {
            const double v = gram_cell(seqs, selfs, i, j, params, table, normalized);
            g(i, j) = v;
            g(j, i) = v;
        }
    }
    return g;
}

SymMatrix gram_matrix(const std::vector<Sequence>& seqs, const GSParams& params,
                      const DescriptorTable& table, bool normalized, int jobs) {
    if (jobs <= 1) return gram_matrix_serial(seqs, params, table, normalized);

    const int m = static_cast<int>(seqs.size());
    const auto selfs = self_kernels(seqs, params, table);
    SymMatrix g;
    g.n = m;
    g.a.assign(static_cast<std::size_t>(m) * m, 0.0);

    // Upper triangle flattened so the parallel loop balances: cell t maps to
    // the t-th pair (i, j) with i <= j.
    const long long cells = static_cast<long long>(m) * (m + 1) / 2;
#pragma omp parallel for schedule(dynamic, 16) num_threads(jobs)
    for (long long t = 0; t < cells; ++t) {
        // Invert t = i*m - i(i-1)/2 + (j - i) by scanning rows; m is small.
        int i = 0;
        long long base = 0;
        while (base + (m - i) <= t) {
            base += m - i;
            ++i;
        }
        const int j = i + static_cast<int>(t - base);
        double v;
        if (i == j) {
            v = normalized ? 1.0 : selfs[i];
        } else {
            v = gram_cell(seqs, selfs, i, j, params, table, normalized);
        }
        g(i, j) = v;
        g(j, i) = v;
    }
    return g;
}

}  // namespace gsdesign
