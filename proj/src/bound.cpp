#include "gsdesign/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "gsdesign/errors.hpp"

namespace gsdesign {

namespace {

// Inner sum over suffix-side p-mer starts for one prefix-side p-mer whose
// characters are fully specified in buf.
double cross_inner(const std::uint8_t* buf, int p, int i, const Sequence& sfx, int n,
                   const GSParams& params, const DescriptorTable& table) {
    double val = 0.0;
    const int top = sfx.size() - p;
    for (int j = 0; j <= top; ++j) {
        double d2 = 0.0;
        for (int q = 0; q < p; ++q) d2 += table.sq(buf[q], sfx[j + q]);
        val += position_factor(i, n + j, params.sigma_p) * gauss_penalty(d2, params.sigma_c);
    }
    return val;
}

double cross_term_exact(int p, int i, const Sequence& sfx, int n, const GSParams& params,
                        const DescriptorTable& table, long long exact_cap) {
    const int asize = table.size();
    const int unknown = std::min(p, n - i);
    long long count = 1;
    for (int q = 0; q < unknown; ++q) {
        count *= asize;
        if (count > exact_cap)
            throw ResourceError("cross_lower_bound: exact mode needs " + std::to_string(asize) +
                                "^" + std::to_string(unknown) +
                                " assignments, over the cap of " + std::to_string(exact_cap) +
                                "; use fast mode");
    }
    std::vector<std::uint8_t> buf(p);
    for (int q = unknown; q < p; ++q) buf[q] = sfx[i + q - n];
    double best = std::numeric_limits<double>::infinity();
    for (long long code = 0; code < count; ++code) {
        long long rest = code;
        for (int q = unknown - 1; q >= 0; --q) {
            buf[q] = static_cast<std::uint8_t>(rest % asize);
            rest /= asize;
        }
        best = std::min(best, cross_inner(buf.data(), p, i, sfx, n, params, table));
    }
    return best;
}

double cross_term_fast(int p, int i, const Sequence& sfx, int n, const GSParams& params,
                       const DescriptorTable& table) {
    double val = 0.0;
    const int top = sfx.size() - p;
    for (int j = 0; j <= top; ++j) {
        double d2 = 0.0;
        for (int q = 0; q < p; ++q) {
            if (i + q < n)
                d2 += table.max_sq_dist_to[sfx[j + q]];
            else
                d2 += table.sq(sfx[i + q - n], sfx[j + q]);
        }
        val += position_factor(i, n + j, params.sigma_p) * gauss_penalty(d2, params.sigma_c);
    }
    return val;
}

void check_suffix(const Sequence& sfx, int l, const char* who) {
    if (sfx.size() > l)
        throw ContractError(std::string(who) + ": suffix longer than the target length");
}

}  // namespace

double self_kernel_suffix(const Sequence& suffix, const GSParams& params,
                          const DescriptorTable& table) {
    return gs(suffix, suffix, params, table);
}

double cross_lower_bound(const Sequence& suffix, int l, const GSParams& params,
                         const DescriptorTable& table, CrossMode mode, long long exact_cap) {
    check_suffix(suffix, l, "cross_lower_bound");
    const int s = suffix.size();
    const int n = l - s;
    double total = 0.0;
    for (int p = 1; p <= params.k && p <= s; ++p) {
        const bool exact = mode == CrossMode::exact || (mode == CrossMode::hybrid && p <= 2);
        for (int i = 0; i < n; ++i) {
            total += exact ? cross_term_exact(p, i, suffix, n, params, table, exact_cap)
                           : cross_term_fast(p, i, suffix, n, params, table);
        }
    }
    return total;
}

double cross_upper_bound(const Sequence& suffix, int l, const GSParams& params,
                         const DescriptorTable& table) {
    check_suffix(suffix, l, "cross_upper_bound");
    const int s = suffix.size();
    const int n = l - s;
    double total = 0.0;
    for (int p = 1; p <= params.k && p <= s; ++p) {
        const int top = s - p;
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j <= top; ++j) {
                double d2 = 0.0;
                for (int q = 0; q < p; ++q)
                    if (i + q >= n) d2 += table.sq(suffix[i + q - n], suffix[j + q]);
                total += position_factor(i, n + j, params.sigma_p) *
                         gauss_penalty(d2, params.sigma_c);
            }
        }
    }
    return total;
}

double prefix_lower_bound(const Sequence& suffix, int l, const GSParams& params,
                          const DescriptorTable& table) {
    check_suffix(suffix, l, "prefix_lower_bound");
    const int n = l - suffix.size();
    double total = 0.0;
    for (int p = 1; p <= params.k; ++p) {
        const int fit = std::min(n, l - p + 1);  // p-mer must lie inside the full string
        for (int i = 0; i < fit; ++i) {
            for (int j = 0; j < fit; ++j) {
                double d2 = 0.0;
                for (int q = 0; q < p; ++q) {
                    const int a = i + q;
                    const int b = j + q;
                    if (a == b) continue;
                    const bool ka = a >= n;
                    const bool kb = b >= n;
                    if (ka && kb)
                        d2 += table.sq(suffix[a - n], suffix[b - n]);
                    else if (ka)
                        d2 += table.max_sq_dist_to[suffix[a - n]];
                    else if (kb)
                        d2 += table.max_sq_dist_to[suffix[b - n]];
                    else
                        d2 += table.max_sq_dist;
                }
                total += position_factor(i, j, params.sigma_p) * gauss_penalty(d2, params.sigma_c);
            }
        }
    }
    return total;
}

double prefix_upper_bound(const Sequence& suffix, int l, const GSParams& params,
                          const DescriptorTable& table) {
    check_suffix(suffix, l, "prefix_upper_bound");
    const int n = l - suffix.size();
    double total = 0.0;
    for (int p = 1; p <= params.k; ++p) {
        const int fit = std::min(n, l - p + 1);
        for (int i = 0; i < fit; ++i) {
            for (int j = 0; j < fit; ++j) {
                double d2 = 0.0;
                for (int q = 0; q < p; ++q) {
                    const int a = i + q;
                    const int b = j + q;
                    if (a != b && a >= n && b >= n) d2 += table.sq(suffix[a - n], suffix[b - n]);
                }
                total += position_factor(i, j, params.sigma_p) * gauss_penalty(d2, params.sigma_c);
            }
        }
    }
    return total;
}

double f_lower_bound(const Sequence& suffix, int l, const GSParams& params,
                     const DescriptorTable& table, CrossMode mode, long long exact_cap) {
    return self_kernel_suffix(suffix, params, table) +
           2.0 * cross_lower_bound(suffix, l, params, table, mode, exact_cap) +
           prefix_lower_bound(suffix, l, params, table);
}

double f_upper_bound(const Sequence& suffix, int l, const GSParams& params,
                     const DescriptorTable& table) {
    return self_kernel_suffix(suffix, params, table) +
           2.0 * cross_upper_bound(suffix, l, params, table) +
           prefix_upper_bound(suffix, l, params, table);
}

double bound_value(double g, double f_lower, double f_upper) {
    if (!(f_lower > 0.0))
        throw InternalError("bound_value: self-kernel lower bound is not positive");
    return g >= 0.0 ? g / std::sqrt(f_lower) : g / std::sqrt(f_upper);
}

double bound_F(const SuffixState& state) {
    if (!(state.f > 0.0))
        throw InternalError("bound_F: state carries a non-positive self-kernel bound");
    return state.F;
}

SuffixState BoundEvaluator::root(int v) const {
    SuffixState st;
    st.suffix = kmer_chars(v, tables->k, tables->asize);
    st.l = tables->l;
    st.j_star = tables->l - tables->k;
    st.v_star = v;
    st.interior_sum = 0.0;
    st.g = tables->t(st.j_star, v);
    if (linear_objective) {
        st.f = st.f_upper = 1.0;
        st.F = st.g;
    } else {
        st.f = f_lower_bound(st.suffix, st.l, params, *table, mode, exact_cap);
        st.f_upper = st.g >= 0.0 ? st.f : f_upper_bound(st.suffix, st.l, params, *table);
        st.F = bound_value(st.g, st.f, st.f_upper);
    }
    return st;
}

SuffixState BoundEvaluator::extend(const SuffixState& state, std::uint8_t a) const {
    if (state.j_star == 0)
        throw ContractError("extend: suffix already spans the whole string");
    SuffixState st;
    st.suffix.chars.reserve(state.suffix.size() + 1);
    st.suffix.chars.push_back(a);
    st.suffix.chars.insert(st.suffix.chars.end(), state.suffix.chars.begin(),
                           state.suffix.chars.end());
    st.l = state.l;
    st.j_star = state.j_star - 1;
    st.v_star = static_cast<int>(a * tables->pow_a[tables->k - 1] + state.v_star / tables->asize);
    st.interior_sum = state.interior_sum + tables->w(state.j_star, state.v_star);
    st.g = tables->t(st.j_star, st.v_star) + st.interior_sum;
    if (linear_objective) {
        st.f = st.f_upper = 1.0;
        st.F = st.g;
    } else {
        st.f = f_lower_bound(st.suffix, st.l, params, *table, mode, exact_cap);
        st.f_upper = st.g >= 0.0 ? st.f : f_upper_bound(st.suffix, st.l, params, *table);
        st.F = bound_value(st.g, st.f, st.f_upper);
    }
    return st;
}

}  // namespace gsdesign
