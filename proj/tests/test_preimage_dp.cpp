#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "gsdesign/errors.hpp"
#include "gsdesign/preimage_dp.hpp"
#include "gsdesign/regression.hpp"
#include "support/test_instances.hpp"

using namespace gsdesign;
using test::make_random_table;
using test::make_training_set;
using test::random_sequence;

namespace {

// The linear part the tables maximize, evaluated the defining way.
double linear_part(const TrainedModel& model, const Sequence& x, const DescriptorTable& t) {
    const std::vector<double>& w = model.linear_weights();
    double total = 0.0;
    for (int i = 0; i < model.size(); ++i) total += w[i] * gs(model.sequences[i], x, model.params, t);
    return total;
}

TrainedModel manual_model(std::vector<Sequence> seqs, std::vector<double> alpha,
                          GSParams params, const DescriptorTable& t) {
    TrainedModel m;
    m.sequences = std::move(seqs);
    m.alpha = std::move(alpha);
    for (int i = 0; i < m.size(); ++i)
        m.beta.push_back(m.alpha[i] / std::sqrt(gs(m.sequences[i], m.sequences[i], params, t)));
    m.params = params;
    m.normalized = false;
    m.descriptor_digest = t.digest();
    return m;
}

double decomposition_sum(const DpTables& tables, const Sequence& x) {
    double s = 0.0;
    for (int j = 0; j <= tables.l - tables.k; ++j)
        s += tables.w(j, kmer_code(x, j, tables.k, tables.asize));
    return s;
}

}  // namespace

TEST_CASE("k-mer codes are big-endian and order like strings") {
    const int asize = 3, k = 3;
    Sequence x;
    x.chars = {2, 0, 1};  // "CAB"
    CHECK(kmer_code(x, 0, k, asize) == 2 * 9 + 0 * 3 + 1);
    const Sequence back = kmer_chars(19, k, asize);
    CHECK(back.chars == std::vector<std::uint8_t>{2, 0, 1});

    // code order equals lexicographic order over all 3-mers
    Sequence prev = kmer_chars(0, k, asize);
    for (int code = 1; code < 27; ++code) {
        const Sequence cur = kmer_chars(code, k, asize);
        CHECK(prev < cur);
        CHECK(kmer_code(cur, 0, k, asize) == code);
        prev = cur;
    }
}

TEST_CASE("hand-expanded tables for a one-example model") {
    // One training sequence "AB", weight 1, k = 1, l = 2, alphabet {A,B}.
    // Every cell is small enough to write out by hand.
    const DescriptorTable t = make_descriptor_table("AB", 1, {0.0, 1.0});
    const GSParams params{1, 2.0, 1.0};
    const TrainedModel model = manual_model({encode("AB", t)}, {1.0}, params, t);
    const DpTables tables = build_tables(model, 2, t);

    REQUIRE(tables.states() == 2);
    REQUIRE(tables.n_kmers == 2);

    const auto pf = [&](int i, int j) { return position_factor(i, j, params.sigma_p); };
    const auto sim = [&](int a, int b) { return gauss_penalty(t.sq(a, b), params.sigma_c); };
    // omega(j, c) = sum over training offsets i' of pf(i', j) sim(x[i'], c)
    for (int j = 0; j < 2; ++j)
        for (int c = 0; c < 2; ++c) {
            const double want = pf(0, j) * sim(0, c) + pf(1, j) * sim(1, c);
            CHECK(tables.omega_at(1, j, c) == doctest::Approx(want).epsilon(1e-15));
            // with k = 1 the node weight is the unigram affinity itself
            CHECK(tables.w(j, c) == tables.omega_at(1, j, c));
        }
    for (int c = 0; c < 2; ++c) {
        CHECK(tables.t(0, c) == tables.w(0, c));
        const double best0 = std::max(tables.t(0, 0), tables.t(0, 1));
        CHECK(tables.t(1, c) == doctest::Approx(tables.w(1, c) + best0).epsilon(1e-15));
        CHECK(tables.prefix_arg[static_cast<std::size_t>(1) * 2 + c] ==
              (tables.t(0, 0) >= tables.t(0, 1) ? 0 : 1));
    }
}

TEST_CASE("node weights decompose the linear part exactly") {
    std::mt19937_64 rng(101);
    const DescriptorTable t = make_random_table(4, 2, 103);
    for (const bool normalized : {false, true}) {
        const TrainingSet train = make_training_set(rng, 4, 6, 3, 7);
        const TrainedModel model = fit(train, GSParams{3, 1.0, 1.2}, 0.1, normalized, t);
        const int l = 6;
        const DpTables tables = build_tables(model, l, t);
        for (int rep = 0; rep < 25; ++rep) {
            const Sequence x = random_sequence(rng, 4, l);
            const double direct = linear_part(model, x, t);
            CHECK(test::rel_close(decomposition_sum(tables, x), direct, 1e-9));
        }
    }
}

TEST_CASE("prefix and suffix tables satisfy their recurrences") {
    std::mt19937_64 rng(107);
    const DescriptorTable t = make_random_table(3, 2, 109);
    const TrainingSet train = make_training_set(rng, 3, 5, 4, 6);
    const TrainedModel model = fit(train, GSParams{2, 0.9, 1.1}, 0.1, false, t);
    const DpTables tables = build_tables(model, 5, t);

    const int head = tables.n_kmers / tables.asize;  // |A|^(k-1)
    for (int j = 1; j < tables.states(); ++j)
        for (int v = 0; v < tables.n_kmers; ++v) {
            double best = -std::numeric_limits<double>::infinity();
            for (int a = 0; a < tables.asize; ++a)
                best = std::max(best, tables.t(j - 1, a * head + v / tables.asize));
            CHECK(tables.t(j, v) == doctest::Approx(tables.w(j, v) + best).epsilon(1e-12));
        }
    for (int j = tables.states() - 2; j >= 0; --j)
        for (int v = 0; v < tables.n_kmers; ++v) {
            double best = -std::numeric_limits<double>::infinity();
            for (int c = 0; c < tables.asize; ++c)
                best = std::max(best, tables.s(j + 1, (v % head) * tables.asize + c));
            CHECK(tables.s(j, v) == doctest::Approx(tables.w(j, v) + best).epsilon(1e-12));
        }
}

TEST_CASE("argmax matches exhaustive enumeration") {
    std::mt19937_64 rng(113);
    for (int inst = 0; inst < 12; ++inst) {
        const int asize = 2 + static_cast<int>(rng() % 3);
        const DescriptorTable t = make_random_table(asize, 2, rng());
        const TrainingSet train = make_training_set(rng, asize, 4, 3, 6);
        const int k = 1 + static_cast<int>(rng() % 3);
        const int l = k + 1 + static_cast<int>(rng() % 3);
        const TrainedModel model =
            fit(train, GSParams{k, 0.8, 1.3}, 0.1, /*normalized=*/(inst % 2) != 0, t);

        const DpTables tables = build_tables(model, l, t);
        const auto [got_seq, got_val] = argmax_linear(tables);

        // brute force over A^l, first maximizer in code (= lexicographic) order
        long long count = 1;
        for (int q = 0; q < l; ++q) count *= asize;
        Sequence best;
        double best_val = -std::numeric_limits<double>::infinity();
        for (long long code = 0; code < count; ++code) {
            Sequence x;
            x.chars.resize(l);
            long long c = code;
            for (int q = l - 1; q >= 0; --q) {
                x.chars[q] = static_cast<std::uint8_t>(c % asize);
                c /= asize;
            }
            const double val = linear_part(model, x, t);
            if (val > best_val) {
                best_val = val;
                best = x;
            }
        }
        CHECK(test::rel_close(got_val, best_val, 1e-9));
        CHECK(got_seq.chars == best.chars);
    }
}

TEST_CASE("all-zero weights tie-break to the lexicographically smallest string") {
    const DescriptorTable t = make_random_table(3, 2, 127);
    std::mt19937_64 rng(131);
    const TrainedModel model =
        manual_model({random_sequence(rng, 3, 4)}, {0.0}, GSParams{2, 1.0, 1.0}, t);
    const DpTables tables = build_tables(model, 4, t);
    const auto [seq, val] = argmax_linear(tables);
    CHECK(val == 0.0);
    CHECK(decode(seq, t) == "AAAA");
}

TEST_CASE("suffix values equal the best completion of the pinned suffix") {
    std::mt19937_64 rng(137);
    const int asize = 3;
    const DescriptorTable t = make_random_table(asize, 2, 139);
    const TrainingSet train = make_training_set(rng, asize, 5, 3, 6);
    const TrainedModel model = fit(train, GSParams{2, 1.0, 1.0}, 0.1, false, t);
    const int l = 5, k = model.params.k;
    const DpTables tables = build_tables(model, l, t);

    for (int s = k; s < l; ++s)
        for (int rep = 0; rep < 6; ++rep) {
            const Sequence suffix = random_sequence(rng, asize, s);
            const int j_star = l - s;
            const int v_star = kmer_code(suffix, 0, k, asize);
            double interior = 0.0;
            for (int j = j_star + 1; j <= l - k; ++j)
                interior += tables.w(j, kmer_code(suffix, j - j_star, k, asize));
            const double g = suffix_value(tables, j_star, v_star, interior);

            // enumerate every prefix completing the suffix
            long long count = 1;
            for (int q = 0; q < l - s; ++q) count *= asize;
            double best = -std::numeric_limits<double>::infinity();
            for (long long code = 0; code < count; ++code) {
                Sequence x;
                x.chars.resize(l);
                long long c = code;
                for (int q = l - s - 1; q >= 0; --q) {
                    x.chars[q] = static_cast<std::uint8_t>(c % asize);
                    c /= asize;
                }
                for (int q = 0; q < s; ++q) x.chars[l - s + q] = suffix[q];
                best = std::max(best, linear_part(model, x, t));
            }
            CHECK(test::rel_close(g, best, 1e-9));
        }
}

TEST_CASE("prefix witnesses spell their k-mer and achieve their table value") {
    std::mt19937_64 rng(149);
    const int asize = 3;
    const DescriptorTable t = make_random_table(asize, 2, 151);
    const TrainingSet train = make_training_set(rng, asize, 5, 4, 6);
    const TrainedModel model = fit(train, GSParams{2, 1.1, 0.9}, 0.1, true, t);
    const DpTables tables = build_tables(model, 6, t);

    for (int j_star = 0; j_star < tables.states(); ++j_star)
        for (int v_star = 0; v_star < tables.n_kmers; ++v_star) {
            const Sequence prefix = argmax_prefix(tables, j_star, v_star);
            REQUIRE(prefix.size() == j_star + tables.k);
            CHECK(kmer_code(prefix, j_star, tables.k, asize) == v_star);
            double achieved = 0.0;
            for (int j = 0; j <= j_star; ++j)
                achieved += tables.w(j, kmer_code(prefix, j, tables.k, asize));
            CHECK(test::rel_close(achieved, tables.t(j_star, v_star), 1e-12));
        }
}

TEST_CASE("parallel table construction reproduces the serial reference bitwise") {
    std::mt19937_64 rng(157);
    const DescriptorTable t = make_random_table(4, 2, 163);
    const TrainingSet train = make_training_set(rng, 4, 6, 4, 7);
    const TrainedModel model = fit(train, GSParams{3, 1.0, 1.0}, 0.1, true, t);

    const DpTables serial = build_tables_serial(model, 6, t);
    DpBuildOptions opts;
    opts.jobs = 4;
    const DpTables par = build_tables(model, 6, t, opts);

    REQUIRE(par.omega.size() == serial.omega.size());
    for (std::size_t p = 0; p < serial.omega.size(); ++p) CHECK(par.omega[p] == serial.omega[p]);
    CHECK(par.node_weight == serial.node_weight);
    CHECK(par.prefix_best == serial.prefix_best);
    CHECK(par.prefix_arg == serial.prefix_arg);
    CHECK(par.suffix_best == serial.suffix_best);
    CHECK(par.suffix_arg == serial.suffix_arg);
}

TEST_CASE("construction guards") {
    std::mt19937_64 rng(167);
    const DescriptorTable t = make_random_table(4, 2, 173);
    const TrainingSet train = make_training_set(rng, 4, 3, 4, 5);
    const TrainedModel model = fit(train, GSParams{3, 1.0, 1.0}, 0.1, true, t);

    CHECK_THROWS_AS(build_tables(model, 2, t), ContractError);  // l < k

    DpBuildOptions tiny;
    tiny.max_cells = 8;
    CHECK_THROWS_AS(build_tables(model, 6, t, tiny), ResourceError);
}
