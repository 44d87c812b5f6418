// Times the OpenMP code paths against their serial references on synthetic
// workloads sized to run in seconds. Each section first checks that the
// parallel result is bitwise identical to the reference; a benchmark that
// drifts from the reference would be timing the wrong computation.

#include <chrono>
#include <iostream>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gsdesign/gs_kernel.hpp"
#include "gsdesign/oracle.hpp"
#include "gsdesign/preimage_dp.hpp"
#include "gsdesign/regression.hpp"
#include "support/test_instances.hpp"

namespace {

using namespace gsdesign;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool report(const std::string& name, double serial, double parallel, bool equal) {
    std::cout << name << ": serial " << serial << "s, parallel " << parallel << "s, speedup "
              << (parallel > 0.0 ? serial / parallel : 0.0) << "x, bitwise equal: "
              << (equal ? "yes" : "NO") << "\n";
    return equal;
}

}  // namespace

int main(int argc, char** argv) {
    int jobs = static_cast<int>(std::thread::hardware_concurrency());
    if (jobs < 1) jobs = 1;
    CLI::App app{"compare the parallel kernel paths against their serial references"};
    app.add_option("--jobs", jobs, "worker threads for the parallel runs")
        ->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    std::cout << "jobs: " << jobs << "\n";
    bool all_equal = true;

    {
        // Gram assembly: the quadratic pair loop that dominates training.
        const DescriptorTable table = test::make_random_table(20, 4, 1);
        std::mt19937_64 rng(2);
        std::vector<Sequence> seqs;
        for (int i = 0; i < 120; ++i) seqs.push_back(test::random_sequence(rng, 20, 60));
        const GSParams params{4, 2.0, 2.0};
        auto t0 = std::chrono::steady_clock::now();
        const SymMatrix ref = gram_matrix_serial(seqs, params, table, true);
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const SymMatrix par = gram_matrix(seqs, params, table, true, jobs);
        const double tp = seconds_since(t0);
        all_equal &= report("gram 120x120 (length 60, k=4)", ts, tp, ref.a == par.a);
    }

    {
        // DP table construction, parallel over leading-character blocks.
        const DescriptorTable table = test::make_random_table(8, 4, 3);
        std::mt19937_64 rng(4);
        const TrainingSet train = test::make_training_set(rng, 8, 20, 35, 45);
        const GSParams params{4, 2.0, 2.0};
        const TrainedModel model = fit(train, params, 0.1, true, table);
        DpBuildOptions opts;
        opts.max_cells = 1 << 24;
        auto t0 = std::chrono::steady_clock::now();
        const DpTables ref = build_tables_serial(model, 30, table, opts);
        const double ts = seconds_since(t0);
        opts.jobs = jobs;
        t0 = std::chrono::steady_clock::now();
        const DpTables par = build_tables(model, 30, table, opts);
        const double tp = seconds_since(t0);
        const bool equal = ref.omega == par.omega && ref.node_weight == par.node_weight &&
                           ref.prefix_best == par.prefix_best &&
                           ref.suffix_best == par.suffix_best;
        all_equal &= report("dp tables (|A|=8, k=4, l=30, 20 sequences)", ts, tp, equal);
    }

    {
        // Enumeration oracle: embarrassingly parallel candidate sweep.
        const DescriptorTable table = test::make_random_table(4, 4, 5);
        std::mt19937_64 rng(6);
        const TrainingSet train = test::make_training_set(rng, 4, 10, 8, 12);
        const GSParams params{2, 1.0, 1.0};
        const TrainedModel model = fit(train, params, 0.1, true, table);
        EnumerationSpec spec;
        spec.asize = 4;
        spec.length = 8;
        auto t0 = std::chrono::steady_clock::now();
        const auto ref = enum_max_objective(model, spec, Objective::h_star, table, 1);
        const double ts = seconds_since(t0);
        t0 = std::chrono::steady_clock::now();
        const auto par = enum_max_objective(model, spec, Objective::h_star, table, jobs);
        const double tp = seconds_since(t0);
        const bool equal = ref.first == par.first && ref.second == par.second;
        all_equal &= report("enumeration of 4^8 candidates (10 sequences, k=2)", ts, tp, equal);
    }

    std::cout << (all_equal ? "all parallel results match their references\n"
                            : "MISMATCH between parallel and serial results\n");
    return all_equal ? 0 : 1;
}
