#include "gsdesign/cli.hpp"

#include <cmath>
#include <cstdint>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gsdesign/errors.hpp"
#include "gsdesign/io.hpp"
#include "gsdesign/oracle.hpp"
#include "gsdesign/search.hpp"

namespace gsdesign::cli {

namespace {

struct CommonOpts {
    std::string descriptors;
    bool standardize = false;
    int jobs = 1;
};

void add_common(CLI::App* sub, CommonOpts& c) {
    sub->add_option("--descriptors", c.descriptors, "descriptor table file")->required();
    sub->add_flag("--standardize", c.standardize,
                  "standardize descriptor columns to zero mean, unit variance");
    sub->add_option("--jobs", c.jobs, "worker threads for parallel stages")
        ->default_val(1)
        ->check(CLI::PositiveNumber);
}

DescriptorTable load_table(const CommonOpts& c) {
    return load_descriptors(read_file(c.descriptors), c.standardize);
}

std::vector<std::string> split_commas(const std::string& text) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t pos = 0; pos <= text.size(); ++pos) {
        if (pos == text.size() || text[pos] == ',') {
            out.push_back(text.substr(start, pos - start));
            start = pos + 1;
        }
    }
    return out;
}

std::vector<double> parse_scalar_grid(const std::string& text, const std::string& what) {
    std::vector<double> out;
    for (const std::string& tok : split_commas(text)) out.push_back(parse_scalar(tok, what));
    if (out.empty()) throw FormatError(what + " grid is empty");
    return out;
}

std::vector<int> parse_int_grid(const std::string& text, const std::string& what) {
    std::vector<int> out;
    for (const std::string& tok : split_commas(text)) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(tok, &used));
            if (used != tok.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw FormatError("cannot parse " + what + " '" + tok + "'");
        }
    }
    if (out.empty()) throw FormatError(what + " grid is empty");
    return out;
}

// Per-subcommand option bags. Sigmas travel as text so "inf" stays legal.
struct TrainOpts {
    CommonOpts common;
    std::string data, output;
    int k = 1;
    std::string sigma_p = "1", sigma_c = "1";
    double lambda = 0.1;
    bool unnormalized = false;
};

struct CvOpts {
    CommonOpts common;
    std::string data;
    std::string k_grid = "1";
    std::string sigma_p_grid = "1", sigma_c_grid = "1", lambda_grid = "0.1";
    int folds = 5;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool unnormalized = false;
};

struct PredictOpts {
    CommonOpts common;
    std::string model, data, output;
};

struct DesignOpts {
    CommonOpts common;
    std::string model, output;
    int length = 0;
    int top_k = 1;
    long long budget_nodes = 0;
    bool has_budget_nodes = false;
    double budget_seconds = 0.0;
    bool has_budget_seconds = false;
    std::string cross_mode = "hybrid";
    long long exact_cap = kDefaultExactCap;
    long long max_cells = DpBuildOptions{}.max_cells;
};

struct CompareOpts {
    std::string first, second, output;
};

struct VerifyOpts {
    CommonOpts common;
    std::string model;
    int length = 0;
    int top_k = 1;
    long long cap = 1'000'000;
};

CrossMode parse_cross_mode(const std::string& text) {
    if (text == "exact") return CrossMode::exact;
    if (text == "fast") return CrossMode::fast;
    if (text == "hybrid") return CrossMode::hybrid;
    throw FormatError("cross mode must be exact, fast or hybrid");
}

GSParams params_from(int k, const std::string& sigma_p, const std::string& sigma_c) {
    GSParams params;
    params.k = k;
    params.sigma_p = parse_scalar(sigma_p, "sigma_p");
    params.sigma_c = parse_scalar(sigma_c, "sigma_c");
    validate_params(params);
    return params;
}

int cmd_train(const TrainOpts& o) {
    const DescriptorTable table = load_table(o.common);
    const TrainingSet train = read_dataset(read_file(o.data), table);
    const GSParams params = params_from(o.k, o.sigma_p, o.sigma_c);
    const TrainedModel model =
        fit(train, params, o.lambda, !o.unnormalized, table, o.common.jobs);

    // Residual summary: how well (G + lambda I) alpha = e was solved.
    const SymMatrix gram =
        gram_matrix(train.sequences, params, table, model.normalized, o.common.jobs);
    double resid2 = 0.0, rhs2 = 0.0;
    for (int i = 0; i < model.size(); ++i) {
        double r = o.lambda * model.alpha[i] - train.activities[i];
        for (int j = 0; j < model.size(); ++j) r += gram(i, j) * model.alpha[j];
        resid2 += r * r;
        rhs2 += train.activities[i] * train.activities[i];
    }
    write_file(o.output, write_model_json(model, table));
    std::cout << "trained on " << model.size() << " sequences (k=" << params.k
              << ", lambda=" << format_double(o.lambda)
              << ", kernel=" << (model.normalized ? "normalized" : "raw") << ")\n"
              << "solve residual " << format_double(std::sqrt(resid2)) << " (relative "
              << format_double(rhs2 > 0.0 ? std::sqrt(resid2 / rhs2) : 0.0) << ")\n"
              << "model written to " << o.output << "\n";
    return 0;
}

int cmd_cv(const CvOpts& o) {
    const DescriptorTable table = load_table(o.common);
    const TrainingSet train = read_dataset(read_file(o.data), table);
    std::vector<GSParams> param_grid;
    for (const int k : parse_int_grid(o.k_grid, "k"))
        for (const double sp : parse_scalar_grid(o.sigma_p_grid, "sigma_p"))
            for (const double sc : parse_scalar_grid(o.sigma_c_grid, "sigma_c")) {
                GSParams p{k, sp, sc};
                validate_params(p);
                param_grid.push_back(p);
            }
    const std::vector<double> lambda_grid = parse_scalar_grid(o.lambda_grid, "lambda");
    const std::optional<std::uint64_t> seed =
        o.has_seed ? std::optional<std::uint64_t>(o.seed) : std::nullopt;
    const CvResult best = cross_validate(train, param_grid, lambda_grid, o.folds,
                                         !o.unnormalized, table, seed, o.common.jobs);
    std::cout << "best: k=" << best.params.k
              << " sigma_p=" << scalar_to_string(best.params.sigma_p)
              << " sigma_c=" << scalar_to_string(best.params.sigma_c)
              << " lambda=" << format_double(best.lambda)
              << " cv_mse=" << format_double(best.score) << "\n";
    return 0;
}

int cmd_predict(const PredictOpts& o) {
    const DescriptorTable table = load_table(o.common);
    const TrainedModel model = read_model_json(read_file(o.model), table);
    const std::vector<Sequence> seqs = read_sequences(read_file(o.data), table);
    std::string out = "sequence,prediction\n";
    for (const Sequence& x : seqs) {
        out += decode(x, table);
        out += ',';
        out += format_double(predict(model, x, table));
        out += '\n';
    }
    if (o.output.empty())
        std::cout << out;
    else
        write_file(o.output, out);
    return 0;
}

int cmd_design(const DesignOpts& o) {
    const DescriptorTable table = load_table(o.common);
    const TrainedModel model = read_model_json(read_file(o.model), table);
    SearchOptions so;
    so.top_k = o.top_k;
    if (o.has_budget_nodes) so.max_nodes = o.budget_nodes;
    if (o.has_budget_seconds) so.max_seconds = o.budget_seconds;
    so.mode = parse_cross_mode(o.cross_mode);
    so.exact_cap = o.exact_cap;
    so.build.max_cells = o.max_cells;
    so.build.jobs = o.common.jobs;
    const SearchResult result = model.normalized
                                    ? design(model, o.length, table, so)
                                    : design_unnormalized(model, o.length, table, so);
    std::vector<ResultRow> rows;
    for (std::size_t r = 0; r < result.ranked.size(); ++r) {
        const auto& [seq, value] = result.ranked[r];
        rows.push_back(
            {static_cast<int>(r) + 1, decode(seq, table), value, value, result.optimal});
    }
    write_file(o.output, write_results_csv(rows));
    std::cout << "design: " << (result.optimal ? "optimal" : "budget-truncated") << ", "
              << result.ranked.size() << " sequences, expanded " << result.stats.expanded
              << ", pruned " << result.stats.pruned << ", leaves " << result.stats.leaves
              << ", queue peak " << result.stats.queue_peak << "\n"
              << "results written to " << o.output << "\n";
    return result.optimal ? 0 : 3;
}

int cmd_compare(const CompareOpts& o) {
    std::vector<std::string> a, b;
    for (const ResultRow& r : read_results_csv(read_file(o.first))) a.push_back(r.sequence);
    for (const ResultRow& r : read_results_csv(read_file(o.second))) b.push_back(r.sequence);
    const auto [overlap, pcc] = compare_rankings(a, b);
    std::string report = "overlap " + format_double(overlap) + "\n" + "rank_pcc " +
                         (pcc ? format_double(*pcc) : std::string("n/a")) + "\n";
    std::cout << report;
    if (!o.output.empty()) write_file(o.output, report);
    return 0;
}

int cmd_verify(const VerifyOpts& o) {
    const DescriptorTable table = load_table(o.common);
    const TrainedModel model = read_model_json(read_file(o.model), table);
    EnumerationSpec spec;
    spec.asize = table.size();
    spec.length = o.length;
    spec.cap = o.cap;

    SearchOptions so;
    so.top_k = o.top_k;
    so.build.jobs = o.common.jobs;
    const Objective objective = model.normalized ? Objective::h_star : Objective::h;
    const auto expected = enum_top_k(model, spec, objective, o.top_k, table, o.common.jobs);
    const SearchResult got = model.normalized ? design(model, o.length, table, so)
                                              : design_unnormalized(model, o.length, table, so);

    bool ok = got.optimal && got.ranked.size() == expected.size();
    for (std::size_t r = 0; ok && r < expected.size(); ++r) {
        const auto& [eseq, eval] = expected[r];
        const auto& [gseq, gval] = got.ranked[r];
        const double tol = 1e-9 * std::max(1.0, std::abs(eval));
        ok = eseq.chars == gseq.chars && std::abs(eval - gval) <= tol;
        std::cout << "rank " << r + 1 << ": enumeration " << decode(eseq, table) << " "
                  << format_double(eval) << ", search " << decode(gseq, table) << " "
                  << format_double(gval) << (ok ? "" : "  <-- MISMATCH") << "\n";
    }
    std::cout << (ok ? "verify: PASS" : "verify: FAIL") << "\n";
    return ok ? 0 : 4;
}

}  // namespace

int run(const std::vector<std::string>& args) {
    CLI::App app{"train string-kernel bioactivity predictors and design maximizing sequences"};
    app.require_subcommand(1);
    // Config files mirror the flags, grouped in a [subcommand] section; a
    // config alone can select the subcommand, and explicit flags override it.
    app.set_config("--config", "", "read options from an INI/TOML config file");

    TrainOpts to;
    CLI::App* train_cmd = app.add_subcommand("train", "fit kernel ridge regression");
    train_cmd->configurable();
    add_common(train_cmd, to.common);
    train_cmd->add_option("--data", to.data, "training CSV (sequence,activity)")->required();
    train_cmd->add_option("--output", to.output, "model file to write")->required();
    train_cmd->add_option("-k,--k", to.k, "maximum compared substring length");
    train_cmd->add_option("--sigma-p", to.sigma_p, "position penalty scale (number or inf)");
    train_cmd->add_option("--sigma-c", to.sigma_c, "descriptor penalty scale (number or inf)");
    train_cmd->add_option("--lambda", to.lambda, "ridge regularizer");
    train_cmd->add_flag("--unnormalized", to.unnormalized, "use the raw kernel");

    CvOpts co;
    CLI::App* cv_cmd = app.add_subcommand("cv", "grid-search hyperparameters by cross-validation");
    cv_cmd->configurable();
    add_common(cv_cmd, co.common);
    cv_cmd->add_option("--data", co.data, "training CSV (sequence,activity)")->required();
    cv_cmd->add_option("--k-grid", co.k_grid, "comma-separated k values");
    cv_cmd->add_option("--sigma-p-grid", co.sigma_p_grid, "comma-separated sigma_p values");
    cv_cmd->add_option("--sigma-c-grid", co.sigma_c_grid, "comma-separated sigma_c values");
    cv_cmd->add_option("--lambda-grid", co.lambda_grid, "comma-separated lambda values");
    cv_cmd->add_option("--folds", co.folds, "fold count")->check(CLI::PositiveNumber);
    cv_cmd->add_option("--seed", co.seed, "shuffle examples once with this seed");
    cv_cmd->add_flag("--unnormalized", co.unnormalized, "use the raw kernel");

    PredictOpts po;
    CLI::App* predict_cmd = app.add_subcommand("predict", "score sequences with a trained model");
    predict_cmd->configurable();
    add_common(predict_cmd, po.common);
    predict_cmd->add_option("--model", po.model, "model file")->required();
    predict_cmd->add_option("--data", po.data, "sequence CSV to score")->required();
    predict_cmd->add_option("--output", po.output, "output CSV (default: stdout)");

    DesignOpts dopt;
    CLI::App* design_cmd =
        app.add_subcommand("design", "search for the sequences maximizing the prediction");
    design_cmd->configurable();
    add_common(design_cmd, dopt.common);
    design_cmd->add_option("--model", dopt.model, "model file")->required();
    design_cmd->add_option("--length", dopt.length, "target sequence length")->required();
    design_cmd->add_option("--top-k", dopt.top_k, "how many sequences to return")
        ->check(CLI::PositiveNumber);
    design_cmd->add_option("--budget-nodes", dopt.budget_nodes, "stop after this many expansions");
    design_cmd->add_option("--budget-seconds", dopt.budget_seconds, "stop after this much time");
    design_cmd->add_option("--cross-mode", dopt.cross_mode,
                           "cross-term minimization: exact, fast or hybrid");
    design_cmd->add_option("--exact-cap", dopt.exact_cap,
                           "assignment cap per term in exact mode");
    design_cmd->add_option("--max-cells", dopt.max_cells, "table cell cap");
    design_cmd->add_option("--output", dopt.output, "results CSV to write")->required();

    CompareOpts cmp;
    CLI::App* compare_cmd = app.add_subcommand("compare", "overlap and rank correlation of two results files");
    compare_cmd->configurable();
    compare_cmd->add_option("--first", cmp.first, "results CSV")->required();
    compare_cmd->add_option("--second", cmp.second, "results CSV")->required();
    compare_cmd->add_option("--output", cmp.output, "write the report here too");

    VerifyOpts vo;
    CLI::App* verify_cmd =
        app.add_subcommand("verify", "certify a design run against exhaustive enumeration");
    verify_cmd->configurable();
    add_common(verify_cmd, vo.common);
    verify_cmd->add_option("--model", vo.model, "model file")->required();
    verify_cmd->add_option("--length", vo.length, "target sequence length")->required();
    verify_cmd->add_option("--top-k", vo.top_k, "list size to certify")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_option("--cap", vo.cap, "enumeration size cap");

    std::vector<const char*> argv;
    argv.reserve(args.size() + 1);
    argv.push_back("gsdesign");
    for (const std::string& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    co.has_seed = cv_cmd->count("--seed") > 0;
    dopt.has_budget_nodes = design_cmd->count("--budget-nodes") > 0;
    dopt.has_budget_seconds = design_cmd->count("--budget-seconds") > 0;

    try {
        if (train_cmd->parsed()) return cmd_train(to);
        if (cv_cmd->parsed()) return cmd_cv(co);
        if (predict_cmd->parsed()) return cmd_predict(po);
        if (design_cmd->parsed()) return cmd_design(dopt);
        if (compare_cmd->parsed()) return cmd_compare(cmp);
        if (verify_cmd->parsed()) return cmd_verify(vo);
    } catch (const InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 2;
}

}  // namespace gsdesign::cli
