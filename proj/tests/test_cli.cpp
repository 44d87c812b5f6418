#include <doctest.h>

#include <filesystem>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gsdesign/cli.hpp"
#include "gsdesign/io.hpp"
#include "gsdesign/oracle.hpp"
#include "gsdesign/search.hpp"
#include "support/test_instances.hpp"

using namespace gsdesign;

namespace {

// The CLI prints summaries; keep them out of the test log and available
// for assertions.
struct CaptureStreams {
    std::stringstream out, err;
    std::streambuf* old_out;
    std::streambuf* old_err;
    CaptureStreams()
        : old_out(std::cout.rdbuf(out.rdbuf())), old_err(std::cerr.rdbuf(err.rdbuf())) {}
    ~CaptureStreams() {
        std::cout.rdbuf(old_out);
        std::cerr.rdbuf(old_err);
    }
    CaptureStreams(const CaptureStreams&) = delete;
    CaptureStreams& operator=(const CaptureStreams&) = delete;
};

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        const auto base = std::filesystem::temp_directory_path();
        std::random_device rd;
        for (int tries = 0; tries < 100; ++tries) {
            auto p = base / ("gsdesign_test_" + std::to_string(rd()));
            if (std::filesystem::create_directory(p)) {
                path = p;
                return;
            }
        }
        throw std::runtime_error("could not create a scratch directory");
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

int run_cli(const std::vector<std::string>& args, std::string* out_text = nullptr,
            std::string* err_text = nullptr) {
    CaptureStreams cap;
    const int code = cli::run(args);
    if (out_text) *out_text = cap.out.str();
    if (err_text) *err_text = cap.err.str();
    return code;
}

const char* kDescText =
    "A 0.12 0.88\n"
    "B 0.91 0.33\n"
    "C 0.47 0.05\n"
    "D 0.66 0.72\n";

const char* kTrainText =
    "sequence,activity\n"
    "ABCA,1.25\n"
    "BBCD,0.75\n"
    "ADDA,1.9\n"
    "CBAD,0.4\n"
    "DACB,1.1\n"
    "BADD,1.45\n";

struct Workspace {
    TempDir dir;
    std::string desc, train_csv;
    Workspace() : desc(dir.file("desc.txt")), train_csv(dir.file("train.csv")) {
        write_file(desc, kDescText);
        write_file(train_csv, kTrainText);
    }
};

}  // namespace

TEST_CASE("train, predict and verify round-trip through files") {
    Workspace ws;
    const std::string model_path = ws.dir.file("model.json");
    std::string out;
    REQUIRE(run_cli({"train", "--descriptors", ws.desc, "--data", ws.train_csv, "--output",
                     model_path, "-k", "2", "--lambda", "0.1"},
                    &out) == 0);
    CHECK(out.find("residual") != std::string::npos);

    // reload and compare against in-process predictions
    const DescriptorTable t = load_descriptors(kDescText);
    const TrainedModel model = read_model_json(read_file(model_path), t);
    CHECK(model.normalized);

    const std::string pred_path = ws.dir.file("pred.csv");
    REQUIRE(run_cli({"predict", "--descriptors", ws.desc, "--model", model_path, "--data",
                     ws.train_csv, "--output", pred_path}) == 0);
    const std::string pred_text = read_file(pred_path);
    std::istringstream lines(pred_text);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "sequence,prediction");
    int rows = 0;
    while (std::getline(lines, line)) {
        const auto comma = line.find(',');
        const Sequence x = encode(line.substr(0, comma), t);
        const double want = predict(model, x, t);
        CHECK(std::stod(line.substr(comma + 1)) == want);
        ++rows;
    }
    CHECK(rows == 6);

    // predict without --output goes to stdout
    std::string stdout_text;
    REQUIRE(run_cli({"predict", "--descriptors", ws.desc, "--model", model_path, "--data",
                     ws.train_csv},
                    &stdout_text) == 0);
    CHECK(stdout_text == pred_text);

    REQUIRE(run_cli({"verify", "--descriptors", ws.desc, "--model", model_path, "--length", "4",
                     "--top-k", "3"}) == 0);
}

TEST_CASE("input problems exit 2 with located diagnostics") {
    Workspace ws;
    const std::string bad_csv = ws.dir.file("bad.csv");
    write_file(bad_csv, "sequence,activity\nABCA,1.0\nABXA,2.0\n");
    std::string err;
    CHECK(run_cli({"train", "--descriptors", ws.desc, "--data", bad_csv, "--output",
                   ws.dir.file("m.json")},
                  nullptr, &err) == 2);
    CHECK(err.find("line 3") != std::string::npos);
    CHECK(err.find('X') != std::string::npos);

    // duplicated rows make the ridgeless system singular
    const std::string dup_csv = ws.dir.file("dup.csv");
    write_file(dup_csv, "sequence,activity\nABCA,1.0\nABCA,2.0\n");
    err.clear();
    CHECK(run_cli({"train", "--descriptors", ws.desc, "--data", dup_csv, "--output",
                   ws.dir.file("m.json"), "--lambda", "0"},
                  nullptr, &err) == 2);
    CHECK(err.find("lambda") != std::string::npos);

    CHECK(run_cli({"train", "--descriptors", ws.dir.file("missing.txt"), "--data", ws.train_csv,
                   "--output", ws.dir.file("m.json")}) == 2);
    CHECK(run_cli({"train", "--descriptors", ws.desc}) == 2);  // missing required flags
    CHECK(run_cli({"nonsense"}) == 2);
    CHECK(run_cli({}) == 2);
    CHECK(run_cli({"--help"}) == 0);
}

TEST_CASE("design output matches enumeration and reruns byte-identically") {
    Workspace ws;
    const std::string model_path = ws.dir.file("model.json");
    REQUIRE(run_cli({"train", "--descriptors", ws.desc, "--data", ws.train_csv, "--output",
                     model_path, "-k", "2"}) == 0);

    const std::string res1 = ws.dir.file("res1.csv");
    const std::string res2 = ws.dir.file("res2.csv");
    REQUIRE(run_cli({"design", "--descriptors", ws.desc, "--model", model_path, "--length", "4",
                     "--top-k", "5", "--output", res1}) == 0);
    REQUIRE(run_cli({"design", "--descriptors", ws.desc, "--model", model_path, "--length", "4",
                     "--top-k", "5", "--output", res2}) == 0);
    CHECK(read_file(res1) == read_file(res2));

    const DescriptorTable t = load_descriptors(kDescText);
    const TrainedModel model = read_model_json(read_file(model_path), t);
    EnumerationSpec spec{t.size(), 4, {}, 1'000'000};
    const auto want = enum_top_k(model, spec, Objective::h_star, 5, t);

    const std::vector<ResultRow> rows = read_results_csv(read_file(res1));
    REQUIRE(rows.size() == want.size());
    for (std::size_t r = 0; r < rows.size(); ++r) {
        CHECK(rows[r].rank == static_cast<int>(r) + 1);
        CHECK(rows[r].sequence == decode(want[r].first, t));
        CHECK(test::rel_close(rows[r].score, want[r].second, 1e-9));
        CHECK(rows[r].optimal);
    }
}

TEST_CASE("budget-truncated designs exit 3 but still write results") {
    Workspace ws;
    const std::string model_path = ws.dir.file("model.json");
    REQUIRE(run_cli({"train", "--descriptors", ws.desc, "--data", ws.train_csv, "--output",
                     model_path, "-k", "2"}) == 0);
    const std::string res = ws.dir.file("res.csv");
    CHECK(run_cli({"design", "--descriptors", ws.desc, "--model", model_path, "--length", "5",
                   "--top-k", "2", "--budget-nodes", "1", "--output", res}) == 3);
    const std::vector<ResultRow> rows = read_results_csv(read_file(res));
    REQUIRE(!rows.empty());
    for (const ResultRow& row : rows) CHECK(!row.optimal);

    // zero budget: the file exists with a header and no rows
    CHECK(run_cli({"design", "--descriptors", ws.desc, "--model", model_path, "--length", "5",
                   "--budget-nodes", "0", "--output", res}) == 3);
    CHECK(read_results_csv(read_file(res)).empty());
}

TEST_CASE("unnormalized models design through the table argmax") {
    Workspace ws;
    const std::string model_path = ws.dir.file("model_u.json");
    REQUIRE(run_cli({"train", "--descriptors", ws.desc, "--data", ws.train_csv, "--output",
                     model_path, "-k", "2", "--unnormalized"}) == 0);
    const std::string res = ws.dir.file("res_u.csv");
    REQUIRE(run_cli({"design", "--descriptors", ws.desc, "--model", model_path, "--length", "4",
                     "--output", res}) == 0);

    const DescriptorTable t = load_descriptors(kDescText);
    const TrainedModel model = read_model_json(read_file(model_path), t);
    CHECK(!model.normalized);
    EnumerationSpec spec{t.size(), 4, {}, 1'000'000};
    const auto [seq, val] = enum_max_objective(model, spec, Objective::h, t);
    const std::vector<ResultRow> rows = read_results_csv(read_file(res));
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].sequence == decode(seq, t));
    CHECK(test::rel_close(rows[0].score, val, 1e-9));

    REQUIRE(run_cli({"verify", "--descriptors", ws.desc, "--model", model_path, "--length", "4",
                     "--top-k", "2"}) == 0);
}

TEST_CASE("compare reports overlap and rank correlation") {
    Workspace ws;
    const std::string model_path = ws.dir.file("model.json");
    REQUIRE(run_cli({"train", "--descriptors", ws.desc, "--data", ws.train_csv, "--output",
                     model_path, "-k", "2"}) == 0);
    const std::string res = ws.dir.file("res.csv");
    REQUIRE(run_cli({"design", "--descriptors", ws.desc, "--model", model_path, "--length", "4",
                     "--top-k", "4", "--output", res}) == 0);

    std::string out;
    REQUIRE(run_cli({"compare", "--first", res, "--second", res}, &out) == 0);
    CHECK(out.find("overlap 1\n") != std::string::npos);
    CHECK(out.find("rank_pcc 1\n") != std::string::npos);

    const std::string report = ws.dir.file("report.txt");
    REQUIRE(run_cli({"compare", "--first", res, "--second", res, "--output", report}) == 0);
    CHECK(read_file(report) == out);

    const std::string garbage = ws.dir.file("garbage.csv");
    write_file(garbage, "not,a,results,file\n");
    CHECK(run_cli({"compare", "--first", res, "--second", garbage}) == 2);
}

TEST_CASE("a model is refused under a different descriptor table") {
    Workspace ws;
    const std::string model_path = ws.dir.file("model.json");
    REQUIRE(run_cli({"train", "--descriptors", ws.desc, "--data", ws.train_csv, "--output",
                     model_path, "-k", "2"}) == 0);
    const std::string other_desc = ws.dir.file("other.txt");
    write_file(other_desc, "A 0.9 0.1\nB 0.2 0.8\nC 0.5 0.5\nD 0.1 0.1\n");
    std::string err;
    CHECK(run_cli({"predict", "--descriptors", other_desc, "--model", model_path, "--data",
                   ws.train_csv},
                  nullptr, &err) == 2);
    CHECK(err.find("digest") != std::string::npos);
}

TEST_CASE("sigma values accept the inf literal end to end") {
    Workspace ws;
    const std::string model_path = ws.dir.file("model_inf.json");
    REQUIRE(run_cli({"train", "--descriptors", ws.desc, "--data", ws.train_csv, "--output",
                     model_path, "-k", "2", "--sigma-p", "inf", "--sigma-c", "0.8"}) == 0);
    const DescriptorTable t = load_descriptors(kDescText);
    const TrainedModel model = read_model_json(read_file(model_path), t);
    CHECK(std::isinf(model.params.sigma_p));
    REQUIRE(run_cli({"verify", "--descriptors", ws.desc, "--model", model_path, "--length", "3"}) ==
            0);
}

TEST_CASE("cross-validation picks a grid point") {
    Workspace ws;
    std::string out;
    REQUIRE(run_cli({"cv", "--descriptors", ws.desc, "--data", ws.train_csv, "--k-grid", "1,2",
                     "--sigma-p-grid", "0.5,inf", "--sigma-c-grid", "1", "--lambda-grid",
                     "0.01,0.1", "--folds", "3"},
                    &out) == 0);
    CHECK(out.find("best:") != std::string::npos);
    CHECK(out.find("cv_mse=") != std::string::npos);

    CHECK(run_cli({"cv", "--descriptors", ws.desc, "--data", ws.train_csv, "--k-grid", "oops"}) ==
          2);
    CHECK(run_cli({"cv", "--descriptors", ws.desc, "--data", ws.train_csv, "--folds", "40"}) == 2);
}

TEST_CASE("config files mirror the flags") {
    Workspace ws;
    const std::string model_path = ws.dir.file("model.json");
    REQUIRE(run_cli({"train", "--descriptors", ws.desc, "--data", ws.train_csv, "--output",
                     model_path, "-k", "2"}) == 0);

    const std::string flag_res = ws.dir.file("flag_res.csv");
    REQUIRE(run_cli({"design", "--descriptors", ws.desc, "--model", model_path, "--length", "4",
                     "--top-k", "3", "--output", flag_res}) == 0);

    const std::string cfg = ws.dir.file("design.cfg");
    const std::string cfg_res = ws.dir.file("cfg_res.csv");
    write_file(cfg, "[design]\ndescriptors=" + ws.desc + "\nmodel=" + model_path +
                        "\nlength=4\ntop-k=3\noutput=" + cfg_res + "\n");
    REQUIRE(run_cli({"--config", cfg}) == 0);
    CHECK(read_file(cfg_res) == read_file(flag_res));
}
