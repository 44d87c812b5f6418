#ifndef GSDESIGN_IO_HPP
#define GSDESIGN_IO_HPP

#include <string>
#include <vector>

#include "gsdesign/regression.hpp"

namespace gsdesign {

// %.17g rendering; round-trips any finite double and never varies between
// runs, which keeps every output file byte-reproducible.
std::string format_double(double v);

// Parses a double, accepting "inf" for the infinite sigma values; the whole
// token must be consumed.
double parse_scalar(const std::string& text, const std::string& what);

// "inf" for infinity, otherwise format_double.
std::string scalar_to_string(double v);

// Dataset CSV with header `sequence,activity`. Diagnostics carry 1-based
// line numbers.
TrainingSet read_dataset(const std::string& text, const DescriptorTable& table);

// Sequence file for scoring: header `sequence` or `sequence,activity`
// (activities ignored when present).
std::vector<Sequence> read_sequences(const std::string& text, const DescriptorTable& table);

// Model persistence: a JSON document with fields sequences, alpha, beta,
// params{k, sigma_p, sigma_c}, lambda, normalized, descriptor_digest and
// format_version. Infinite sigmas are encoded as the string "inf".
std::string write_model_json(const TrainedModel& model, const DescriptorTable& table);

// Rejects unknown format versions and models whose descriptor digest does
// not match the supplied table.
TrainedModel read_model_json(const std::string& text, const DescriptorTable& table);

struct ResultRow {
    int rank = 0;
    std::string sequence;
    double score = 0.0;
    double bound = 0.0;
    bool optimal = false;
};

// Ranked results CSV with header `rank,sequence,score,bound,optimal`.
std::string write_results_csv(const std::vector<ResultRow>& rows);
std::vector<ResultRow> read_results_csv(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace gsdesign

#endif
