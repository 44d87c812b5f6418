#include "gsdesign/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "gsdesign/errors.hpp"

namespace gsdesign {

namespace {

using nlohmann::json;

std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::string cur;
    for (const char c : text) {
        if (c == '\n') {
            if (!cur.empty() && cur.back() == '\r') cur.pop_back();
            lines.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty() && cur.back() == '\r') cur.pop_back();
    if (!cur.empty()) lines.push_back(std::move(cur));
    return lines;
}

std::string line_tag(std::size_t idx) { return "line " + std::to_string(idx + 1) + ": "; }

double parse_double_field(const std::string& token, std::size_t line_idx, const char* what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(token, &used);
        if (used != token.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw FormatError(line_tag(line_idx) + "cannot parse " + what + " '" + token + "'");
    }
}

Sequence encode_at_line(const std::string& raw, const DescriptorTable& table,
                        std::size_t line_idx) {
    try {
        return encode(raw, table);
    } catch (const EncodingError& e) {
        throw EncodingError(line_tag(line_idx) + e.what());
    }
}

json sigma_to_json(double v) {
    if (std::isinf(v)) return json("inf");
    return json(v);
}

double sigma_from_json(const json& j, const char* what) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return std::numeric_limits<double>::infinity();
        throw FormatError(std::string("model: ") + what + " must be a number or \"inf\"");
    }
    if (!j.is_number()) throw FormatError(std::string("model: ") + what + " must be a number");
    return j.get<double>();
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_scalar(const std::string& text, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(text, &used);
        if (used != text.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw FormatError("cannot parse " + what + " '" + text + "' (use a number or \"inf\")");
    }
}

std::string scalar_to_string(double v) {
    if (std::isinf(v)) return "inf";
    return format_double(v);
}

TrainingSet read_dataset(const std::string& text, const DescriptorTable& table) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty() || lines[0] != "sequence,activity")
        throw FormatError("line 1: expected header 'sequence,activity'");
    TrainingSet train;
    for (std::size_t idx = 1; idx < lines.size(); ++idx) {
        const std::string& line = lines[idx];
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos)
            throw FormatError(line_tag(idx) + "expected 'sequence,activity'");
        const std::string raw = line.substr(0, comma);
        if (raw.empty()) throw FormatError(line_tag(idx) + "empty sequence");
        train.sequences.push_back(encode_at_line(raw, table, idx));
        train.activities.push_back(
            parse_double_field(line.substr(comma + 1), idx, "activity"));
    }
    return train;
}

std::vector<Sequence> read_sequences(const std::string& text, const DescriptorTable& table) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty() || (lines[0] != "sequence" && lines[0] != "sequence,activity"))
        throw FormatError("line 1: expected header 'sequence' or 'sequence,activity'");
    std::vector<Sequence> seqs;
    for (std::size_t idx = 1; idx < lines.size(); ++idx) {
        const std::string& line = lines[idx];
        if (line.empty()) continue;
        const std::string raw = line.substr(0, line.find(','));
        if (raw.empty()) throw FormatError(line_tag(idx) + "empty sequence");
        seqs.push_back(encode_at_line(raw, table, idx));
    }
    return seqs;
}

std::string write_model_json(const TrainedModel& model, const DescriptorTable& table) {
    json j;
    j["format_version"] = 1;
    json seqs = json::array();
    for (const Sequence& s : model.sequences) seqs.push_back(decode(s, table));
    j["sequences"] = std::move(seqs);
    j["alpha"] = model.alpha;
    j["beta"] = model.beta;
    j["params"] = {{"k", model.params.k},
                   {"sigma_p", sigma_to_json(model.params.sigma_p)},
                   {"sigma_c", sigma_to_json(model.params.sigma_c)}};
    j["lambda"] = model.lambda;
    j["normalized"] = model.normalized;
    j["descriptor_digest"] = model.descriptor_digest;
    return j.dump(2) + "\n";
}

TrainedModel read_model_json(const std::string& text, const DescriptorTable& table) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw FormatError(std::string("model: invalid JSON: ") + e.what());
    }
    try {
        if (!j.is_object()) throw FormatError("model: top level must be an object");
        if (j.at("format_version").get<int>() != 1)
            throw FormatError("model: unsupported format_version");
        TrainedModel model;
        model.descriptor_digest = j.at("descriptor_digest").get<std::string>();
        if (model.descriptor_digest != table.digest())
            throw FormatError(
                "model: descriptor digest mismatch; the model was trained with a "
                "different descriptor table");
        for (const auto& s : j.at("sequences"))
            model.sequences.push_back(encode(s.get<std::string>(), table));
        model.alpha = j.at("alpha").get<std::vector<double>>();
        model.beta = j.at("beta").get<std::vector<double>>();
        const json& p = j.at("params");
        model.params.k = p.at("k").get<int>();
        model.params.sigma_p = sigma_from_json(p.at("sigma_p"), "sigma_p");
        model.params.sigma_c = sigma_from_json(p.at("sigma_c"), "sigma_c");
        model.lambda = j.at("lambda").get<double>();
        model.normalized = j.at("normalized").get<bool>();
        if (model.alpha.size() != model.sequences.size() ||
            model.beta.size() != model.sequences.size())
            throw FormatError("model: weight counts do not match the sequence count");
        return model;
    } catch (const json::exception& e) {
        throw FormatError(std::string("model: missing or mistyped field: ") + e.what());
    }
}

std::string write_results_csv(const std::vector<ResultRow>& rows) {
    std::string out = "rank,sequence,score,bound,optimal\n";
    for (const ResultRow& r : rows) {
        out += std::to_string(r.rank);
        out += ',';
        out += r.sequence;
        out += ',';
        out += format_double(r.score);
        out += ',';
        out += format_double(r.bound);
        out += ',';
        out += r.optimal ? "true" : "false";
        out += '\n';
    }
    return out;
}

std::vector<ResultRow> read_results_csv(const std::string& text) {
    const std::vector<std::string> lines = split_lines(text);
    if (lines.empty() || lines[0] != "rank,sequence,score,bound,optimal")
        throw FormatError("line 1: expected header 'rank,sequence,score,bound,optimal'");
    std::vector<ResultRow> rows;
    for (std::size_t idx = 1; idx < lines.size(); ++idx) {
        const std::string& line = lines[idx];
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        for (std::size_t pos = 0; pos <= line.size(); ++pos) {
            if (pos == line.size() || line[pos] == ',') {
                fields.push_back(line.substr(start, pos - start));
                start = pos + 1;
            }
        }
        if (fields.size() != 5)
            throw FormatError(line_tag(idx) + "expected 5 comma-separated fields");
        ResultRow r;
        r.rank = static_cast<int>(parse_double_field(fields[0], idx, "rank"));
        r.sequence = fields[1];
        r.score = parse_double_field(fields[2], idx, "score");
        r.bound = parse_double_field(fields[3], idx, "bound");
        if (fields[4] == "true")
            r.optimal = true;
        else if (fields[4] == "false")
            r.optimal = false;
        else
            throw FormatError(line_tag(idx) + "optimal must be 'true' or 'false'");
        rows.push_back(std::move(r));
    }
    return rows;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot read file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ResourceError("cannot write file: " + path);
    out << content;
    if (!out) throw ResourceError("failed while writing file: " + path);
}

}  // namespace gsdesign
