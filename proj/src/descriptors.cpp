#include "gsdesign/descriptors.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "gsdesign/errors.hpp"

namespace gsdesign {

namespace {

void compute_distance_tables(DescriptorTable& t) {
    const int n = t.size();
    const int d = t.dim;
    t.sq_dist.assign(static_cast<std::size_t>(n) * n, 0.0);
    for (int a = 0; a < n; ++a) {
        for (int b = a + 1; b < n; ++b) {
            double s = 0.0;
            for (int q = 0; q < d; ++q) {
                const double diff = t.vec(a)[q] - t.vec(b)[q];
                s += diff * diff;
            }
            t.sq_dist[static_cast<std::size_t>(a) * n + b] = s;
            t.sq_dist[static_cast<std::size_t>(b) * n + a] = s;
        }
    }
    t.max_sq_dist_to.assign(n, 0.0);
    t.max_sq_dist = 0.0;
    for (int b = 0; b < n; ++b) {
        double m = 0.0;
        for (int a = 0; a < n; ++a) m = std::max(m, t.sq(a, b));
        t.max_sq_dist_to[b] = m;
        t.max_sq_dist = std::max(t.max_sq_dist, m);
    }
}

void standardize_columns(std::vector<double>& vectors, int n, int d) {
    for (int q = 0; q < d; ++q) {
        double mean = 0.0;
        for (int a = 0; a < n; ++a) mean += vectors[static_cast<std::size_t>(a) * d + q];
        mean /= n;
        double var = 0.0;
        for (int a = 0; a < n; ++a) {
            const double c = vectors[static_cast<std::size_t>(a) * d + q] - mean;
            var += c * c;
        }
        var /= n;
        const double scale = var > 0.0 ? 1.0 / std::sqrt(var) : 0.0;
        for (int a = 0; a < n; ++a) {
            auto& v = vectors[static_cast<std::size_t>(a) * d + q];
            v = (v - mean) * scale;
        }
    }
}

}  // namespace

DescriptorTable make_descriptor_table(const std::string& symbols,
                                      int dim,
                                      std::vector<double> vectors,
                                      bool standardize) {
    const int n = static_cast<int>(symbols.size());
    if (n < 2) throw FormatError("descriptor table needs at least 2 symbols, got " + std::to_string(n));
    if (dim < 1) throw FormatError("descriptor table needs at least 1 property column");
    if (vectors.size() != static_cast<std::size_t>(n) * dim)
        throw FormatError("descriptor table has inconsistent dimensions");

    DescriptorTable t;
    t.symbols = symbols;
    t.dim = dim;
    t.vectors = std::move(vectors);
    if (standardize) standardize_columns(t.vectors, n, dim);

    t.index_of.fill(-1);
    for (int a = 0; a < n; ++a) {
        const auto c = static_cast<unsigned char>(symbols[a]);
        if (t.index_of[c] >= 0)
            throw FormatError(std::string("duplicate symbol '") + symbols[a] + "' in descriptor table");
        t.index_of[c] = a;
    }
    compute_distance_tables(t);
    return t;
}

DescriptorTable load_descriptors(std::string_view text, bool standardize) {
    if (text.empty()) throw FormatError("descriptor file is empty");

    std::string symbols;
    std::vector<double> vectors;
    int dim = -1;

    std::istringstream lines{std::string(text)};
    std::string line;
    int lineno = 0;
    while (std::getline(lines, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream row(line);
        std::string symbol;
        if (!(row >> symbol)) continue;  // blank or comment-only line
        if (symbol.size() != 1)
            throw FormatError("line " + std::to_string(lineno) + ": symbol must be a single character, got '" +
                              symbol + "'");
        std::vector<double> vals;
        std::string tok;
        while (row >> tok) {
            std::size_t used = 0;
            double v = 0.0;
            try {
                v = std::stod(tok, &used);
            } catch (const std::exception&) {
                used = 0;
            }
            if (used != tok.size())
                throw FormatError("line " + std::to_string(lineno) + ": non-numeric column '" + tok + "'");
            vals.push_back(v);
        }
        if (vals.empty())
            throw FormatError("line " + std::to_string(lineno) + ": no property columns for symbol '" + symbol +
                              "'");
        if (dim < 0) {
            dim = static_cast<int>(vals.size());
        } else if (static_cast<int>(vals.size()) != dim) {
            throw FormatError("line " + std::to_string(lineno) + ": expected " + std::to_string(dim) +
                              " columns, got " + std::to_string(vals.size()));
        }
        symbols += symbol[0];
        vectors.insert(vectors.end(), vals.begin(), vals.end());
    }
    if (symbols.empty()) throw FormatError("descriptor file has no data rows");
    return make_descriptor_table(symbols, dim, std::move(vectors), standardize);
}

const DescriptorTable& toy_table() {
    static const DescriptorTable t = make_descriptor_table(
        "ABCD", 2,
        {
            0.0, 0.0,  // A
            1.0, 0.0,  // B
            0.0, 2.0,  // C
            1.5, 1.0,  // D
        });
    return t;
}

std::string DescriptorTable::digest() const {
    std::string canon;
    char buf[64];
    for (int a = 0; a < size(); ++a) {
        canon += symbols[a];
        for (int q = 0; q < dim; ++q) {
            std::snprintf(buf, sizeof buf, "\t%.17g", vec(a)[q]);
            canon += buf;
        }
        canon += '\n';
    }
    std::uint64_t h = 1469598103934665603ull;
    for (const char c : canon) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

Sequence encode(std::string_view raw, const DescriptorTable& table) {
    Sequence seq;
    seq.chars.reserve(raw.size());
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const int idx = table.index_of[static_cast<unsigned char>(raw[i])];
        if (idx < 0)
            throw EncodingError(std::string("unknown character '") + raw[i] + "' at position " +
                                std::to_string(i + 1));
        seq.chars.push_back(static_cast<std::uint8_t>(idx));
    }
    return seq;
}

std::string decode(const Sequence& seq, const DescriptorTable& table) {
    std::string out;
    out.reserve(seq.chars.size());
    for (const auto idx : seq.chars) out += table.symbols[idx];
    return out;
}

}  // namespace gsdesign
