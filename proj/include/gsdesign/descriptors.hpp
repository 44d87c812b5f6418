#ifndef GSDESIGN_DESCRIPTORS_HPP
#define GSDESIGN_DESCRIPTORS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace gsdesign {

// Alphabet plus per-symbol physicochemical property vectors, with the
// pairwise squared-distance tables every kernel evaluation reads.
// Immutable after construction; safe to share across threads.
struct DescriptorTable {
    std::string symbols;               // ordered alphabet, one char per symbol
    int dim = 0;                       // properties per symbol
    std::vector<double> vectors;       // row-major |symbols| x dim
    std::vector<double> sq_dist;       // |symbols|^2, squared Euclidean
    double max_sq_dist = 0.0;          // max over all symbol pairs
    std::vector<double> max_sq_dist_to;  // per symbol a': max_a sq_dist(a,a')
    std::array<int, 256> index_of{};   // char -> symbol index, -1 if unknown

    int size() const { return static_cast<int>(symbols.size()); }
    double sq(int a, int b) const { return sq_dist[static_cast<std::size_t>(a) * symbols.size() + b]; }
    const double* vec(int a) const { return &vectors[static_cast<std::size_t>(a) * dim]; }

    // FNV-1a over a canonical text form of the table; persisted in model
    // files so a model is never evaluated under a different encoding.
    std::string digest() const;
};

// A string encoded as alphabet indices.
struct Sequence {
    std::vector<std::uint8_t> chars;

    Sequence() = default;
    explicit Sequence(std::vector<std::uint8_t> c) : chars(std::move(c)) {}

    int size() const { return static_cast<int>(chars.size()); }
    bool empty() const { return chars.empty(); }
    std::uint8_t operator[](int i) const { return chars[i]; }

    auto operator<=>(const Sequence&) const = default;
};

// Parses a descriptor file: one row per symbol, symbol first, then d numeric
// columns, whitespace separated; '#' starts a comment. Row order defines the
// symbol indices. With standardize, each property column is shifted/scaled
// to zero mean and unit variance before distances are computed (a constant
// column becomes all zero).
DescriptorTable load_descriptors(std::string_view text, bool standardize = false);

// Assembles a table from already-parsed rows; same validation as above.
DescriptorTable make_descriptor_table(const std::string& symbols,
                                      int dim,
                                      std::vector<double> vectors,
                                      bool standardize = false);

// Built-in 4-symbol, d = 2 table used by tests and smoke runs.
const DescriptorTable& toy_table();

Sequence encode(std::string_view raw, const DescriptorTable& table);
std::string decode(const Sequence& seq, const DescriptorTable& table);

}  // namespace gsdesign

#endif
