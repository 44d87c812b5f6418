#include <doctest.h>

#include "gsdesign/descriptors.hpp"
#include "gsdesign/errors.hpp"

using namespace gsdesign;

TEST_CASE("descriptor file parsing") {
    const char* text =
        "# amino acid properties\n"
        "A 0.5 1.0   # alanine-ish\n"
        "\n"
        "B -0.25 0.0\n"
        "C 1.5 2.0\n";
    const DescriptorTable t = load_descriptors(text);
    CHECK(t.symbols == "ABC");
    CHECK(t.dim == 2);
    CHECK(t.vec(1)[0] == -0.25);
    CHECK(t.vec(2)[1] == 2.0);
    CHECK(t.index_of['B'] == 1);
    CHECK(t.index_of['Z'] == -1);

    // d(A,B)^2 = 0.75^2 + 1 = 1.5625, d(A,C)^2 = 1 + 1 = 2, d(B,C)^2 = 3.0625 + 4
    CHECK(t.sq(0, 1) == doctest::Approx(1.5625).epsilon(1e-15));
    CHECK(t.sq(0, 2) == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(t.sq(1, 2) == doctest::Approx(7.0625).epsilon(1e-15));
    CHECK(t.sq(2, 2) == 0.0);
    CHECK(t.max_sq_dist == doctest::Approx(7.0625));
    CHECK(t.max_sq_dist_to[0] == doctest::Approx(2.0));    // farthest from A is C
    CHECK(t.max_sq_dist_to[1] == doctest::Approx(7.0625)); // farthest from B is C
}

TEST_CASE("descriptor file rejects malformed input") {
    CHECK_THROWS_AS(load_descriptors(""), FormatError);
    CHECK_THROWS_AS(load_descriptors("# only comments\n"), FormatError);
    CHECK_THROWS_AS(load_descriptors("A 1.0\nB\n"), FormatError);        // missing columns
    CHECK_THROWS_AS(load_descriptors("A 1.0\nB 1.0 2.0\n"), FormatError); // ragged columns
    CHECK_THROWS_AS(load_descriptors("A 1.0\nA 2.0\n"), FormatError);     // duplicate symbol
    CHECK_THROWS_AS(load_descriptors("AB 1.0\n"), FormatError);           // multi-char symbol
    CHECK_THROWS_AS(load_descriptors("A 1.0\nB x\n"), FormatError);       // non-numeric
    CHECK_THROWS_AS(load_descriptors("A 1.0\n"), FormatError);            // single symbol
}

TEST_CASE("standardization centers and scales each column") {
    const DescriptorTable t = load_descriptors("A 1 5\nB 3 5\nC 5 5\n", true);
    for (int q = 0; q < t.dim; ++q) {
        double mean = 0.0, var = 0.0;
        for (int a = 0; a < t.size(); ++a) mean += t.vec(a)[q];
        mean /= t.size();
        for (int a = 0; a < t.size(); ++a) {
            const double c = t.vec(a)[q] - mean;
            var += c * c;
        }
        var /= t.size();
        CHECK(std::abs(mean) < 1e-15);
        // the constant second column collapses to zero rather than dividing by 0
        CHECK(var == doctest::Approx(q == 0 ? 1.0 : 0.0).epsilon(1e-12));
    }
}

TEST_CASE("encode and decode round-trip; unknown characters are located") {
    const DescriptorTable& t = toy_table();
    const Sequence s = encode("ABBA", t);
    REQUIRE(s.size() == 4);
    CHECK(s[0] == 0);
    CHECK(s[1] == 1);
    CHECK(decode(s, t) == "ABBA");

    try {
        encode("ABXA", t);
        FAIL("expected EncodingError");
    } catch (const EncodingError& e) {
        const std::string msg = e.what();
        CHECK(msg.find('X') != std::string::npos);
        CHECK(msg.find('3') != std::string::npos);  // 1-based position
    }
}

TEST_CASE("digest changes with content and survives reload") {
    const std::string text = "A 0.5 1.0\nB -0.25 0.0\nC 1.5 2.0\n";
    const DescriptorTable t1 = load_descriptors(text);
    const DescriptorTable t2 = load_descriptors(text);
    CHECK(t1.digest() == t2.digest());
    CHECK(t1.digest().size() == 16);

    const DescriptorTable other = load_descriptors("A 0.5 1.0\nB -0.25 0.0\nC 1.5 2.1\n");
    CHECK(t1.digest() != other.digest());

    // standardization changes the vectors, so it must change the digest too
    const DescriptorTable std1 = load_descriptors(text, true);
    CHECK(t1.digest() != std1.digest());
}
