#include <doctest.h>

#include "nonrep/words.hpp"
#include "oracles.hpp"

using namespace nonrep;

TEST_CASE("find_square reports the leftmost shortest square") {
    CHECK(find_square(Word{0, 1, 0, 1}) == SquareOccurrence{0, 2});
    CHECK_FALSE(find_square(Word{0, 1, 2}).has_value());
    CHECK_FALSE(find_square(Word{}).has_value());
    CHECK(find_square(Word{3, 3}) == SquareOccurrence{0, 1});
    // 1212 starts at 1; 2121 at 2 is further right.
    CHECK(find_square(Word{0, 1, 2, 1, 2, 1}) == SquareOccurrence{1, 2});
    // Two squares from the same start: the shorter wins.
    CHECK(find_square(Word{0, 0, 1, 0, 0, 1}) == SquareOccurrence{0, 1});
}

TEST_CASE("every binary word of length four contains a square") {
    for (unsigned mask = 0; mask < 16; ++mask) {
        Word w{static_cast<Colour>(mask & 1), static_cast<Colour>(mask >> 1 & 1), static_cast<Colour>(mask >> 2 & 1),
               static_cast<Colour>(mask >> 3 & 1)};
        CAPTURE(mask);
        CHECK(find_square(w).has_value());
    }
}

TEST_CASE("find_square agrees with the brute-force scan on random words") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 5000; ++t) {
        const unsigned alphabet = 1 + t % 4;
        const Word w = oracle::random_word(rng() % 31, alphabet, rng);
        const auto got = find_square(w);
        CAPTURE(w);
        CHECK(got == oracle::square(w));
        if (got) {
            CHECK(std::equal(w.begin() + got->start, w.begin() + got->start + got->half_len,
                             w.begin() + got->start + got->half_len));
        }
    }
}

TEST_CASE("is_square and within_alphabet") {
    CHECK(is_square(Word{2, 0, 2, 0}));
    CHECK_FALSE(is_square(Word{2, 0, 2}));
    CHECK_FALSE(is_square(Word{}));
    CHECK_FALSE(is_square(Word{0, 1, 1, 0}));
    CHECK(within_alphabet(Word{0, 2, 1}, 3));
    CHECK_FALSE(within_alphabet(Word{0, 3}, 3));
}

TEST_CASE("thue_word") {
    CHECK(thue_word(0).empty());
    CHECK(thue_word(12) == Word{0, 1, 2, 0, 2, 1, 0, 1, 2, 1, 0, 2});
    const Word w4 = thue_word(4);
    CHECK(w4.size() == 4);
    CHECK_FALSE(oracle::has_square(w4));

    const Word w = thue_word(10000);
    CHECK(w.size() == 10000);
    CHECK(within_alphabet(w, 3));
    CHECK_FALSE(find_square(w).has_value());
    for (std::size_t n : {1u, 2u, 5u, 37u, 500u}) {
        CHECK(Word(w.begin(), w.begin() + n) == thue_word(n));
        CHECK_FALSE(oracle::has_square(thue_word(n)));
    }
}
