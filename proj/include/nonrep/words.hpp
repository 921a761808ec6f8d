#ifndef NONREP_WORDS_HPP
#define NONREP_WORDS_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace nonrep {

/// Colour index. Alphabets in this library are small (well below 16).
using Colour = std::uint8_t;

/// A finite sequence of colour indices.
using Word = std::vector<Colour>;

/// Position of a square XX inside a word: w[start, start+half_len) equals
/// w[start+half_len, start+2*half_len).
struct SquareOccurrence {
    std::size_t start = 0;
    std::size_t half_len = 0;

    friend bool operator==(const SquareOccurrence&, const SquareOccurrence&) = default;
};

/// Leftmost square in `w`; among squares with that start, the shortest one.
std::optional<SquareOccurrence> find_square(std::span<const Colour> w);

/// True when the whole of `w` is a square (even, non-empty, halves equal).
bool is_square(std::span<const Colour> w);

inline bool is_square_free(std::span<const Colour> w) { return !find_square(w).has_value(); }

/// True when every symbol is below `alphabet_size`.
bool within_alphabet(std::span<const Colour> w, unsigned alphabet_size);

/// Prefix of length n of the fixed point of 0 -> 012, 1 -> 02, 2 -> 1.
/// The fixed point 012021012102012... is square-free over {0,1,2}.
Word thue_word(std::size_t n);

}  // namespace nonrep

#endif
