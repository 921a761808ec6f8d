#include "nonrep/words.hpp"

#include <algorithm>

namespace nonrep {

std::optional<SquareOccurrence> find_square(std::span<const Colour> w) {
    const std::size_t n = w.size();
    std::optional<SquareOccurrence> best;
    // For each half length, scan for the first run of half_len positions with
    // w[i] == w[i + half_len]. Half lengths ascend, so a later hit only wins
    // with a strictly smaller start.
    for (std::size_t half = 1; 2 * half <= n; ++half) {
        const std::size_t last_start = n - 2 * half;
        const std::size_t limit = best ? std::min(best->start, last_start + 1) : last_start + 1;
        std::size_t run = 0;
        for (std::size_t i = 0; i < limit + half - 1 && i + half < n; ++i) {
            run = (w[i] == w[i + half]) ? run + 1 : 0;
            if (run == half) {
                const std::size_t start = i + 1 - half;
                if (start < limit) best = SquareOccurrence{start, half};
                break;
            }
        }
    }
    return best;
}

bool is_square(std::span<const Colour> w) {
    const std::size_t n = w.size();
    if (n == 0 || n % 2 != 0) return false;
    const std::size_t half = n / 2;
    return std::equal(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(half),
                      w.begin() + static_cast<std::ptrdiff_t>(half));
}

bool within_alphabet(std::span<const Colour> w, unsigned alphabet_size) {
    return std::all_of(w.begin(), w.end(), [&](Colour c) { return c < alphabet_size; });
}

Word thue_word(std::size_t n) {
    Word w{0};
    w.reserve(n + 3);
    // The morphism is prolongable on 0, so expanding in place from the left
    // reproduces the fixed point.
    for (std::size_t i = 0; w.size() < n; ++i) {
        switch (w[i]) {
            case 0: if (i > 0) w.push_back(0); w.push_back(1); w.push_back(2); break;
            case 1: w.push_back(0); w.push_back(2); break;
            default: w.push_back(1); break;
        }
    }
    w.resize(n);
    return w;
}

}  // namespace nonrep
