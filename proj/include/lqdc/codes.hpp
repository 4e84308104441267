#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace lqdc {

// A codeword over the alphabet {0,1}^ell, one symbol per position.
struct Word {
    int ell = 1;
    std::vector<uint32_t> symbols;

    int length() const { return static_cast<int>(symbols.size()); }
    void validate() const;
};

int hamming_distance(const Word& a, const Word& b);

// Deterministic encoder {0,1}^n -> ({0,1}^ell)^m. Messages are packed
// little-endian: bit i of x (1-based) is (x >> (i-1)) & 1.
struct Code {
    int n = 0;
    int m = 0;
    int ell = 1;
    std::function<Word(uint32_t)> encode;

    bool binary() const { return ell == 1; }
};

inline int message_bit(uint32_t x, int i) { return (x >> (i - 1)) & 1; }

// C(x)_j = <j, x> mod 2 over j in {0,1}^n, position j+1 for integer j.
Code hadamard_code(int n);
Word hadamard_encode(int n, uint32_t x);

// Either an explicit set of positions (1-based; symbol xored with 1) or a
// seeded pattern of floor(delta*m) distinct positions.
struct CorruptionSpec {
    double delta = 0.0;
    std::vector<int> positions;
    std::optional<uint64_t> seed;
};

// Pattern positions actually changed by a spec on a word of length m.
std::vector<int> corruption_pattern(const CorruptionSpec& spec, int m);

Word corrupt(const Word& codeword, const CorruptionSpec& spec);

// Replaces each ell-bit symbol by its 2^ell-bit Hadamard encoding: bit S
// of the block for symbol s equals <S, s> mod 2, S = 0..2^ell-1. The bit
// for (position j, subset S) sits at (j-1)*2^ell + S + 1.
Code symbol_binarize(const Code& code);

}  // namespace lqdc
