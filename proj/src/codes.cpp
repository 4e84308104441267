#include "lqdc/codes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <set>
#include <stdexcept>

namespace lqdc {

void Word::validate() const {
    if (ell < 1 || ell > 31) throw std::invalid_argument("word: bad symbol width");
    const uint32_t lim = 1u << ell;
    for (uint32_t s : symbols)
        if (s >= lim) throw std::invalid_argument("word: symbol exceeds alphabet");
}

int hamming_distance(const Word& a, const Word& b) {
    if (a.ell != b.ell || a.length() != b.length())
        throw std::invalid_argument("hamming distance: shape mismatch");
    int d = 0;
    for (int j = 0; j < a.length(); ++j) d += a.symbols[j] != b.symbols[j];
    return d;
}

Word hadamard_encode(int n, uint32_t x) {
    if (n < 1 || n > 20) throw std::invalid_argument("hadamard: n out of range [1,20]");
    Word w;
    w.ell = 1;
    const uint32_t m = 1u << n;
    w.symbols.resize(m);
    for (uint32_t j = 0; j < m; ++j) w.symbols[j] = std::popcount(j & x) & 1u;
    return w;
}

Code hadamard_code(int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("hadamard: n out of range [1,20]");
    Code c;
    c.n = n;
    c.m = 1 << n;
    c.ell = 1;
    c.encode = [n](uint32_t x) { return hadamard_encode(n, x); };
    return c;
}

std::vector<int> corruption_pattern(const CorruptionSpec& spec, int m) {
    if (spec.delta < 0.0 || spec.delta > 1.0)
        throw std::invalid_argument("corruption: delta outside [0,1]");
    const int budget = static_cast<int>(std::floor(spec.delta * m));
    if (spec.seed) {
        std::mt19937_64 rng(*spec.seed);
        std::set<int> chosen;
        std::uniform_int_distribution<int> pick(1, m);
        while (static_cast<int>(chosen.size()) < budget) chosen.insert(pick(rng));
        return {chosen.begin(), chosen.end()};
    }
    std::set<int> uniq(spec.positions.begin(), spec.positions.end());
    if (uniq.size() != spec.positions.size())
        throw std::invalid_argument("corruption: duplicate positions");
    for (int p : uniq)
        if (p < 1 || p > m) throw std::invalid_argument("corruption: position out of range");
    if (static_cast<int>(uniq.size()) > budget)
        throw std::invalid_argument("corruption: pattern exceeds floor(delta*m)");
    return {uniq.begin(), uniq.end()};
}

Word corrupt(const Word& codeword, const CorruptionSpec& spec) {
    codeword.validate();
    const auto pattern = corruption_pattern(spec, codeword.length());
    Word out = codeword;
    if (spec.seed && codeword.ell > 1) {
        // Seeded non-binary corruption draws a uniform different symbol.
        std::mt19937_64 rng(*spec.seed ^ 0x9e3779b97f4a7c15ULL);
        std::uniform_int_distribution<uint32_t> pick(1, (1u << codeword.ell) - 1);
        for (int p : pattern) out.symbols[p - 1] ^= pick(rng);
    } else {
        for (int p : pattern) out.symbols[p - 1] ^= 1u;
    }
    return out;
}

Code symbol_binarize(const Code& code) {
    if (code.ell < 1) throw std::invalid_argument("binarize: bad symbol width");
    Code out;
    out.n = code.n;
    out.ell = 1;
    const int block = 1 << code.ell;
    out.m = code.m * block;
    const auto inner = code.encode;
    out.encode = [inner, block](uint32_t x) {
        const Word sym = inner(x);
        Word w;
        w.ell = 1;
        w.symbols.reserve(static_cast<size_t>(sym.length()) * block);
        for (int j = 0; j < sym.length(); ++j)
            for (int su = 0; su < block; ++su)
                w.symbols.push_back(std::popcount(static_cast<uint32_t>(su) & sym.symbols[j]) &
                                    1u);
        return w;
    };
    return out;
}

}  // namespace lqdc
