#include "lqdc/cdec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace lqdc {

void SymbolFn::validate() const {
    if (ell < 1 || ell > kMaxSymbolEll)
        throw std::invalid_argument("symbol function: ell outside [1,3]");
}

SymbolFn SymbolFn::xor2() {
    // f(a,b) = a xor b on single bits: indices 01 and 10 set.
    return SymbolFn{1, 0b0110};
}

SymbolFn SymbolFn::constant(int ell, int bit) {
    SymbolFn f{ell, 0};
    f.validate();
    if (bit) f.table = (f.table_bits() == 64) ? ~0ULL : ((1ULL << f.table_bits()) - 1);
    return f;
}

SymbolFn SymbolFn::from_values(int ell, const std::vector<int>& values) {
    SymbolFn f{ell, 0};
    f.validate();
    if (static_cast<int>(values.size()) != f.table_bits())
        throw std::invalid_argument("symbol function: truth table size mismatch");
    for (size_t t = 0; t < values.size(); ++t)
        if (values[t]) f.table |= 1ULL << t;
    return f;
}

void TwoQueryDecoder::validate() const {
    if (n < 1 || m < 1) throw std::invalid_argument("decoder: empty shape");
    if (static_cast<int>(plans.size()) != n)
        throw std::invalid_argument("decoder: plan list does not cover all targets");
    for (const auto& per_i : plans) {
        Rat total = 0;
        for (const auto& p : per_i) {
            if (p.weight < 0) throw std::invalid_argument("decoder: negative plan weight");
            if (p.j < 0 || p.j > m || p.k < 0 || p.k > m)
                throw std::invalid_argument("decoder: query position out of range");
            if (p.f.ell != ell) throw std::invalid_argument("decoder: plan alphabet mismatch");
            total += p.weight;
        }
        if (total != 1) throw std::invalid_argument("decoder: plan weights do not sum to 1");
    }
}

const std::vector<QueryPlan>& TwoQueryDecoder::plans_for(int i) const {
    if (i < 1 || i > n) throw std::invalid_argument("decoder: target out of range");
    return plans[i - 1];
}

TwoQueryDecoder hadamard_decoder(int n) {
    if (n < 1 || n > 20) throw std::invalid_argument("hadamard decoder: n out of range");
    TwoQueryDecoder dec;
    dec.n = n;
    dec.m = 1 << n;
    dec.ell = 1;
    const Rat w = Rat(1, dec.m);
    dec.plans.resize(n);
    for (int i = 1; i <= n; ++i) {
        const uint32_t e_i = 1u << (i - 1);
        for (uint32_t j = 0; j < static_cast<uint32_t>(dec.m); ++j)
            dec.plans[i - 1].push_back(
                QueryPlan{w, static_cast<int>(j) + 1, static_cast<int>(j ^ e_i) + 1,
                          SymbolFn::xor2()});
    }
    return dec;
}

namespace {

uint32_t read_symbol(const Word& y, int pos) {
    if (pos == 0) return 0;  // skipped query, fixed substitute
    if (pos < 1 || pos > y.length())
        throw std::invalid_argument("decoder: query position out of word range");
    return y.symbols[pos - 1];
}

}  // namespace

Rat evaluate_decoder(const TwoQueryDecoder& dec, const Word& y, uint32_t x, int i) {
    if (y.ell != dec.ell) throw std::invalid_argument("evaluate: alphabet mismatch");
    const int xi = message_bit(x, i);
    Rat success = 0;
    for (const auto& p : dec.plans_for(i)) {
        const int o = p.f.eval(read_symbol(y, p.j), read_symbol(y, p.k));
        if (o == xi) success += p.weight;
    }
    return success;
}

namespace {

// Enumerates all subsets of {1..m} with at most `budget` elements,
// invoking fn on each pattern (as sorted positions).
template <typename Fn>
void for_each_pattern(int m, int budget, Fn&& fn) {
    std::vector<int> pattern;
    auto rec = [&](auto&& self, int next) -> void {
        fn(pattern);
        if (static_cast<int>(pattern.size()) == budget) return;
        for (int p = next; p <= m; ++p) {
            pattern.push_back(p);
            self(self, p + 1);
            pattern.pop_back();
        }
    };
    rec(rec, 1);
}

}  // namespace

Rat certify_min_success(const TwoQueryDecoder& dec, const Code& code, double delta) {
    if (!code.binary() || dec.ell != 1)
        throw std::invalid_argument("certify: exhaustive check is for binary codes");
    if (code.n > kMaxEnumN) throw std::invalid_argument("certify: n exceeds enumeration cap");
    const int budget = static_cast<int>(std::floor(delta * code.m));
    bool first = true;
    Rat min_success = 0;
    for (uint32_t x = 0; x < (1u << code.n); ++x) {
        const Word cw = code.encode(x);
        for (int i = 1; i <= code.n; ++i) {
            for_each_pattern(code.m, budget, [&](const std::vector<int>& pattern) {
                Word y = cw;
                for (int p : pattern) y.symbols[p - 1] ^= 1u;
                const Rat s = evaluate_decoder(dec, y, x, i);
                if (first || s < min_success) {
                    min_success = s;
                    first = false;
                }
            });
        }
    }
    return min_success;
}

void AdaptiveTwoQueryDecoder::validate() const {
    if (static_cast<int>(plans.size()) != n)
        throw std::invalid_argument("adaptive decoder: plan list does not cover all targets");
    for (const auto& per_i : plans) {
        Rat total = 0;
        for (const auto& p : per_i) {
            if (p.weight < 0) throw std::invalid_argument("adaptive decoder: negative weight");
            if (p.q1 < 1 || p.q1 > m || p.q2[0] < 1 || p.q2[0] > m || p.q2[1] < 1 ||
                p.q2[1] > m)
                throw std::invalid_argument("adaptive decoder: query out of range");
            total += p.weight;
        }
        if (total != 1)
            throw std::invalid_argument("adaptive decoder: weights do not sum to 1");
    }
}

Rat evaluate_adaptive(const AdaptiveTwoQueryDecoder& dec, const Word& y, uint32_t x, int i) {
    if (y.ell != 1) throw std::invalid_argument("adaptive decoder: binary words only");
    const int xi = message_bit(x, i);
    Rat success = 0;
    for (const auto& p : dec.plans.at(i - 1)) {
        const int v = static_cast<int>(y.symbols[p.q1 - 1]);
        const int w = static_cast<int>(y.symbols[p.q2[v] - 1]);
        if (p.out[v][w] == xi) success += p.weight;
    }
    return success;
}

TwoQueryDecoder adaptive_to_nonadaptive(const AdaptiveTwoQueryDecoder& dec) {
    dec.validate();
    TwoQueryDecoder out;
    out.n = dec.n;
    out.m = dec.m;
    out.ell = 1;
    out.plans.resize(dec.n);
    for (int i = 1; i <= dec.n; ++i) {
        for (const auto& p : dec.plans[i - 1]) {
            for (int guess = 0; guess <= 1; ++guess) {
                // Answers (v, w) with v the answer of q1. The guessed branch
                // matches when v == guess; otherwise a fair coin, split into
                // constant-0 and constant-1 halves.
                for (int coin = 0; coin <= 1; ++coin) {
                    SymbolFn f{1, 0};
                    std::vector<int> values(4, 0);
                    for (int v = 0; v <= 1; ++v)
                        for (int w = 0; w <= 1; ++w)
                            values[(v << 1) | w] = (v == guess) ? p.out[v][w] : coin;
                    f = SymbolFn::from_values(1, values);
                    out.plans[i - 1].push_back(QueryPlan{p.weight / 4, p.q1, p.q2[guess], f});
                }
            }
        }
    }
    out.validate();
    return out;
}

SmoothReport audit_smoothness(const TwoQueryDecoder& dec) {
    dec.validate();
    SmoothReport rep;
    rep.m = dec.m;
    rep.query_probability.assign(dec.n, std::vector<Rat>(dec.m, Rat(0)));
    rep.c = 0;
    for (int i = 1; i <= dec.n; ++i) {
        for (const auto& p : dec.plans[i - 1]) {
            if (p.j >= 1) rep.query_probability[i - 1][p.j - 1] += p.weight;
            if (p.k >= 1 && p.k != p.j) rep.query_probability[i - 1][p.k - 1] += p.weight;
        }
        for (int j = 1; j <= dec.m; ++j) {
            const Rat scaled = rep.query_probability[i - 1][j - 1] * dec.m;
            if (scaled > rep.c) {
                rep.c = scaled;
                rep.argmax_i = i;
                rep.argmax_j = j;
            }
        }
    }
    return rep;
}

TwoQueryDecoder kt_smooth(const TwoQueryDecoder& dec, const Rat& delta, int q) {
    if (delta <= 0 || delta >= 1) throw std::invalid_argument("smoothing: delta outside (0,1)");
    const SmoothReport rep = audit_smoothness(dec);
    const Rat threshold = Rat(q) / (delta * dec.m);
    const auto budget = static_cast<int64_t>(rat_double(delta * dec.m));
    TwoQueryDecoder out = dec;
    for (int i = 1; i <= dec.n; ++i) {
        std::vector<bool> heavy(dec.m + 1, false);
        int64_t heavy_count = 0;
        for (int j = 1; j <= dec.m; ++j) {
            if (rep.query_probability[i - 1][j - 1] > threshold) {
                heavy[j] = true;
                ++heavy_count;
            }
        }
        if (heavy_count > budget)
            throw std::invalid_argument(
                "smoothing: heavy set exceeds floor(delta*m); input is not a (q,delta,eps) "
                "decoder");
        for (auto& p : out.plans[i - 1]) {
            if (p.j >= 1 && heavy[p.j]) p.j = 0;
            if (p.k >= 1 && heavy[p.k]) p.k = 0;
        }
    }
    out.validate();
    return out;
}

FourierSelection fourier_select(const SymbolFn& f, const Code& code, int j, int k, int i) {
    f.validate();
    if (code.ell != f.ell) throw std::invalid_argument("fourier: alphabet mismatch");
    if (code.n > kMaxEnumN) throw std::invalid_argument("fourier: n exceeds enumeration cap");
    const int nsub = 1 << code.ell;
    const int total = 1 << code.n;

    FourierSelection sel;
    // Signed counts of chi_S(a) chi_T(b) (-1)^{x_i} over all x.
    std::vector<std::vector<int64_t>> corr(nsub, std::vector<int64_t>(nsub, 0));
    int64_t agree = 0;  // of (-1)^{f(a,b)} (-1)^{x_i}
    for (uint32_t x = 0; x < static_cast<uint32_t>(total); ++x) {
        const Word cw = code.encode(x);
        const uint32_t a = j ? cw.symbols.at(j - 1) : 0;
        const uint32_t b = k ? cw.symbols.at(k - 1) : 0;
        const int sx = message_bit(x, i) ? -1 : 1;
        agree += (f.eval(a, b) ? -1 : 1) * sx;
        for (int S = 0; S < nsub; ++S) {
            const int chi_s = (std::popcount(static_cast<uint32_t>(S) & a) & 1) ? -1 : 1;
            for (int T = 0; T < nsub; ++T) {
                const int chi_t = (std::popcount(static_cast<uint32_t>(T) & b) & 1) ? -1 : 1;
                corr[S][T] += chi_s * chi_t * sx;
            }
        }
    }
    const Rat adv = Rat(agree, 2 * static_cast<int64_t>(total));
    sel.eta = adv > 0 ? adv : Rat(0);

    int64_t best = -1;
    for (int S = 0; S < nsub; ++S)
        for (int T = 0; T < nsub; ++T)
            if (std::abs(corr[S][T]) > best) {
                best = std::abs(corr[S][T]);
                sel.s0 = S;
                sel.t0 = T;
            }
    const int64_t c0 = corr[sel.s0][sel.t0];
    sel.sign = c0 < 0 ? -1 : 1;
    sel.correlation = Rat(c0, total);

    // Fourier coefficients of (-1)^f over uniform (a, b).
    sel.coefficients.assign(nsub, std::vector<Rat>(nsub, Rat(0)));
    for (int S = 0; S < nsub; ++S)
        for (int T = 0; T < nsub; ++T) {
            int64_t acc = 0;
            for (uint32_t a = 0; a < static_cast<uint32_t>(nsub); ++a)
                for (uint32_t b = 0; b < static_cast<uint32_t>(nsub); ++b) {
                    const int chi = ((std::popcount(static_cast<uint32_t>(S) & a) +
                                      std::popcount(static_cast<uint32_t>(T) & b)) &
                                     1)
                                        ? -1
                                        : 1;
                    acc += (f.eval(a, b) ? -1 : 1) * chi;
                }
            sel.coefficients[S][T] = Rat(acc, static_cast<int64_t>(nsub) * nsub);
        }
    return sel;
}

BinarizeResult trevisan_binarize(const TwoQueryDecoder& dec, const Code& code,
                                 const Rat& eps_declared) {
    dec.validate();
    if (dec.ell != code.ell || dec.m != code.m)
        throw std::invalid_argument("binarize: decoder/code shape mismatch");
    if (code.n > kMaxEnumN) throw std::invalid_argument("binarize: n exceeds enumeration cap");

    // Premise audit: worst-case success on uncorrupted codewords.
    {
        bool first = true;
        Rat worst = 0;
        for (uint32_t x = 0; x < (1u << code.n); ++x) {
            const Word cw = code.encode(x);
            for (int i = 1; i <= code.n; ++i) {
                const Rat s = evaluate_decoder(dec, cw, x, i);
                if (first || s < worst) {
                    worst = s;
                    first = false;
                }
            }
        }
        if (worst < Rat(1, 2) + eps_declared)
            throw std::invalid_argument("binarize: decoder misses the declared advantage");
    }

    BinarizeResult res;
    res.binary_code = symbol_binarize(code);
    const int block = 1 << code.ell;

    TwoQueryDecoder out;
    out.n = dec.n;
    out.m = res.binary_code.m;
    out.ell = 1;
    out.plans.resize(dec.n);
    res.per_plan.resize(dec.n);
    res.average_success.assign(dec.n, Rat(0));

    for (int i = 1; i <= dec.n; ++i) {
        for (const auto& p : dec.plans[i - 1]) {
            BinarizePlanReport rep;
            // Signed per-plan advantage over uniform x; substituted queries
            // read the fixed symbol 0.
            int64_t agree = 0;
            for (uint32_t x = 0; x < (1u << code.n); ++x) {
                const Word cw = code.encode(x);
                const uint32_t a = p.j ? cw.symbols[p.j - 1] : 0;
                const uint32_t b = p.k ? cw.symbols[p.k - 1] : 0;
                const int sx = message_bit(x, i) ? -1 : 1;
                agree += (p.f.eval(a, b) ? -1 : 1) * sx;
            }
            rep.old_advantage = Rat(agree, 2 * (1LL << code.n));

            if (rep.old_advantage <= 0) {
                // Fair coin, materialized as constant halves.
                rep.coin = true;
                rep.new_advantage = 0;
                out.plans[i - 1].push_back(
                    QueryPlan{p.weight / 2, 0, 0, SymbolFn::constant(1, 0)});
                out.plans[i - 1].push_back(
                    QueryPlan{p.weight / 2, 0, 0, SymbolFn::constant(1, 1)});
            } else {
                const FourierSelection sel = fourier_select(p.f, code, p.j, p.k, i);
                // A substituted symbol stays substituted: its Hadamard bit
                // S.0 = 0 equals the value a skipped query reads.
                const int jbit = p.j ? (p.j - 1) * block + static_cast<int>(sel.s0) + 1 : 0;
                const int kbit = p.k ? (p.k - 1) * block + static_cast<int>(sel.t0) + 1 : 0;
                // XOR of the two Hadamard bits, negated when the selected
                // correlation is negative.
                SymbolFn f = SymbolFn::xor2();
                if (sel.sign < 0) f.table ^= 0b1111;
                out.plans[i - 1].push_back(QueryPlan{p.weight, jbit, kbit, f});
                rep.new_advantage =
                    sel.sign < 0 ? Rat(-sel.correlation / 2) : Rat(sel.correlation / 2);
            }
            res.per_plan[i - 1].push_back(rep);
        }
    }
    out.validate();
    res.decoder = out;

    for (int i = 1; i <= dec.n; ++i) {
        Rat total = 0;
        for (uint32_t x = 0; x < (1u << code.n); ++x)
            total += evaluate_decoder(res.decoder, res.binary_code.encode(x), x, i);
        res.average_success[i - 1] = total / (1 << code.n);
    }
    return res;
}

}  // namespace lqdc
