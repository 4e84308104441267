#include "lqdc/qdec.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace lqdc {

namespace {

int popcount4(uint64_t table) { return std::popcount(table & 0xFULL); }

// Measurement outcome probabilities for post-oracle signs (s1, s2):
// Pr[b] = (1 + s1*(-1)^{b1} + s2*(-1)^{b2})^2 / 12.
std::array<Rat, 4> gadget_outcome_probs(int s1, int s2) {
    std::array<Rat, 4> probs;
    for (int b = 0; b < 4; ++b) {
        const int sb1 = (b & 2) ? -1 : 1;
        const int sb2 = (b & 1) ? -1 : 1;
        const int ip = 1 + s1 * sb1 + s2 * sb2;
        probs[b] = Rat(static_cast<int64_t>(ip) * ip, 12);
    }
    return probs;
}

}  // namespace

std::array<Rat, 4> gadget_postprocess(const SymbolFn& f) {
    if (f.ell != 1) throw std::invalid_argument("gadget: single-bit functions only");
    const int ones = popcount4(f.table);
    std::array<Rat, 4> w;
    for (int b = 0; b < 4; ++b) {
        const int fb = f.eval((b >> 1) & 1, b & 1);
        switch (ones) {
            case 0:
                w[b] = Rat(3, 14);
                break;
            case 4:
                w[b] = Rat(11, 14);
                break;
            case 1:
                w[b] = fb ? Rat(1) : Rat(1, 7);
                break;
            case 3:
                w[b] = fb ? Rat(6, 7) : Rat(0);
                break;
            default:  // balanced
                w[b] = fb ? Rat(13, 14) : Rat(1, 14);
                break;
        }
    }
    return w;
}

GadgetTrace run_gadget(const SymbolFn& f, int a1, int a2) {
    if ((a1 | a2) & ~1) throw std::invalid_argument("gadget: inputs must be bits");
    GadgetTrace tr;
    tr.input = {a1, a2};
    const int s1 = a1 ? -1 : 1;
    const int s2 = a2 ? -1 : 1;
    tr.post_oracle_signs = {1, s1, s2, 0};
    tr.outcome_prob = gadget_outcome_probs(s1, s2);
    tr.output_one_given_b = gadget_postprocess(f);
    tr.p_one = 0;
    for (int b = 0; b < 4; ++b) tr.p_one += tr.outcome_prob[b] * tr.output_one_given_b[b];
    const int fa = f.eval(a1, a2);
    tr.p_correct = fa ? tr.p_one : Rat(1) - tr.p_one;
    return tr;
}

XorGadgetOutcome xor_gadget(int y_j, int y_k) {
    if ((y_j | y_k) & ~1) throw std::invalid_argument("xor gadget: inputs must be bits");
    // Post-oracle coefficients ((-1)^{y_j}, (-1)^{y_k}) / sqrt2; projections
    // onto (1, +-1)/sqrt2 give (s_j + s_k)^2/4 and (s_j - s_k)^2/4.
    const int sj = y_j ? -1 : 1;
    const int sk = y_k ? -1 : 1;
    const Rat p_plus = Rat(static_cast<int64_t>(sj + sk) * (sj + sk), 4);
    const Rat p_minus = Rat(static_cast<int64_t>(sj - sk) * (sj - sk), 4);
    XorGadgetOutcome out;
    if (p_minus == 1) {
        out.bit = 1;
        out.probability = p_minus;
    } else if (p_plus == 1) {
        out.bit = 0;
        out.probability = p_plus;
    } else {
        throw std::logic_error("xor gadget: outcome not deterministic");
    }
    return out;
}

void OneQueryQuantumDecoder::validate() const {
    if (n < 1 || m < 1) throw std::invalid_argument("quantum decoder: empty shape");
    if (static_cast<int>(plans.size()) != n)
        throw std::invalid_argument("quantum decoder: plan list does not cover all targets");
    for (const auto& per_i : plans) {
        Rat total = 0;
        for (const auto& p : per_i) {
            if (p.weight < 0) throw std::invalid_argument("quantum decoder: negative weight");
            if (p.kind == QuantumPlan::Kind::Gadget) {
                if (p.j < 1 || p.j > m || p.k < 1 || p.k > m)
                    throw std::invalid_argument("quantum decoder: position out of range");
            } else {
                for (auto [a, b] : p.pairs)
                    if (a < 1 || a > m || b < 1 || b > m)
                        throw std::invalid_argument("quantum decoder: position out of range");
            }
            total += p.weight;
        }
        if (total != 1)
            throw std::invalid_argument("quantum decoder: weights do not sum to 1");
    }
}

const std::vector<QuantumPlan>& OneQueryQuantumDecoder::plans_for(int i) const {
    if (i < 1 || i > n) throw std::invalid_argument("quantum decoder: target out of range");
    return plans[i - 1];
}

OneQueryQuantumDecoder compile_two_query(const TwoQueryDecoder& dec) {
    dec.validate();
    if (dec.ell != 1) throw std::invalid_argument("compile: binary decoders only");
    OneQueryQuantumDecoder out;
    out.n = dec.n;
    out.m = dec.m;
    out.queries = 1;
    out.plans.resize(dec.n);
    for (int i = 1; i <= dec.n; ++i) {
        for (const auto& p : dec.plans[i - 1]) {
            QuantumPlan qp;
            qp.weight = p.weight;
            qp.kind = QuantumPlan::Kind::Gadget;
            qp.j = p.j;
            qp.k = p.k;
            qp.f = p.f;
            if (p.j == 0 && p.k == 0) {
                qp.j = qp.k = 1;
                qp.f = SymbolFn::constant(1, p.f.eval(0, 0));
            } else if (p.j == 0) {
                // Duplicate the remaining query; the output ignores slot 1.
                qp.j = p.k;
                std::vector<int> vals(4);
                for (int a = 0; a <= 1; ++a)
                    for (int b = 0; b <= 1; ++b) vals[(a << 1) | b] = p.f.eval(0, b);
                qp.f = SymbolFn::from_values(1, vals);
            } else if (p.k == 0) {
                qp.k = p.j;
                std::vector<int> vals(4);
                for (int a = 0; a <= 1; ++a)
                    for (int b = 0; b <= 1; ++b) vals[(a << 1) | b] = p.f.eval(a, 0);
                qp.f = SymbolFn::from_values(1, vals);
            }
            out.plans[i - 1].push_back(std::move(qp));
        }
    }
    out.validate();
    return out;
}

void XorQueryDecoder::validate() const {
    if (q2 < 2 || q2 % 2 != 0)
        throw std::invalid_argument("xor decoder: query count must be even and >= 2");
    if (static_cast<int>(plans.size()) != n)
        throw std::invalid_argument("xor decoder: plan list does not cover all targets");
    for (const auto& per_i : plans) {
        Rat total = 0;
        for (const auto& p : per_i) {
            if (static_cast<int>(p.positions.size()) != q2)
                throw std::invalid_argument("xor decoder: wrong position count");
            for (int pos : p.positions)
                if (pos < 1 || pos > m)
                    throw std::invalid_argument("xor decoder: position out of range");
            total += p.weight;
        }
        if (total != 1) throw std::invalid_argument("xor decoder: weights do not sum to 1");
    }
}

XorQueryDecoder as_xor_decoder(const TwoQueryDecoder& dec) {
    dec.validate();
    XorQueryDecoder out;
    out.n = dec.n;
    out.m = dec.m;
    out.q2 = 2;
    out.plans.resize(dec.n);
    for (int i = 0; i < dec.n; ++i)
        for (const auto& p : dec.plans[i]) {
            if (!p.f.is_xor2() || p.j < 1 || p.k < 1)
                throw std::invalid_argument("xor decoder: output is not the XOR of two queries");
            out.plans[i].push_back(XorPlan{p.weight, {p.j, p.k}});
        }
    out.validate();
    return out;
}

Rat evaluate_xor_decoder(const XorQueryDecoder& dec, const Word& y, uint32_t x, int i) {
    if (y.ell != 1) throw std::invalid_argument("xor decoder: binary words only");
    const int xi = message_bit(x, i);
    Rat success = 0;
    for (const auto& p : dec.plans.at(i - 1)) {
        int parity = 0;
        for (int pos : p.positions) parity ^= static_cast<int>(y.symbols.at(pos - 1));
        if (parity == xi) success += p.weight;
    }
    return success;
}

OneQueryQuantumDecoder compile_xor_chain(const XorQueryDecoder& dec) {
    dec.validate();
    OneQueryQuantumDecoder out;
    out.n = dec.n;
    out.m = dec.m;
    out.queries = dec.q2 / 2;
    out.plans.resize(dec.n);
    for (int i = 0; i < dec.n; ++i)
        for (const auto& p : dec.plans[i]) {
            QuantumPlan qp;
            qp.weight = p.weight;
            qp.kind = QuantumPlan::Kind::XorChain;
            for (size_t t = 0; t + 1 < p.positions.size(); t += 2)
                qp.pairs.emplace_back(p.positions[t], p.positions[t + 1]);
            out.plans[i].push_back(std::move(qp));
        }
    out.validate();
    return out;
}

Rat evaluate_quantum_decoder(const OneQueryQuantumDecoder& dec, const Word& y, uint32_t x,
                             int i) {
    if (y.ell != 1) throw std::invalid_argument("quantum decoder: binary words only");
    const int xi = message_bit(x, i);
    Rat success = 0;
    for (const auto& p : dec.plans_for(i)) {
        if (p.kind == QuantumPlan::Kind::Gadget) {
            const int a1 = static_cast<int>(y.symbols.at(p.j - 1));
            const int a2 = static_cast<int>(y.symbols.at(p.k - 1));
            const int s1 = a1 ? -1 : 1;
            const int s2 = a2 ? -1 : 1;
            const auto probs = gadget_outcome_probs(s1, s2);
            const auto w1 = gadget_postprocess(p.f);
            Rat p_one = 0;
            for (int b = 0; b < 4; ++b) p_one += probs[b] * w1[b];
            success += p.weight * (xi ? p_one : Rat(1) - p_one);
        } else {
            int parity = 0;
            for (auto [a, b] : p.pairs)
                parity ^= xor_gadget(static_cast<int>(y.symbols.at(a - 1)),
                                     static_cast<int>(y.symbols.at(b - 1)))
                              .bit;
            if (parity == xi) success += p.weight;
        }
    }
    return success;
}

namespace {

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

Rat certify_quantum_min_success(const OneQueryQuantumDecoder& dec, const Code& code,
                                double delta) {
    if (!code.binary()) throw std::invalid_argument("certify: binary codes only");
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
                const Rat s = evaluate_quantum_decoder(dec, y, x, i);
                if (first || s < min_success) {
                    min_success = s;
                    first = false;
                }
            });
        }
    }
    return min_success;
}

Mat plan_output_matrix(const QuantumPlan& plan, int m) {
    const int dim = 2 * m;
    auto index = [m](int c, int j) { return c * m + (j - 1); };
    Mat d = Mat::Zero(dim, dim);
    if (plan.kind == QuantumPlan::Kind::Gadget) {
        if (plan.j == plan.k)
            throw std::invalid_argument("plan matrix: degenerate gadget positions");
        // Coordinates (0,1), (1,j), (1,k), (0,2) in the 2m-dim space.
        const std::array<int, 4> coords = {index(0, 1), index(1, plan.j), index(1, plan.k),
                                           index(0, 2)};
        const auto w1 = gadget_postprocess(plan.f);
        Mat proj = Mat::Zero(dim, dim);
        for (int b = 0; b < 4; ++b) {
            const double sb1 = (b & 2) ? -1.0 : 1.0;
            const double sb2 = (b & 1) ? -1.0 : 1.0;
            Vec psi = Vec::Zero(dim);
            psi(coords[0]) = 0.5;
            psi(coords[1]) = 0.5 * sb1;
            psi(coords[2]) = 0.5 * sb2;
            psi(coords[3]) = 0.5 * sb1 * sb2;
            const Mat outer = psi * psi.adjoint();
            d += rat_double(w1[b]) * outer;
            proj += outer;
        }
        d += 0.5 * (Mat::Identity(dim, dim) - proj);
    } else {
        if (plan.pairs.size() != 1)
            throw std::invalid_argument("plan matrix: single-pair plans only");
        const auto [a, b] = plan.pairs[0];
        if (a == b) throw std::invalid_argument("plan matrix: degenerate pair");
        Vec minus = Vec::Zero(dim);
        minus(index(1, a)) = 1.0 / std::sqrt(2.0);
        minus(index(1, b)) = -1.0 / std::sqrt(2.0);
        Vec plus = Vec::Zero(dim);
        plus(index(1, a)) = 1.0 / std::sqrt(2.0);
        plus(index(1, b)) = 1.0 / std::sqrt(2.0);
        const Mat proj = minus * minus.adjoint() + plus * plus.adjoint();
        d = minus * minus.adjoint() + 0.5 * (Mat::Identity(dim, dim) - proj);
    }
    return d;
}

}  // namespace lqdc
