#pragma once

#include "lqdc/cdec.hpp"
#include "lqdc/codes.hpp"
#include "lqdc/qcore.hpp"
#include "lqdc/rational.hpp"

#include <array>
#include <vector>

namespace lqdc {

// One-query evaluation of an arbitrary f: {0,1}^2 -> {0,1}.
// Query (1/sqrt3)(|0,1> + |1,1> + |1,2>), measurement in the orthonormal
// family |psi_b> = (1/2)(|0,1> + (-1)^{b1}|1,1> + (-1)^{b2}|1,2>
// + (-1)^{b1+b2}|0,2>), then a biased postprocess keyed on |f^{-1}(1)|.
// Gadget coordinates are ordered [(0,1), (1,1), (1,2), (0,2)]; outcome
// index is b1*2 + b2.
struct GadgetTrace {
    std::array<int, 2> input;
    std::array<int, 4> post_oracle_signs;  // coefficients (times 1/sqrt3; last is 0)
    std::array<Rat, 4> outcome_prob;
    std::array<Rat, 4> output_one_given_b;  // postprocess weights
    Rat p_one;                              // Pr[output = 1]
    Rat p_correct;                          // Pr[output = f(a)], always 11/14
};

// Pr[output 1 | measured b] for every b, from the three postprocess cases.
std::array<Rat, 4> gadget_postprocess(const SymbolFn& f);

GadgetTrace run_gadget(const SymbolFn& f, int a1, int a2);

// Applies the phase query to (1/sqrt2)(|1,j> + |1,k>) and measures in
// {(|1,j> +- |1,k>)/sqrt2}; the outcome determines y_j xor y_k with
// certainty. Returns the bit and its (unit) probability.
struct XorGadgetOutcome {
    int bit;
    Rat probability;  // of the winning outcome; 1 by construction
};
XorGadgetOutcome xor_gadget(int y_j, int y_k);

// --- compiled quantum decoders ---

struct QuantumPlan {
    enum class Kind { Gadget, XorChain };
    Rat weight;
    Kind kind = Kind::Gadget;
    int j = 0, k = 0;  // Gadget positions (1-based)
    SymbolFn f;        // Gadget output function (ell = 1)
    std::vector<std::pair<int, int>> pairs;  // XorChain position pairs
};

struct OneQueryQuantumDecoder {
    int n = 0;
    int m = 0;
    int queries = 1;
    std::vector<std::vector<QuantumPlan>> plans;

    void validate() const;
    const std::vector<QuantumPlan>& plans_for(int i) const;
};

// Same plan randomness; plan (j,k,f) becomes the gadget query over
// (1/sqrt3)(|0,1> + |1,j> + |1,k>). Skipped queries are padded by
// duplicating the remaining position. Quantum success is exactly
// 3/14 + (4/7) * classical success on every (x, y, i).
OneQueryQuantumDecoder compile_two_query(const TwoQueryDecoder& dec);

// Decoder whose output is the XOR of all queried bits (2q of them).
struct XorPlan {
    Rat weight;
    std::vector<int> positions;  // even count, 1-based
};

struct XorQueryDecoder {
    int n = 0;
    int m = 0;
    int q2 = 2;  // classical query count, must be even
    std::vector<std::vector<XorPlan>> plans;

    void validate() const;
};

// Rejects unless every plan outputs the XOR of its two queried bits.
XorQueryDecoder as_xor_decoder(const TwoQueryDecoder& dec);

Rat evaluate_xor_decoder(const XorQueryDecoder& dec, const Word& y, uint32_t x, int i);

// Consecutive pairs handled by one xor gadget each; q quantum queries,
// success equal to the classical decoder's success.
OneQueryQuantumDecoder compile_xor_chain(const XorQueryDecoder& dec);

// Exact Pr[decoder output = x_i] on word y: full POVM evaluation per plan.
Rat evaluate_quantum_decoder(const OneQueryQuantumDecoder& dec, const Word& y, uint32_t x,
                             int i);

// Worst-case success over all x, i and all corruption patterns of weight
// at most floor(delta*m); exhaustive, binary codes.
Rat certify_quantum_min_success(const OneQueryQuantumDecoder& dec, const Code& code,
                                double delta);

// Output-1 POVM element of a plan as a dense matrix over the (c, j)
// space of dimension 2m (labels ordered c-major, j-minor). Outside the
// plan's measurement subspace the decoder answers with a fair coin.
Mat plan_output_matrix(const QuantumPlan& plan, int m);

}  // namespace lqdc
