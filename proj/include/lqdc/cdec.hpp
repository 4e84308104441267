#pragma once

#include "lqdc/codes.hpp"
#include "lqdc/rational.hpp"

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

namespace lqdc {

inline constexpr int kMaxEnumN = 12;   // full sweeps over x
inline constexpr int kMaxSymbolEll = 3;

// Total function ({0,1}^ell)^2 -> {0,1}, stored as a truth table with
// entry (a << ell) | b at bit position (a << ell) | b.
struct SymbolFn {
    int ell = 1;
    uint64_t table = 0;

    int eval(uint32_t a, uint32_t b) const {
        return static_cast<int>((table >> ((a << ell) | b)) & 1u);
    }
    int table_bits() const { return 1 << (2 * ell); }
    void validate() const;

    static SymbolFn xor2();                      // ell = 1, a xor b
    static SymbolFn constant(int ell, int bit);
    static SymbolFn from_values(int ell, const std::vector<int>& values);

    bool is_xor2() const { return ell == 1 && table == SymbolFn::xor2().table; }
    bool operator==(const SymbolFn&) const = default;
};

// One randomized query plan: read positions j and k (1-based; 0 means the
// query is skipped and the symbol 0 substituted) and output f(y_j, y_k).
struct QueryPlan {
    Rat weight;
    int j = 0;
    int k = 0;
    SymbolFn f;
};

struct TwoQueryDecoder {
    int n = 0;
    int m = 0;
    int ell = 1;
    std::vector<std::vector<QueryPlan>> plans;  // per target i, index i-1

    void validate() const;  // weights nonnegative, summing to 1 per target
    const std::vector<QueryPlan>& plans_for(int i) const;
};

// Uniform over j in {0,1}^n: plan (j, j xor e_i, XOR).
TwoQueryDecoder hadamard_decoder(int n);

// Exact Pr[f(y_j, y_k) = x_i] over the plan distribution.
Rat evaluate_decoder(const TwoQueryDecoder& dec, const Word& y, uint32_t x, int i);

// Worst-case success over all x and all corruption patterns of weight at
// most floor(delta*m); binary codes, exhaustive. eps = result - 1/2.
Rat certify_min_success(const TwoQueryDecoder& dec, const Code& code, double delta);

// --- adaptive wrapper ---

struct AdaptivePlan {
    Rat weight;
    int q1 = 0;
    std::array<int, 2> q2{};                  // follow-up query per answer of q1
    std::array<std::array<int, 2>, 2> out{};  // out[v][w], v = answer of q1
};

struct AdaptiveTwoQueryDecoder {
    int n = 0;
    int m = 0;
    std::vector<std::vector<AdaptivePlan>> plans;

    void validate() const;
};

Rat evaluate_adaptive(const AdaptiveTwoQueryDecoder& dec, const Word& y, uint32_t x, int i);

// Guess the branch of the second query up front; on a wrong guess output
// a fair coin (materialized as a weight split over constant plans).
TwoQueryDecoder adaptive_to_nonadaptive(const AdaptiveTwoQueryDecoder& dec);

// --- smoothness ---

struct SmoothReport {
    int m = 0;
    std::vector<std::vector<Rat>> query_probability;  // [i-1][j-1]
    Rat c;                                            // m * max probability
    int argmax_i = 0;
    int argmax_j = 0;
};

SmoothReport audit_smoothness(const TwoQueryDecoder& dec);

// Drops every query to an index queried with probability above
// q/(delta*m), substituting the fixed symbol 0. Rejects when the heavy
// set exceeds floor(delta*m).
TwoQueryDecoder kt_smooth(const TwoQueryDecoder& dec, const Rat& delta, int q = 2);

// --- Fourier selection and binarization ---

struct FourierSelection {
    uint32_t s0 = 0;
    uint32_t t0 = 0;
    int sign = 1;
    Rat eta;          // max(0, E_x[(-1)^f (-1)^{x_i}]/2)
    Rat correlation;  // E_x[chi_{S0}(a) chi_{T0}(b) (-1)^{x_i}]
    std::vector<std::vector<Rat>> coefficients;  // \hat f_{S,T}
};

// Brute force over all x; ties on |correlation| broken lexicographically
// on (S, T).
FourierSelection fourier_select(const SymbolFn& f, const Code& code, int j, int k, int i);

struct BinarizePlanReport {
    Rat old_advantage;  // signed, per plan, averaged over uniform x
    Rat new_advantage;
    bool coin = false;
};

struct BinarizeResult {
    Code binary_code;
    TwoQueryDecoder decoder;
    std::vector<std::vector<BinarizePlanReport>> per_plan;  // [i-1]
    std::vector<Rat> average_success;                       // per i, uniform x
};

// Appendix-style reduction of a smooth decoder over {0,1}^ell to a binary
// decoder over the symbolwise Hadamard encoding. eps_declared is audited
// against worst-case success on uncorrupted codewords.
BinarizeResult trevisan_binarize(const TwoQueryDecoder& dec, const Code& code,
                                 const Rat& eps_declared);

}  // namespace lqdc
