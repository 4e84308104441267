#pragma once

#include "lqdc/cdec.hpp"
#include "lqdc/codes.hpp"
#include "lqdc/qcore.hpp"
#include "lqdc/rational.hpp"

#include <functional>
#include <utility>
#include <vector>

namespace lqdc {

inline constexpr int kMaxQueryBits = 12;

// One-round k-server scheme with t-bit queries, a_len-bit answers and a
// finite uniform randomness space of 2^rand_bits strings.
struct PirScheme {
    int k = 0;
    int n = 0;
    int t = 0;
    int a_len = 1;
    int rand_bits = 0;
    std::function<std::vector<uint32_t>(int i, uint32_t r)> queries;
    std::function<uint32_t(uint32_t x, int server, uint32_t q)> answer;
    std::function<int(int i, uint32_t r, const std::vector<uint32_t>& answers)> reconstruct;
    bool xor_type = false;
    double eps = 0.5;

    uint32_t randomness_count() const { return 1u << rand_bits; }
    void validate() const;
};

// Two servers, t = n: queries are a uniform subset S and S xor {i};
// answers are subset parities, output their XOR. Perfect recovery and
// perfectly uniform per-server queries.
PirScheme xor2_scheme(int n);

// 2^d servers over a d-dimensional [w]^d database, n = w^d: randomness is
// d uniform subsets of [w]; server beta substitutes S_r xor {i_r} where
// beta_r = 1 and answers the parity of x over the product set. The XOR of
// all answers is x_i.
PirScheme cube_scheme(int n, int d);

// Negative control: both queries name i outright.
PirScheme leaky_scheme(int n);

// True iff reconstruct equals the XOR of all answer bits for every
// (i, r, answers); exhaustive over the answer hypercube.
bool verify_xor_reconstruct(const PirScheme& s);

Rat evaluate_pir(const PirScheme& s, uint32_t x, int i);

struct ClassicalPrivacyReport {
    Rat max_tv;  // over servers and target pairs
    int worst_server = 0;
    std::pair<int, int> worst_pair{0, 0};
};

ClassicalPrivacyReport classical_privacy_audit(const PirScheme& s);

// --- quantum reductions ---

enum class ReductionPath { Generic, XorType };

// Basis of the sent registers: index 0 is (0, 0^t); 1..2^t are (1, q);
// 2^t+1..2^{t+1} are (2, q).
struct QuantumPirProtocol {
    PirScheme scheme;
    ReductionPath path;
    int sent_dim = 0;
};

QuantumPirProtocol reduce_two_servers(const PirScheme& s, ReductionPath path);

// Exact recovery probability; 3/14 + (4/7) * classical on the generic
// path, equal to classical on the XOR path.
Rat quantum_pir_recovery(const QuantumPirProtocol& proto, uint32_t x, int i);

struct QuantumPrivacyReport {
    double max_trace_distance = 0.0;
    int worst_server = 0;
    std::pair<int, int> worst_pair{0, 0};
};

// Trace distances between the server's reduced density matrices across
// targets, maximized over target pairs.
QuantumPrivacyReport quantum_privacy_audit(const QuantumPirProtocol& proto);

// One quantum server per pair of classical servers; each pair is handled
// by the two-branch query over its queries and contributes the pair XOR
// with certainty.
struct PairedQuantumPir {
    PirScheme scheme;
    int quantum_servers = 0;
};

PairedQuantumPir halve_servers(const PirScheme& s);
Rat paired_recovery(const PairedQuantumPir& p, uint32_t x, int i);
QuantumPrivacyReport paired_privacy_audit(const PairedQuantumPir& p);

// --- random access code extraction ---

struct PirRac {
    int t = 0;
    int dim = 0;  // basis size
    ReductionPath path;
    std::vector<double> lambda;  // target-independent branch weights
};

struct PirRacResult {
    PirRac rac;
    double max_lambda_deviation = 0.0;  // across targets
    double max_recovery_gap = 0.0;      // |rac - protocol| over (x, i)
    std::vector<std::vector<double>> recovery;  // [i-1][x]
    std::vector<double> p_bits;                 // worst case per target
};

// Extracts the encoding x -> |psi_x> = sum_b lambda_b s_{bx} |b> and
// replays the protocol on it through the target-dependent isometry;
// rejects when the branch weights depend on the target.
PirRacResult pir_to_rac(const PirScheme& s, ReductionPath path);

// |psi_x> padded to the next power-of-two dimension, for entropy audits.
QuantumState pir_rac_state(const PirRacResult& r, const PirScheme& s, uint32_t x);

// --- smooth code extraction ---

struct SmoothFromPir {
    Code code;  // m = 2 * 2^t symbols of a_len bits
    TwoQueryDecoder decoder;
    SmoothReport smoothness;
    Rat min_recovery;  // over all x, i on true codewords
    int m_bound = 0;   // 6 * 2^t
};

// Codeword = both servers' answer tables; the decoder samples the user's
// randomness and queries the two answered positions.
SmoothFromPir pir_to_smooth(const PirScheme& s);

}  // namespace lqdc
