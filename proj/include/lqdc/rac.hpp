#pragma once

#include "lqdc/codes.hpp"
#include "lqdc/qcore.hpp"
#include "lqdc/qdec.hpp"

#include <string>
#include <vector>

namespace lqdc {

// |U(x)> = (1/sqrt(2m)) sum_{c,j} (-1)^{c * C(x)_j} |c,j>, labels (c,j).
struct UniformCodeState {
    int m = 0;
    QuantumState state;
};

UniformCodeState build_uniform_state(const Code& code, uint32_t x);

enum class SplitMode { Standard, Improved };

// How a randomized decoder's query randomness enters the pipeline:
// PerPlan runs the whole split/extract/calibrate chain per plan and
// averages the success; Pooled folds the randomness into one query with
// alpha^2 summed per label (workspace entanglement deferred until after
// the query), which is the form the extraction argument wants.
enum class Randomness { PerPlan, Pooled };

// Nonnegative query amplitudes over the (c, j) space, index c*m + (j-1).
struct QueryAmplitudes {
    int m = 0;
    std::vector<double> alpha;
};

QueryAmplitudes plan_query_amplitudes(const QuantumPlan& plan, int m);

// alpha^2 summed over plan randomness; with spread_inert the control-0
// mass (untouched by the query) is redistributed uniformly over j.
QueryAmplitudes pooled_query_amplitudes(const OneQueryQuantumDecoder& dec, int i,
                                        bool spread_inert = true);

struct AmplitudeSplit {
    SplitMode mode = SplitMode::Standard;
    double delta = 0.0;
    double threshold = 0.0;
    std::vector<uint8_t> in_b;  // mask over 2m labels
    int b_count = 0;
    double a = 1.0;  // norm of the small-amplitude part
    QueryAmplitudes query;
};

// A-labels have alpha <= threshold (sqrt(1/(delta m)) standard,
// sqrt(2/(3 delta m)) improved); rejects when |B| breaches the mode's
// budget (< delta m standard, <= delta m improved).
AmplitudeSplit split_query(const QueryAmplitudes& q, double delta, SplitMode mode);

// {M^* M, I - M^* M} with M diagonal kappa * alpha_{cj} on A-labels,
// kappa = sqrt(delta m) or sqrt(3 delta m / 2).
Povm extraction_povm(const AmplitudeSplit& split);

// Closed form for the first outcome on |U(x)>: delta a^2/2 standard,
// 3 delta a^2/4 improved.
double extraction_probability(const AmplitudeSplit& split);

struct RecoveryCalibration {
    double q1 = 0.0;
    double q0 = 0.0;
    bool swapped = false;    // 0/1 roles reversed
    bool coin_used = false;  // false on the early exit
    double coin = 0.0;       // probability of the pre-POVM biased output
};

// Case analysis on (q1, q0) given the certified advantage over a^2.
RecoveryCalibration make_calibration(double q1, double q0, double eps_over_a2);

// Success probability of the biased postprocess on POVM level p when the
// target bit is xi.
double calibrated_success(const RecoveryCalibration& cal, double p, int xi);

struct RacOptions {
    SplitMode mode = SplitMode::Standard;
    Randomness randomness = Randomness::Pooled;
    double delta = 0.0;
    double eps = 0.0;  // certified advantage of the decoder at this delta
    bool spread_inert = true;
};

struct RacBitOutcome {
    int i = 0;
    double extraction_prob = 0.0;          // aggregate over plan randomness
    std::vector<double> success_per_x;     // indexed by message x
    double min_success = 0.0;
    // Populated in pooled mode:
    AmplitudeSplit split;
    RecoveryCalibration calibration;
    std::vector<double> povm_level_per_x;  // p(A(x)/a)
};

// Full recovery pipeline for bit i from |U(x)>: extraction POVM (fair
// coin on failure), then the calibrated biased postprocess.
RacBitOutcome rac_recover_bit(const Code& code, const OneQueryQuantumDecoder& dec, int i,
                              const RacOptions& opt);

// POVM level <phi|D|phi> of one plan's output element on a real state
// given by coefficients over (c, j); used by both pipeline modes.
double plan_povm_level(const QuantumPlan& plan, int m, const std::vector<double>& coeff);

// --- entropy ledger ---

struct LedgerCheck {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    std::string relation;  // "<=" or "=="
    double slack = 0.0;
    bool pass = false;
};

struct EntropyLedger {
    int n = 0;
    int qubits = 0;
    double s_xm = 0.0;
    double s_x = 0.0;
    double s_m = 0.0;
    double s_x_given_m = 0.0;
    double s_mutual = 0.0;
    double avg_state_entropy = 0.0;
    std::vector<double> s_xi_given_m;
    std::vector<double> p_bits;  // worst-case per-bit recovery
    std::vector<double> h_p_bits;
    double p_min = 0.0;
    std::vector<LedgerCheck> checks;
    bool all_pass = false;
};

// Audits the inequality chain for the encoding x -> rho_x with measured
// per-bit recovery probabilities, each within 1e-9:
//   S(XM) = n + avg S(rho_x);  S(X:M) <= S(M) <= qubits;
//   S(X|M) <= sum_i S(X_i|M);  H(p_i) >= S(X_i|M);
//   (1 - H(min p_i)) n <= qubits.
EntropyLedger nayak_audit(const std::vector<DensityMatrix>& rho_x,
                          const std::vector<double>& p_bits);

}  // namespace lqdc
