#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace lqdc {

using Cplx = std::complex<double>;
using Vec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXcd;
using Bits = std::vector<uint8_t>;

inline constexpr double kNormTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kEntropyTol = 1e-9;

// A basis label is a short tuple of integers, e.g. (c, j) for a
// control/index layout or (j, b) for an index/target layout.
struct Label {
    std::vector<int> parts;

    Label() = default;
    Label(std::initializer_list<int> p) : parts(p) {}

    auto operator<=>(const Label&) const = default;
    int operator[](size_t k) const { return parts.at(k); }
    size_t size() const { return parts.size(); }
    std::string str() const;
};

// Finite-dimensional pure state. Labels, when present, name the basis
// vectors; a split (dimA, dimB) declares a two-register layout with the
// first register major.
struct QuantumState {
    Vec amplitudes;
    std::optional<std::vector<Label>> labels;
    std::optional<std::pair<int, int>> split;

    int dim() const { return static_cast<int>(amplitudes.size()); }
    double norm2() const { return amplitudes.squaredNorm(); }
    // Unit norm within 1e-12; labels distinct and of matching size.
    void validate() const;
};

QuantumState make_state(Vec amps, std::vector<Label> labels);
QuantumState make_state(Vec amps);
QuantumState basis_state(int dim, int k);

// |<s1|s2>|; 1 means equal up to a global phase.
double state_overlap(const QuantumState& s1, const QuantumState& s2);

// Labels (c, j) with c in {0,1} major and j in 1..m minor.
std::vector<Label> control_index_labels(int m);

struct DensityMatrix {
    Mat entries;
    std::optional<std::pair<int, int>> split;

    int dim() const { return static_cast<int>(entries.rows()); }
    // Hermitian and unit trace within 1e-12, eigenvalues >= -1e-10.
    void validate() const;
};

DensityMatrix density_of(const QuantumState& s);
DensityMatrix mixed_density(const std::vector<double>& probs,
                            const std::vector<QuantumState>& states);

struct Povm {
    std::vector<Mat> elements;
    // Optional M_i with E_i = M_i^* M_i, enabling post-states.
    std::optional<std::vector<Mat>> decompositions;

    // Elements PSD and summing to identity within 1e-10.
    void validate(double tol = kPsdTol) const;
};

struct OutcomeDistribution {
    std::vector<double> probabilities;
    std::optional<std::vector<DensityMatrix>> post_states;
};

// --- operations ---

QuantumState tensor_product(const QuantumState& s1, const QuantumState& s2);

// Labels (c, j): amplitude at (c, j) gains (-1)^{c * y_j}.
QuantumState apply_phase_oracle(const QuantumState& s, const Bits& y);

// Labels (j, b): basis state (j, b) maps to (j, b xor y_j).
QuantumState apply_bitflip_oracle(const QuantumState& s, const Bits& y);

// True iff the phase query on s matches the one-query simulation through
// the bit-flip oracle (target qubit prepared in the +/- basis according
// to the control bit, so inert branches pick up no phase), up to global
// phase within 1e-12.
bool check_oracle_equivalence(const QuantumState& s, const Bits& y);

OutcomeDistribution measure_povm(const DensityMatrix& rho, const Povm& p);
OutcomeDistribution measure_in_basis(const QuantumState& s,
                                     const std::vector<QuantumState>& basis);

// Partial trace over the discarded register of a two-register pure state;
// keep = 0 keeps the first register, keep = 1 the second.
DensityMatrix reduced_density(const QuantumState& s, int keep);

Mat partial_trace(const Mat& rho, int dim_a, int dim_b, int keep);

// -sum lambda log2 lambda, eigenvalues in [-1e-10, 0) clipped to zero.
double von_neumann_entropy(const DensityMatrix& rho);

struct EntropyRelations {
    double s_a;
    double s_b;
    double s_ab;
    double s_a_given_b;  // S(AB) - S(B)
    double s_mutual;     // S(A) + S(B) - S(AB)
};

EntropyRelations entropy_relations(const DensityMatrix& joint);

// (1/2) * trace norm of rho - sigma.
double trace_distance(const Mat& rho, const Mat& sigma);

}  // namespace lqdc
