#include "lqdc/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lqdc {

std::string Label::str() const {
    std::ostringstream os;
    os << '(';
    for (size_t k = 0; k < parts.size(); ++k) {
        if (k) os << ',';
        os << parts[k];
    }
    os << ')';
    return os.str();
}

void QuantumState::validate() const {
    if (dim() <= 0) throw std::invalid_argument("state: empty amplitude vector");
    if (std::abs(norm2() - 1.0) > kNormTol)
        throw std::invalid_argument("state: squared norm deviates from 1 by more than 1e-12");
    if (labels) {
        if (static_cast<int>(labels->size()) != dim())
            throw std::invalid_argument("state: label count != dim");
        std::set<Label> seen(labels->begin(), labels->end());
        if (static_cast<int>(seen.size()) != dim())
            throw std::invalid_argument("state: labels not distinct");
    }
    if (split && split->first * split->second != dim())
        throw std::invalid_argument("state: split does not factor dim");
}

QuantumState make_state(Vec amps, std::vector<Label> labels) {
    QuantumState s{std::move(amps), std::move(labels), std::nullopt};
    s.validate();
    return s;
}

QuantumState make_state(Vec amps) {
    QuantumState s{std::move(amps), std::nullopt, std::nullopt};
    s.validate();
    return s;
}

QuantumState basis_state(int dim, int k) {
    Vec v = Vec::Zero(dim);
    v(k) = 1.0;
    return QuantumState{std::move(v), std::nullopt, std::nullopt};
}

double state_overlap(const QuantumState& s1, const QuantumState& s2) {
    if (s1.dim() != s2.dim()) throw std::invalid_argument("overlap: dimension mismatch");
    return std::abs(s1.amplitudes.dot(s2.amplitudes));
}

std::vector<Label> control_index_labels(int m) {
    std::vector<Label> out;
    out.reserve(2 * m);
    for (int c = 0; c <= 1; ++c)
        for (int j = 1; j <= m; ++j) out.push_back(Label{c, j});
    return out;
}

void DensityMatrix::validate() const {
    if (entries.rows() != entries.cols() || entries.rows() == 0)
        throw std::invalid_argument("density: not square");
    if ((entries - entries.adjoint()).cwiseAbs().maxCoeff() > kNormTol)
        throw std::invalid_argument("density: not Hermitian within 1e-12");
    if (std::abs(entries.trace().real() - 1.0) > kNormTol ||
        std::abs(entries.trace().imag()) > kNormTol)
        throw std::invalid_argument("density: trace differs from 1");
    Eigen::SelfAdjointEigenSolver<Mat> es(entries, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdTol)
        throw std::invalid_argument("density: negative eigenvalue beyond -1e-10");
    if (split && split->first * split->second != dim())
        throw std::invalid_argument("density: split does not factor dim");
}

DensityMatrix density_of(const QuantumState& s) {
    DensityMatrix d{s.amplitudes * s.amplitudes.adjoint(), s.split};
    return d;
}

DensityMatrix mixed_density(const std::vector<double>& probs,
                            const std::vector<QuantumState>& states) {
    if (probs.size() != states.size() || probs.empty())
        throw std::invalid_argument("mixture: size mismatch");
    const int d = states[0].dim();
    Mat rho = Mat::Zero(d, d);
    for (size_t k = 0; k < probs.size(); ++k) {
        if (states[k].dim() != d) throw std::invalid_argument("mixture: dimension mismatch");
        rho += probs[k] * (states[k].amplitudes * states[k].amplitudes.adjoint());
    }
    return DensityMatrix{std::move(rho), states[0].split};
}

void Povm::validate(double tol) const {
    if (elements.empty()) throw std::invalid_argument("povm: no elements");
    const auto d = elements[0].rows();
    Mat sum = Mat::Zero(d, d);
    for (const auto& e : elements) {
        if (e.rows() != d || e.cols() != d)
            throw std::invalid_argument("povm: element dimension mismatch");
        if ((e - e.adjoint()).cwiseAbs().maxCoeff() > tol)
            throw std::invalid_argument("povm: element not Hermitian");
        Eigen::SelfAdjointEigenSolver<Mat> es(e, Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -tol)
            throw std::invalid_argument("povm: element not PSD");
        sum += e;
    }
    if ((sum - Mat::Identity(d, d)).cwiseAbs().maxCoeff() > tol)
        throw std::invalid_argument("povm: elements do not sum to identity");
    if (decompositions) {
        if (decompositions->size() != elements.size())
            throw std::invalid_argument("povm: decomposition count mismatch");
        for (size_t k = 0; k < elements.size(); ++k) {
            const Mat& M = (*decompositions)[k];
            if (((M.adjoint() * M) - elements[k]).cwiseAbs().maxCoeff() > tol)
                throw std::invalid_argument("povm: M_i^* M_i != E_i");
        }
    }
}

QuantumState tensor_product(const QuantumState& s1, const QuantumState& s2) {
    s1.validate();
    s2.validate();
    const int d1 = s1.dim(), d2 = s2.dim();
    Vec out(d1 * d2);
    for (int a = 0; a < d1; ++a)
        for (int b = 0; b < d2; ++b) out(a * d2 + b) = s1.amplitudes(a) * s2.amplitudes(b);
    QuantumState r{std::move(out), std::nullopt, std::make_pair(d1, d2)};
    if (s1.labels || s2.labels) {
        std::vector<Label> labels;
        labels.reserve(d1 * d2);
        for (int a = 0; a < d1; ++a)
            for (int b = 0; b < d2; ++b) {
                Label l;
                if (s1.labels)
                    l.parts = (*s1.labels)[a].parts;
                else
                    l.parts = {a};
                if (s2.labels)
                    l.parts.insert(l.parts.end(), (*s2.labels)[b].parts.begin(),
                                   (*s2.labels)[b].parts.end());
                else
                    l.parts.push_back(b);
                labels.push_back(std::move(l));
            }
        r.labels = std::move(labels);
    }
    return r;
}

namespace {

// Expects every label to carry at least two parts; part `ci` is the
// control bit and part `ji` the 1-based word index.
void require_control_index(const QuantumState& s, const Bits& y, size_t ci, size_t ji) {
    if (!s.labels) throw std::invalid_argument("oracle: state has no labels");
    for (const Label& l : *s.labels) {
        if (l.size() <= std::max(ci, ji)) throw std::invalid_argument("oracle: short label");
        const int c = l[ci], j = l[ji];
        if (c != 0 && c != 1) throw std::invalid_argument("oracle: control bit not 0/1");
        if (j < 1 || j > static_cast<int>(y.size()))
            throw std::invalid_argument("oracle: index out of range of the word");
    }
}

}  // namespace

QuantumState apply_phase_oracle(const QuantumState& s, const Bits& y) {
    require_control_index(s, y, 0, 1);
    QuantumState out = s;
    for (int t = 0; t < s.dim(); ++t) {
        const Label& l = (*s.labels)[t];
        if (l[0] == 1 && y[l[1] - 1]) out.amplitudes(t) = -out.amplitudes(t);
    }
    return out;
}

QuantumState apply_bitflip_oracle(const QuantumState& s, const Bits& y) {
    if (!s.labels) throw std::invalid_argument("oracle: state has no labels");
    std::map<Label, int> pos;
    for (int t = 0; t < s.dim(); ++t) pos[(*s.labels)[t]] = t;
    QuantumState out = s;
    out.amplitudes.setZero();
    for (int t = 0; t < s.dim(); ++t) {
        Label l = (*s.labels)[t];
        if (l.size() < 2) throw std::invalid_argument("oracle: short label");
        const int j = l[0];
        const int b = l.parts[l.size() - 1];
        if (b != 0 && b != 1) throw std::invalid_argument("oracle: target bit not 0/1");
        if (j < 1 || j > static_cast<int>(y.size()))
            throw std::invalid_argument("oracle: index out of range of the word");
        l.parts[l.size() - 1] = b ^ y[j - 1];
        auto it = pos.find(l);
        if (it == pos.end())
            throw std::invalid_argument("oracle: image basis state missing from label set");
        out.amplitudes(it->second) += s.amplitudes(t);
    }
    return out;
}

bool check_oracle_equivalence(const QuantumState& s, const Bits& y) {
    require_control_index(s, y, 0, 1);
    const QuantumState phase_path = apply_phase_oracle(s, y);

    // Bit-flip path. Target qubit appended per branch: |-> on control-1
    // branches, |+> on control-0 branches, so one uncontrolled bit-flip
    // query realizes the controlled phase and the target disentangles.
    const int d = s.dim();
    const double rt = 1.0 / std::sqrt(2.0);
    Vec ext = Vec::Zero(2 * d);
    std::vector<Label> ext_labels;
    ext_labels.reserve(2 * d);
    for (int t = 0; t < d; ++t) {
        const Label& l = (*s.labels)[t];
        for (int b = 0; b <= 1; ++b) ext_labels.push_back(Label{l[1], l[0], b});
    }
    for (int t = 0; t < d; ++t) {
        const int c = (*s.labels)[t][0];
        ext(2 * t) = s.amplitudes(t) * rt;
        ext(2 * t + 1) = s.amplitudes(t) * rt * (c == 1 ? -1.0 : 1.0);
    }
    QuantumState extended{std::move(ext), std::move(ext_labels), std::nullopt};
    QuantumState queried = apply_bitflip_oracle(extended, y);

    // Undo the target preparation, then discard the target register.
    Vec back = Vec::Zero(d);
    for (int t = 0; t < d; ++t) {
        const int c = (*s.labels)[t][0];
        const Cplx a0 = queried.amplitudes(2 * t);
        const Cplx a1 = queried.amplitudes(2 * t + 1);
        const Cplx along = (c == 1) ? (a0 - a1) * rt : (a0 + a1) * rt;
        const Cplx residue = (c == 1) ? (a0 + a1) * rt : (a0 - a1) * rt;
        if (std::abs(residue) > kNormTol)
            throw std::logic_error("oracle equivalence: target register did not disentangle");
        back(t) = along;
    }
    QuantumState flip_path{std::move(back), s.labels, s.split};
    return std::abs(state_overlap(phase_path, flip_path) - 1.0) <= kNormTol;
}

OutcomeDistribution measure_povm(const DensityMatrix& rho, const Povm& p) {
    p.validate();
    if (p.elements[0].rows() != rho.entries.rows())
        throw std::invalid_argument("measure: dimension mismatch");
    OutcomeDistribution out;
    for (const auto& e : p.elements)
        out.probabilities.push_back(std::max(0.0, (e * rho.entries).trace().real()));
    if (p.decompositions) {
        std::vector<DensityMatrix> post;
        for (size_t k = 0; k < p.elements.size(); ++k) {
            const Mat& M = (*p.decompositions)[k];
            Mat num = M * rho.entries * M.adjoint();
            const double tr = num.trace().real();
            if (out.probabilities[k] > kNormTol)
                post.push_back(DensityMatrix{num / tr, std::nullopt});
            else
                post.push_back(DensityMatrix{Mat::Identity(rho.dim(), rho.dim()) /
                                                 static_cast<double>(rho.dim()),
                                             std::nullopt});
        }
        out.post_states = std::move(post);
    }
    return out;
}

OutcomeDistribution measure_in_basis(const QuantumState& s,
                                     const std::vector<QuantumState>& basis) {
    if (basis.empty()) throw std::invalid_argument("measure: empty basis");
    const int d = s.dim();
    if (static_cast<int>(basis.size()) != d)
        throw std::invalid_argument("measure: basis does not span the space");
    for (size_t a = 0; a < basis.size(); ++a) {
        if (basis[a].dim() != d) throw std::invalid_argument("measure: basis dimension mismatch");
        for (size_t b = a; b < basis.size(); ++b) {
            const double ip = std::abs(basis[a].amplitudes.dot(basis[b].amplitudes));
            const double want = (a == b) ? 1.0 : 0.0;
            if (std::abs(ip - want) > kPsdTol)
                throw std::invalid_argument("measure: basis not orthonormal within 1e-10");
        }
    }
    OutcomeDistribution out;
    for (const auto& b : basis) {
        const Cplx ip = b.amplitudes.dot(s.amplitudes);
        out.probabilities.push_back(std::norm(ip));
    }
    return out;
}

Mat partial_trace(const Mat& rho, int dim_a, int dim_b, int keep) {
    if (rho.rows() != static_cast<Eigen::Index>(dim_a) * dim_b)
        throw std::invalid_argument("partial trace: dims do not factor");
    if (keep == 0) {
        Mat out = Mat::Zero(dim_a, dim_a);
        for (int a = 0; a < dim_a; ++a)
            for (int a2 = 0; a2 < dim_a; ++a2)
                for (int b = 0; b < dim_b; ++b)
                    out(a, a2) += rho(a * dim_b + b, a2 * dim_b + b);
        return out;
    }
    Mat out = Mat::Zero(dim_b, dim_b);
    for (int b = 0; b < dim_b; ++b)
        for (int b2 = 0; b2 < dim_b; ++b2)
            for (int a = 0; a < dim_a; ++a) out(b, b2) += rho(a * dim_b + b, a * dim_b + b2);
    return out;
}

DensityMatrix reduced_density(const QuantumState& s, int keep) {
    if (!s.split) throw std::invalid_argument("reduced density: no bipartition declared");
    const auto [da, db] = *s.split;
    Mat rho = s.amplitudes * s.amplitudes.adjoint();
    return DensityMatrix{partial_trace(rho, da, db, keep), std::nullopt};
}

double von_neumann_entropy(const DensityMatrix& rho) {
    rho.validate();
    Eigen::SelfAdjointEigenSolver<Mat> es(rho.entries, Eigen::EigenvaluesOnly);
    double entropy = 0.0;
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        double lam = es.eigenvalues()(k);
        if (lam < 0.0) lam = 0.0;  // within -1e-10, already validated
        if (lam > 0.0) entropy -= lam * std::log2(lam);
    }
    return std::max(0.0, entropy);
}

EntropyRelations entropy_relations(const DensityMatrix& joint) {
    if (!joint.split) throw std::invalid_argument("entropy relations: no bipartition declared");
    const auto [da, db] = *joint.split;
    DensityMatrix rho_a{partial_trace(joint.entries, da, db, 0), std::nullopt};
    DensityMatrix rho_b{partial_trace(joint.entries, da, db, 1), std::nullopt};
    EntropyRelations r{};
    r.s_a = von_neumann_entropy(rho_a);
    r.s_b = von_neumann_entropy(rho_b);
    r.s_ab = von_neumann_entropy(joint);
    r.s_a_given_b = r.s_ab - r.s_b;
    r.s_mutual = r.s_a + r.s_b - r.s_ab;
    return r;
}

double trace_distance(const Mat& rho, const Mat& sigma) {
    if (rho.rows() != sigma.rows() || rho.cols() != sigma.cols())
        throw std::invalid_argument("trace distance: dimension mismatch");
    Eigen::SelfAdjointEigenSolver<Mat> es(rho - sigma, Eigen::EigenvaluesOnly);
    return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

}  // namespace lqdc
