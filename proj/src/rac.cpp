#include "lqdc/rac.hpp"

#include "lqdc/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lqdc {

namespace {

constexpr double kTol = 1e-9;

int label_index(int m, int c, int j) { return c * m + (j - 1); }

}  // namespace

UniformCodeState build_uniform_state(const Code& code, uint32_t x) {
    if (!code.binary()) throw std::invalid_argument("uniform state: binary codes only");
    if (code.m < 1) throw std::invalid_argument("uniform state: empty code");
    const Word cw = code.encode(x);
    const int m = code.m;
    Vec amps(2 * m);
    const double scale = 1.0 / std::sqrt(2.0 * m);
    for (int c = 0; c <= 1; ++c)
        for (int j = 1; j <= m; ++j)
            amps(label_index(m, c, j)) = ((c & cw.symbols[j - 1]) ? -scale : scale);
    UniformCodeState u;
    u.m = m;
    u.state = QuantumState{std::move(amps), control_index_labels(m), std::make_pair(2, m)};
    u.state.validate();
    return u;
}

QueryAmplitudes plan_query_amplitudes(const QuantumPlan& plan, int m) {
    QueryAmplitudes q;
    q.m = m;
    q.alpha.assign(2 * m, 0.0);
    std::vector<double> mass(2 * m, 0.0);
    if (plan.kind == QuantumPlan::Kind::Gadget) {
        mass[label_index(m, 0, 1)] += 1.0 / 3.0;
        mass[label_index(m, 1, plan.j)] += 1.0 / 3.0;
        mass[label_index(m, 1, plan.k)] += 1.0 / 3.0;
    } else {
        if (plan.pairs.size() != 1)
            throw std::invalid_argument("query amplitudes: single-query plans only");
        mass[label_index(m, 1, plan.pairs[0].first)] += 0.5;
        mass[label_index(m, 1, plan.pairs[0].second)] += 0.5;
    }
    for (int t = 0; t < 2 * m; ++t) q.alpha[t] = std::sqrt(mass[t]);
    return q;
}

QueryAmplitudes pooled_query_amplitudes(const OneQueryQuantumDecoder& dec, int i,
                                        bool spread_inert) {
    const int m = dec.m;
    QueryAmplitudes q;
    q.m = m;
    std::vector<double> mass(2 * m, 0.0);
    for (const auto& plan : dec.plans_for(i)) {
        const double w = rat_double(plan.weight);
        const QueryAmplitudes pq = plan_query_amplitudes(plan, m);
        for (int t = 0; t < 2 * m; ++t) mass[t] += w * pq.alpha[t] * pq.alpha[t];
    }
    if (spread_inert) {
        double inert = 0.0;
        for (int j = 1; j <= m; ++j) inert += mass[label_index(m, 0, j)];
        for (int j = 1; j <= m; ++j) mass[label_index(m, 0, j)] = inert / m;
    }
    q.alpha.assign(2 * m, 0.0);
    for (int t = 0; t < 2 * m; ++t) q.alpha[t] = std::sqrt(mass[t]);
    return q;
}

AmplitudeSplit split_query(const QueryAmplitudes& q, double delta, SplitMode mode) {
    if (delta <= 0.0 || delta >= 1.0)
        throw std::invalid_argument("split: delta outside (0,1)");
    for (double v : q.alpha)
        if (v < 0.0) throw std::invalid_argument("split: amplitudes must be nonnegative");
    AmplitudeSplit s;
    s.mode = mode;
    s.delta = delta;
    s.query = q;
    const double dm = delta * q.m;
    s.threshold = mode == SplitMode::Standard ? std::sqrt(1.0 / dm) : std::sqrt(2.0 / (3.0 * dm));
    s.in_b.assign(q.alpha.size(), 0);
    double a2 = 0.0;
    for (size_t t = 0; t < q.alpha.size(); ++t) {
        if (q.alpha[t] > s.threshold + 1e-15) {
            s.in_b[t] = 1;
            ++s.b_count;
        } else {
            a2 += q.alpha[t] * q.alpha[t];
        }
    }
    s.a = std::sqrt(a2);
    const bool ok = mode == SplitMode::Standard ? (s.b_count < dm) : (s.b_count <= dm + 1e-12);
    if (!ok)
        throw std::invalid_argument("split: large-amplitude set exceeds the corruption budget");
    return s;
}

Povm extraction_povm(const AmplitudeSplit& split) {
    const int dim = 2 * split.query.m;
    const double dm = split.delta * split.query.m;
    const double kappa =
        split.mode == SplitMode::Standard ? std::sqrt(dm) : std::sqrt(1.5 * dm);
    Mat m_op = Mat::Zero(dim, dim);
    for (int t = 0; t < dim; ++t) {
        if (split.in_b[t]) continue;
        const double entry = kappa * split.query.alpha[t];
        if (entry > 1.0 + 1e-12)
            throw std::invalid_argument("extraction: scaled coefficient exceeds 1");
        m_op(t, t) = entry;
    }
    Povm p;
    p.elements = {m_op.adjoint() * m_op, Mat::Identity(dim, dim) - m_op.adjoint() * m_op};
    Mat comp = Mat::Zero(dim, dim);
    {
        // I - M^*M is diagonal PSD; its square root completes the pair.
        for (int t = 0; t < dim; ++t)
            comp(t, t) = std::sqrt(std::max(0.0, 1.0 - std::norm(m_op(t, t))));
    }
    p.decompositions = {{m_op, comp}};
    p.validate();
    return p;
}

double extraction_probability(const AmplitudeSplit& split) {
    const double a2 = split.a * split.a;
    return split.mode == SplitMode::Standard ? split.delta * a2 / 2.0
                                             : 0.75 * split.delta * a2;
}

RecoveryCalibration make_calibration(double q1, double q0, double eps_over_a2) {
    if (q1 < q0 - kTol) throw std::invalid_argument("calibrate: q1 below q0");
    if (q1 - q0 < 2.0 * eps_over_a2 - kTol)
        throw std::invalid_argument("calibrate: gap below 2*eps/a^2; decoder not certified");
    RecoveryCalibration cal;
    cal.q1 = q1;
    cal.q0 = q0;
    if (q1 >= 0.5 + eps_over_a2 - kTol) {
        cal.swapped = false;
        if (q1 + q0 >= 1.0) {
            cal.coin_used = true;
            cal.coin = 1.0 - 1.0 / (q1 + q0);
        }
        // otherwise q0 <= 1/2 - eps/a^2 and the bare POVM already works
    } else {
        // 0/1 reversed: must have q0 <= 1/2 - eps/a^2
        if (q0 > 0.5 - eps_over_a2 + kTol)
            throw std::invalid_argument("calibrate: neither orientation certified");
        cal.swapped = true;
        const double r1 = 1.0 - q0, r0 = 1.0 - q1;
        cal.coin_used = true;
        cal.coin = 1.0 - 1.0 / (r1 + r0);
    }
    return cal;
}

double calibrated_success(const RecoveryCalibration& cal, double p, int xi) {
    const double q = cal.coin_used ? cal.coin : 0.0;
    if (!cal.swapped) return xi ? (1.0 - q) * p : q + (1.0 - q) * (1.0 - p);
    return xi ? q + (1.0 - q) * p : (1.0 - q) * (1.0 - p);
}

double plan_povm_level(const QuantumPlan& plan, int m, const std::vector<double>& coeff) {
    if (coeff.size() != static_cast<size_t>(2 * m))
        throw std::invalid_argument("povm level: coefficient size mismatch");
    double norm2 = 0.0;
    for (double v : coeff) norm2 += v * v;
    if (plan.kind == QuantumPlan::Kind::Gadget) {
        const double d0 = coeff[label_index(m, 0, 1)];
        const double e0 = coeff[label_index(m, 0, 2)];
        const double cj = coeff[label_index(m, 1, plan.j)];
        const double ck = coeff[label_index(m, 1, plan.k)];
        const auto w1 = gadget_postprocess(plan.f);
        double level = 0.0;
        double captured = 0.0;
        for (int b = 0; b < 4; ++b) {
            const double sb1 = (b & 2) ? -1.0 : 1.0;
            const double sb2 = (b & 1) ? -1.0 : 1.0;
            const double ip = 0.5 * (d0 + sb1 * cj + sb2 * ck + sb1 * sb2 * e0);
            level += rat_double(w1[b]) * ip * ip;
            captured += ip * ip;
        }
        return level + 0.5 * std::max(0.0, norm2 - captured);
    }
    if (plan.pairs.size() != 1)
        throw std::invalid_argument("povm level: single-query plans only");
    const double ca = coeff[label_index(m, 1, plan.pairs[0].first)];
    const double cb = coeff[label_index(m, 1, plan.pairs[0].second)];
    const double minus = (ca - cb) * (ca - cb) / 2.0;
    const double plus = (ca + cb) * (ca + cb) / 2.0;
    return minus + 0.5 * std::max(0.0, norm2 - minus - plus);
}

namespace {

// POVM level of the whole (randomness-pooled) decoder on the state with
// coefficients phi over (c, j): the deferred workspace isometry routes
// each label's mass back to the plans that queried it.
double pooled_povm_level(const OneQueryQuantumDecoder& dec, int i,
                         const QueryAmplitudes& pooled, const std::vector<double>& phi) {
    const int m = dec.m;
    // Control-0 part of phi is phase-free; its norm rides the per-plan
    // dummy direction.
    double phi0_norm2 = 0.0;
    double alpha0_norm2 = 0.0;
    for (int j = 1; j <= m; ++j) {
        phi0_norm2 += phi[label_index(m, 0, j)] * phi[label_index(m, 0, j)];
        alpha0_norm2 += pooled.alpha[label_index(m, 0, j)] * pooled.alpha[label_index(m, 0, j)];
    }
    const double phi0 = std::sqrt(phi0_norm2);
    double level = 0.0;
    for (const auto& plan : dec.plans_for(i)) {
        const double w = rat_double(plan.weight);
        const QueryAmplitudes pq = plan_query_amplitudes(plan, m);
        std::vector<double> branch(2 * m, 0.0);
        if (alpha0_norm2 > 0.0) {
            const double a0_plan = pq.alpha[label_index(m, 0, 1)];
            branch[label_index(m, 0, 1)] =
                phi0 * std::sqrt(w) * a0_plan / std::sqrt(alpha0_norm2);
        }
        for (int j = 1; j <= m; ++j) {
            const int t = label_index(m, 1, j);
            if (pooled.alpha[t] > 0.0 && pq.alpha[t] > 0.0)
                branch[t] = phi[t] * std::sqrt(w) * pq.alpha[t] / pooled.alpha[t];
        }
        level += plan_povm_level(plan, m, branch);
    }
    return level;
}

std::vector<double> a_part_coefficients(const AmplitudeSplit& split, const Word& cw) {
    const int m = split.query.m;
    std::vector<double> phi(2 * m, 0.0);
    for (int c = 0; c <= 1; ++c)
        for (int j = 1; j <= m; ++j) {
            const int t = label_index(m, c, j);
            if (split.in_b[t]) continue;
            const double sign = (c & cw.symbols[j - 1]) ? -1.0 : 1.0;
            phi[t] = split.query.alpha[t] * sign / split.a;
        }
    return phi;
}

}  // namespace

RacBitOutcome rac_recover_bit(const Code& code, const OneQueryQuantumDecoder& dec, int i,
                              const RacOptions& opt) {
    if (code.n > kMaxEnumN)
        throw std::invalid_argument("rac: n exceeds enumeration cap");
    if (dec.queries != 1)
        throw std::invalid_argument("rac: pipeline applies to one-query decoders");
    if (code.m != dec.m) throw std::invalid_argument("rac: code/decoder shape mismatch");
    const int total = 1 << code.n;
    RacBitOutcome out;
    out.i = i;
    out.success_per_x.assign(total, 0.0);

    std::vector<Word> codewords;
    codewords.reserve(total);
    for (uint32_t x = 0; x < static_cast<uint32_t>(total); ++x)
        codewords.push_back(code.encode(x));

    if (opt.randomness == Randomness::Pooled) {
        const QueryAmplitudes pooled = pooled_query_amplitudes(dec, i, opt.spread_inert);
        out.split = split_query(pooled, opt.delta, opt.mode);
        out.extraction_prob = extraction_probability(out.split);
        const double a2 = out.split.a * out.split.a;
        if (a2 <= 0.0) throw std::invalid_argument("rac: empty small-amplitude part");

        out.povm_level_per_x.assign(total, 0.0);
        double q1 = 1.0, q0 = 0.0;
        bool has1 = false, has0 = false;
        for (int x = 0; x < total; ++x) {
            const auto phi = a_part_coefficients(out.split, codewords[x]);
            const double p = pooled_povm_level(dec, i, pooled, phi);
            out.povm_level_per_x[x] = p;
            if (message_bit(x, i)) {
                q1 = has1 ? std::min(q1, p) : p;
                has1 = true;
            } else {
                q0 = has0 ? std::max(q0, p) : p;
                has0 = true;
            }
        }
        if (!has1 || !has0) throw std::invalid_argument("rac: degenerate message space");
        out.calibration = make_calibration(q1, q0, opt.eps / a2);
        for (int x = 0; x < total; ++x) {
            const double body =
                calibrated_success(out.calibration, out.povm_level_per_x[x], message_bit(x, i));
            out.success_per_x[x] = out.extraction_prob * body +
                                   (1.0 - out.extraction_prob) * 0.5;
        }
    } else {
        // Per-plan: independent split, extraction and calibration for each
        // random string, success averaged.
        double extraction_acc = 0.0;
        for (const auto& plan : dec.plans_for(i)) {
            const double w = rat_double(plan.weight);
            const QueryAmplitudes pq = plan_query_amplitudes(plan, dec.m);
            const AmplitudeSplit split = split_query(pq, opt.delta, opt.mode);
            const double e = extraction_probability(split);
            extraction_acc += w * e;
            const double a2 = split.a * split.a;
            if (a2 <= 0.0)
                throw std::invalid_argument("rac: plan loses all amplitude to the large part");
            std::vector<double> level(total, 0.0);
            double q1 = 1.0, q0 = 0.0;
            bool has1 = false, has0 = false;
            for (int x = 0; x < total; ++x) {
                const auto phi = a_part_coefficients(split, codewords[x]);
                level[x] = plan_povm_level(plan, dec.m, phi);
                if (message_bit(x, i)) {
                    q1 = has1 ? std::min(q1, level[x]) : level[x];
                    has1 = true;
                } else {
                    q0 = has0 ? std::max(q0, level[x]) : level[x];
                    has0 = true;
                }
            }
            // Per-plan calibration is self-scaled: the plan's own gap
            // plays the role of 2 eps / a^2.
            const RecoveryCalibration cal =
                make_calibration(q1, q0, std::max(0.0, (q1 - q0) / 2.0));
            for (int x = 0; x < total; ++x) {
                const double body = calibrated_success(cal, level[x], message_bit(x, i));
                out.success_per_x[x] += w * (e * body + (1.0 - e) * 0.5);
            }
        }
        out.extraction_prob = extraction_acc;
    }
    out.min_success = *std::min_element(out.success_per_x.begin(), out.success_per_x.end());
    return out;
}

EntropyLedger nayak_audit(const std::vector<DensityMatrix>& rho_x,
                          const std::vector<double>& p_bits) {
    if (rho_x.empty()) throw std::invalid_argument("audit: no encoded states");
    const int total = static_cast<int>(rho_x.size());
    const int n = static_cast<int>(std::round(std::log2(total)));
    if ((1 << n) != total)
        throw std::invalid_argument("audit: message count is not a power of two");
    if (static_cast<int>(p_bits.size()) != n)
        throw std::invalid_argument("audit: per-bit probability count mismatch");
    const int d = rho_x[0].dim();
    for (const auto& r : rho_x)
        if (r.dim() != d) throw std::invalid_argument("audit: state dimension mismatch");
    const int qubits = static_cast<int>(std::round(std::log2(d)));
    if ((1 << qubits) != d)
        throw std::invalid_argument("audit: state dimension is not a power of two");

    EntropyLedger led;
    led.n = n;
    led.qubits = qubits;
    led.p_bits = p_bits;

    // Joint classical-quantum state, block diagonal over x.
    Mat xm = Mat::Zero(total * d, total * d);
    const double px = 1.0 / total;
    for (int x = 0; x < total; ++x)
        xm.block(x * d, x * d, d, d) = px * rho_x[x].entries;
    DensityMatrix joint{xm, std::make_pair(total, d)};
    led.s_xm = von_neumann_entropy(joint);
    DensityMatrix mx{partial_trace(xm, total, d, 0), std::nullopt};
    DensityMatrix mm{partial_trace(xm, total, d, 1), std::nullopt};
    led.s_x = von_neumann_entropy(mx);
    led.s_m = von_neumann_entropy(mm);
    led.s_x_given_m = led.s_xm - led.s_m;
    led.s_mutual = led.s_x + led.s_m - led.s_xm;

    led.avg_state_entropy = 0.0;
    for (const auto& r : rho_x) led.avg_state_entropy += px * von_neumann_entropy(r);

    led.s_xi_given_m.assign(n, 0.0);
    for (int i = 1; i <= n; ++i) {
        Mat xim = Mat::Zero(2 * d, 2 * d);
        for (int x = 0; x < total; ++x) {
            const int v = message_bit(x, i);
            xim.block(v * d, v * d, d, d) += px * rho_x[x].entries;
        }
        DensityMatrix jm{xim, std::nullopt};
        led.s_xi_given_m[i - 1] = von_neumann_entropy(jm) - led.s_m;
    }

    led.h_p_bits.assign(n, 0.0);
    led.p_min = *std::min_element(p_bits.begin(), p_bits.end());
    for (int i = 0; i < n; ++i) led.h_p_bits[i] = binary_entropy(p_bits[i]);

    auto push = [&led](std::string name, double lhs, std::string rel, double rhs) {
        LedgerCheck c;
        c.name = std::move(name);
        c.lhs = lhs;
        c.rhs = rhs;
        c.relation = rel;
        c.slack = rhs - lhs;
        c.pass = rel == "==" ? std::abs(lhs - rhs) <= kEntropyTol : lhs <= rhs + kEntropyTol;
        led.checks.push_back(c);
    };

    push("S(XM) == n + avg S(rho_x)", led.s_xm, "==", n + led.avg_state_entropy);
    push("S(X) == n", led.s_x, "==", static_cast<double>(n));
    push("S(M) <= qubits", led.s_m, "<=", static_cast<double>(qubits));
    push("S(X:M) <= S(M)", led.s_mutual, "<=", led.s_m);
    double sum_cond = 0.0;
    for (double v : led.s_xi_given_m) sum_cond += v;
    push("S(X|M) <= sum_i S(X_i|M)", led.s_x_given_m, "<=", sum_cond);
    for (int i = 0; i < n; ++i)
        push("H(p_" + std::to_string(i + 1) + ") >= S(X_" + std::to_string(i + 1) + "|M)",
             led.s_xi_given_m[i], "<=", led.h_p_bits[i]);
    push("(1 - H(min p)) n <= qubits", (1.0 - binary_entropy(led.p_min)) * n, "<=",
         static_cast<double>(qubits));

    led.all_pass = std::all_of(led.checks.begin(), led.checks.end(),
                               [](const LedgerCheck& c) { return c.pass; });
    return led;
}

}  // namespace lqdc
