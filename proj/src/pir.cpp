#include "lqdc/pir.hpp"

#include "lqdc/qdec.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace lqdc {

void PirScheme::validate() const {
    if (k < 1 || n < 1) throw std::invalid_argument("pir: empty scheme");
    if (t < 1 || t > kMaxQueryBits)
        throw std::invalid_argument("pir: query length outside [1,12]");
    if (rand_bits < 0 || rand_bits > 2 * kMaxQueryBits)
        throw std::invalid_argument("pir: randomness space too large to enumerate");
    if (a_len < 1 || a_len > kMaxSymbolEll)
        throw std::invalid_argument("pir: answer length outside [1,3]");
    if (!queries || !answer || !reconstruct)
        throw std::invalid_argument("pir: scheme functions missing");
}

PirScheme xor2_scheme(int n) {
    if (n < 1 || n > kMaxQueryBits) throw std::invalid_argument("xor2: n outside [1,12]");
    PirScheme s;
    s.k = 2;
    s.n = n;
    s.t = n;
    s.a_len = 1;
    s.rand_bits = n;
    s.xor_type = true;
    s.eps = 0.5;
    s.queries = [n](int i, uint32_t r) {
        const uint32_t mask = (n == 32) ? ~0u : ((1u << n) - 1);
        const uint32_t s1 = r & mask;
        const uint32_t s2 = s1 ^ (1u << (i - 1));
        return std::vector<uint32_t>{s1, s2};
    };
    s.answer = [](uint32_t x, int /*server*/, uint32_t q) {
        return static_cast<uint32_t>(std::popcount(x & q) & 1);
    };
    s.reconstruct = [](int /*i*/, uint32_t /*r*/, const std::vector<uint32_t>& a) {
        return static_cast<int>((a.at(0) ^ a.at(1)) & 1u);
    };
    return s;
}

namespace {

int int_root(int n, int d) {
    for (int w = 1; w <= n; ++w) {
        int p = 1;
        for (int r = 0; r < d; ++r) p *= w;
        if (p == n) return w;
        if (p > n) break;
    }
    return 0;
}

}  // namespace

PirScheme cube_scheme(int n, int d) {
    if (d < 1 || d > 3) throw std::invalid_argument("cube: d outside [1,3]");
    const int w = int_root(n, d);
    if (w == 0) throw std::invalid_argument("cube: n is not a d-th power");
    if (d * w > kMaxQueryBits) throw std::invalid_argument("cube: query length exceeds cap");
    PirScheme s;
    s.k = 1 << d;
    s.n = n;
    s.t = d * w;
    s.a_len = 1;
    s.rand_bits = d * w;
    s.xor_type = true;
    s.eps = 0.5;
    const uint32_t wmask = (1u << w) - 1;
    // Cell coordinates of database index i (1-based): little-endian base w.
    auto coords = [w, d](int i) {
        std::vector<int> c(d);
        int v = i - 1;
        for (int r = 0; r < d; ++r) {
            c[r] = v % w;
            v /= w;
        }
        return c;
    };
    s.queries = [=](int i, uint32_t r) {
        const auto ic = coords(i);
        std::vector<uint32_t> qs;
        qs.reserve(1u << d);
        for (uint32_t beta = 0; beta < (1u << d); ++beta) {
            uint32_t q = 0;
            for (int dim = 0; dim < d; ++dim) {
                uint32_t sub = (r >> (dim * w)) & wmask;
                if (beta & (1u << dim)) sub ^= 1u << ic[dim];
                q |= sub << (dim * w);
            }
            qs.push_back(q);
        }
        return qs;
    };
    s.answer = [=](uint32_t x, int /*server*/, uint32_t q) {
        // Parity of x over the product of the d subsets packed in q.
        int parity = 0;
        for (int i = 1; i <= n; ++i) {
            const auto ic = coords(i);
            bool inside = true;
            for (int dim = 0; dim < d && inside; ++dim) {
                const uint32_t sub = (q >> (dim * w)) & wmask;
                inside = (sub >> ic[dim]) & 1u;
            }
            if (inside) parity ^= message_bit(x, i);
        }
        return static_cast<uint32_t>(parity);
    };
    s.reconstruct = [](int /*i*/, uint32_t /*r*/, const std::vector<uint32_t>& a) {
        uint32_t v = 0;
        for (uint32_t b : a) v ^= b;
        return static_cast<int>(v & 1u);
    };
    return s;
}

PirScheme leaky_scheme(int n) {
    PirScheme s = xor2_scheme(n);
    s.queries = [](int i, uint32_t /*r*/) {
        const uint32_t q = 1u << (i - 1);
        return std::vector<uint32_t>{q, q};
    };
    s.eps = 0.0;
    return s;
}

bool verify_xor_reconstruct(const PirScheme& s) {
    s.validate();
    if (s.a_len != 1) return false;
    for (int i = 1; i <= s.n; ++i)
        for (uint32_t r = 0; r < s.randomness_count(); ++r)
            for (uint32_t bits = 0; bits < (1u << s.k); ++bits) {
                std::vector<uint32_t> ans(s.k);
                int parity = 0;
                for (int j = 0; j < s.k; ++j) {
                    ans[j] = (bits >> j) & 1u;
                    parity ^= static_cast<int>(ans[j]);
                }
                if (s.reconstruct(i, r, ans) != parity) return false;
            }
    return true;
}

Rat evaluate_pir(const PirScheme& s, uint32_t x, int i) {
    s.validate();
    if (i < 1 || i > s.n) throw std::invalid_argument("pir: target out of range");
    int64_t good = 0;
    for (uint32_t r = 0; r < s.randomness_count(); ++r) {
        const auto qs = s.queries(i, r);
        std::vector<uint32_t> ans(s.k);
        for (int j = 0; j < s.k; ++j) ans[j] = s.answer(x, j + 1, qs[j]);
        if (s.reconstruct(i, r, ans) == message_bit(x, i)) ++good;
    }
    return Rat(good, static_cast<int64_t>(s.randomness_count()));
}

ClassicalPrivacyReport classical_privacy_audit(const PirScheme& s) {
    s.validate();
    const int64_t total = s.randomness_count();
    ClassicalPrivacyReport rep;
    rep.max_tv = 0;
    // Query distribution per (target, server), then pairwise TV distance.
    for (int server = 1; server <= s.k; ++server) {
        std::vector<std::map<uint32_t, int64_t>> dist(s.n);
        for (int i = 1; i <= s.n; ++i)
            for (uint32_t r = 0; r < s.randomness_count(); ++r)
                ++dist[i - 1][s.queries(i, r).at(server - 1)];
        for (int i = 1; i <= s.n; ++i)
            for (int i2 = i + 1; i2 <= s.n; ++i2) {
                int64_t l1 = 0;
                std::map<uint32_t, int64_t> merged = dist[i - 1];
                for (const auto& [q, c] : dist[i2 - 1]) merged[q] -= c;
                for (const auto& [q, diff] : merged) l1 += std::abs(diff);
                const Rat tv = Rat(l1, 2 * total);
                if (tv > rep.max_tv) {
                    rep.max_tv = tv;
                    rep.worst_server = server;
                    rep.worst_pair = {i, i2};
                }
            }
    }
    return rep;
}

QuantumPirProtocol reduce_two_servers(const PirScheme& s, ReductionPath path) {
    s.validate();
    if (s.k != 2) throw std::invalid_argument("reduction: two-server schemes only");
    if (s.a_len != 1) throw std::invalid_argument("reduction: one-bit answers only");
    if (path == ReductionPath::XorType && !verify_xor_reconstruct(s))
        throw std::invalid_argument("reduction: scheme output is not the answer XOR");
    QuantumPirProtocol proto;
    proto.scheme = s;
    proto.path = path;
    proto.sent_dim = 1 + 2 * (1 << s.t);
    return proto;
}

namespace {

// Truth table of the user's output as a function of the two answers.
SymbolFn reconstruct_table(const PirScheme& s, int i, uint32_t r) {
    std::vector<int> vals(4);
    for (int a1 = 0; a1 <= 1; ++a1)
        for (int a2 = 0; a2 <= 1; ++a2)
            vals[(a1 << 1) | a2] = s.reconstruct(
                i, r, {static_cast<uint32_t>(a1), static_cast<uint32_t>(a2)});
    return SymbolFn::from_values(1, vals);
}

}  // namespace

Rat quantum_pir_recovery(const QuantumPirProtocol& proto, uint32_t x, int i) {
    const PirScheme& s = proto.scheme;
    const int xi = message_bit(x, i);
    Rat success = 0;
    const Rat w = Rat(1, static_cast<int64_t>(s.randomness_count()));
    for (uint32_t r = 0; r < s.randomness_count(); ++r) {
        const auto qs = s.queries(i, r);
        const int a1 = static_cast<int>(s.answer(x, 1, qs[0]) & 1u);
        const int a2 = static_cast<int>(s.answer(x, 2, qs[1]) & 1u);
        if (proto.path == ReductionPath::Generic) {
            const GadgetTrace tr = run_gadget(reconstruct_table(s, i, r), a1, a2);
            success += w * (xi ? tr.p_one : Rat(1) - tr.p_one);
        } else {
            const XorGadgetOutcome o = xor_gadget(a1, a2);
            if (o.bit == xi) success += w * o.probability;
        }
    }
    return success;
}

namespace {

// Reduced state of the sent registers: rows index the user-kept part
// (randomness, branch), columns the sent basis.
Mat server_reduced_density(const QuantumPirProtocol& proto, int i) {
    const PirScheme& s = proto.scheme;
    const uint32_t R = s.randomness_count();
    const int q_count = 1 << s.t;
    const int branches = proto.path == ReductionPath::Generic ? 3 : 2;
    const double amp = 1.0 / std::sqrt(static_cast<double>(R) * branches);
    Mat c = Mat::Zero(static_cast<Eigen::Index>(R) * branches, proto.sent_dim);
    for (uint32_t r = 0; r < R; ++r) {
        const auto qs = s.queries(i, r);
        const int row = static_cast<int>(r) * branches;
        if (proto.path == ReductionPath::Generic) {
            c(row + 0, 0) = amp;
            c(row + 1, 1 + static_cast<int>(qs[0])) = amp;
            c(row + 2, 1 + q_count + static_cast<int>(qs[1])) = amp;
        } else {
            c(row + 0, 1 + static_cast<int>(qs[0])) = amp;
            c(row + 1, 1 + q_count + static_cast<int>(qs[1])) = amp;
        }
    }
    return c.adjoint() * c;
}

}  // namespace

QuantumPrivacyReport quantum_privacy_audit(const QuantumPirProtocol& proto) {
    const PirScheme& s = proto.scheme;
    QuantumPrivacyReport rep;
    std::vector<Mat> rho;
    rho.reserve(s.n);
    for (int i = 1; i <= s.n; ++i) rho.push_back(server_reduced_density(proto, i));
    for (int i = 1; i <= s.n; ++i)
        for (int i2 = i + 1; i2 <= s.n; ++i2) {
            const double d = trace_distance(rho[i - 1], rho[i2 - 1]);
            if (d > rep.max_trace_distance) {
                rep.max_trace_distance = d;
                rep.worst_server = 1;
                rep.worst_pair = {i, i2};
            }
        }
    return rep;
}

PairedQuantumPir halve_servers(const PirScheme& s) {
    s.validate();
    if (s.k % 2 != 0) throw std::invalid_argument("halving: server count must be even");
    if (s.a_len != 1) throw std::invalid_argument("halving: one-bit answers only");
    if (!verify_xor_reconstruct(s))
        throw std::invalid_argument("halving: scheme output is not the answer XOR");
    return PairedQuantumPir{s, s.k / 2};
}

Rat paired_recovery(const PairedQuantumPir& p, uint32_t x, int i) {
    const PirScheme& s = p.scheme;
    const int xi = message_bit(x, i);
    int64_t good = 0;
    for (uint32_t r = 0; r < s.randomness_count(); ++r) {
        const auto qs = s.queries(i, r);
        int parity = 0;
        for (int pair = 0; pair < p.quantum_servers; ++pair) {
            const int a1 = static_cast<int>(s.answer(x, 2 * pair + 1, qs[2 * pair]) & 1u);
            const int a2 = static_cast<int>(s.answer(x, 2 * pair + 2, qs[2 * pair + 1]) & 1u);
            parity ^= xor_gadget(a1, a2).bit;
        }
        if (parity == xi) ++good;
    }
    return Rat(good, static_cast<int64_t>(s.randomness_count()));
}

QuantumPrivacyReport paired_privacy_audit(const PairedQuantumPir& p) {
    const PirScheme& s = p.scheme;
    const uint32_t R = s.randomness_count();
    const int q_count = 1 << s.t;
    const double amp = 1.0 / std::sqrt(2.0 * R);
    QuantumPrivacyReport rep;
    for (int pair = 0; pair < p.quantum_servers; ++pair) {
        std::vector<Mat> rho;
        rho.reserve(s.n);
        for (int i = 1; i <= s.n; ++i) {
            Mat c = Mat::Zero(2 * static_cast<Eigen::Index>(R), 2 * q_count);
            for (uint32_t r = 0; r < R; ++r) {
                const auto qs = s.queries(i, r);
                c(2 * r + 0, static_cast<int>(qs[2 * pair])) = amp;
                c(2 * r + 1, q_count + static_cast<int>(qs[2 * pair + 1])) = amp;
            }
            rho.push_back(c.adjoint() * c);
        }
        for (int i = 1; i <= s.n; ++i)
            for (int i2 = i + 1; i2 <= s.n; ++i2) {
                const double d = trace_distance(rho[i - 1], rho[i2 - 1]);
                if (d > rep.max_trace_distance) {
                    rep.max_trace_distance = d;
                    rep.worst_server = pair + 1;
                    rep.worst_pair = {i, i2};
                }
            }
    }
    return rep;
}

PirRacResult pir_to_rac(const PirScheme& s, ReductionPath path) {
    const QuantumPirProtocol proto = reduce_two_servers(s, path);
    const uint32_t R = s.randomness_count();
    const int q_count = 1 << s.t;
    const int branches = path == ReductionPath::Generic ? 3 : 2;
    const double amp2 = 1.0 / (static_cast<double>(R) * branches);

    PirRacResult res;
    res.rac.t = s.t;
    res.rac.dim = proto.sent_dim;
    res.rac.path = path;

    // Branch weights lambda_b = column norms of the kept-to-sent
    // coefficient matrix; privacy makes them target-independent.
    std::vector<std::vector<double>> lambda2(s.n, std::vector<double>(proto.sent_dim, 0.0));
    for (int i = 1; i <= s.n; ++i)
        for (uint32_t r = 0; r < R; ++r) {
            const auto qs = s.queries(i, r);
            if (path == ReductionPath::Generic) {
                lambda2[i - 1][0] += amp2;
                lambda2[i - 1][1 + static_cast<int>(qs[0])] += amp2;
                lambda2[i - 1][1 + q_count + static_cast<int>(qs[1])] += amp2;
            } else {
                lambda2[i - 1][1 + static_cast<int>(qs[0])] += amp2;
                lambda2[i - 1][1 + q_count + static_cast<int>(qs[1])] += amp2;
            }
        }
    for (int i = 2; i <= s.n; ++i)
        for (int b = 0; b < proto.sent_dim; ++b)
            res.max_lambda_deviation =
                std::max(res.max_lambda_deviation,
                         std::abs(std::sqrt(lambda2[i - 1][b]) - std::sqrt(lambda2[0][b])));
    if (res.max_lambda_deviation > 1e-10)
        throw std::invalid_argument("rac extraction: branch weights depend on the target");
    res.rac.lambda.assign(proto.sent_dim, 0.0);
    for (int b = 0; b < proto.sent_dim; ++b) res.rac.lambda[b] = std::sqrt(lambda2[0][b]);

    // Replay: map |b> to |a_ib>|b> and complete the protocol per branch.
    // Each randomness value contributes joint probabilities of (branch r,
    // output); branch amplitudes come from lambda_b and the phases s_{bx}.
    res.recovery.assign(s.n, std::vector<double>(1u << s.n, 0.0));
    res.p_bits.assign(s.n, 1.0);
    const double camp = std::sqrt(amp2);
    for (int i = 1; i <= s.n; ++i) {
        for (uint32_t x = 0; x < (1u << s.n); ++x) {
            double success = 0.0;
            for (uint32_t r = 0; r < R; ++r) {
                const auto qs = s.queries(i, r);
                // Phases of |psi_x> at this branch's basis states.
                const double s1 = (s.answer(x, 1, qs[0]) & 1u) ? -1.0 : 1.0;
                const double s2 = (s.answer(x, 2, qs[1]) & 1u) ? -1.0 : 1.0;
                double joint_one = 0.0;
                double branch_norm2 = 0.0;
                if (path == ReductionPath::Generic) {
                    const auto w1 = gadget_postprocess(reconstruct_table(s, i, r));
                    for (int b = 0; b < 4; ++b) {
                        const double sb1 = (b & 2) ? -1.0 : 1.0;
                        const double sb2 = (b & 1) ? -1.0 : 1.0;
                        const double ip = 0.5 * camp * (1.0 + sb1 * s1 + sb2 * s2);
                        joint_one += rat_double(w1[b]) * ip * ip;
                        branch_norm2 += ip * ip;
                    }
                } else {
                    const double ip_minus = camp * (s1 - s2) / std::sqrt(2.0);
                    const double ip_plus = camp * (s1 + s2) / std::sqrt(2.0);
                    joint_one = ip_minus * ip_minus;
                    branch_norm2 = joint_one + ip_plus * ip_plus;
                }
                success += message_bit(x, i) ? joint_one : branch_norm2 - joint_one;
            }
            res.recovery[i - 1][x] = success;
        }
        res.p_bits[i - 1] =
            *std::min_element(res.recovery[i - 1].begin(), res.recovery[i - 1].end());
    }

    // Cross-check against the protocol's exact recovery.
    for (int i = 1; i <= s.n; ++i)
        for (uint32_t x = 0; x < (1u << s.n); ++x) {
            const double ref = rat_double(quantum_pir_recovery(proto, x, i));
            res.max_recovery_gap =
                std::max(res.max_recovery_gap, std::abs(ref - res.recovery[i - 1][x]));
        }
    return res;
}

QuantumState pir_rac_state(const PirRacResult& r, const PirScheme& s, uint32_t x) {
    const int q_count = 1 << s.t;
    int dim = 1;
    while (dim < r.rac.dim) dim <<= 1;
    Vec amps = Vec::Zero(dim);
    for (int b = 0; b < r.rac.dim; ++b) {
        double phase = 1.0;
        if (b >= 1 && b <= q_count)
            phase = (s.answer(x, 1, static_cast<uint32_t>(b - 1)) & 1u) ? -1.0 : 1.0;
        else if (b > q_count)
            phase = (s.answer(x, 2, static_cast<uint32_t>(b - 1 - q_count)) & 1u) ? -1.0 : 1.0;
        amps(b) = r.rac.lambda[b] * phase;
    }
    QuantumState st{std::move(amps), std::nullopt, std::nullopt};
    st.validate();
    return st;
}

SmoothFromPir pir_to_smooth(const PirScheme& s) {
    s.validate();
    if (s.k != 2) throw std::invalid_argument("smooth extraction: two-server schemes only");
    if (s.n > kMaxEnumN)
        throw std::invalid_argument("smooth extraction: n exceeds enumeration cap");
    const int q_count = 1 << s.t;
    SmoothFromPir out;
    out.m_bound = 6 * q_count;

    Code code;
    code.n = s.n;
    code.m = 2 * q_count;
    code.ell = s.a_len;
    const PirScheme scheme_copy = s;
    code.encode = [scheme_copy, q_count](uint32_t x) {
        Word w;
        w.ell = scheme_copy.a_len;
        w.symbols.reserve(2 * static_cast<size_t>(q_count));
        for (int server = 1; server <= 2; ++server)
            for (int q = 0; q < q_count; ++q)
                w.symbols.push_back(scheme_copy.answer(x, server, static_cast<uint32_t>(q)));
        return w;
    };
    out.code = code;

    TwoQueryDecoder dec;
    dec.n = s.n;
    dec.m = code.m;
    dec.ell = s.a_len;
    dec.plans.resize(s.n);
    const Rat w = Rat(1, static_cast<int64_t>(s.randomness_count()));
    for (int i = 1; i <= s.n; ++i)
        for (uint32_t r = 0; r < s.randomness_count(); ++r) {
            const auto qs = s.queries(i, r);
            const int jpos = 1 + static_cast<int>(qs[0]);
            const int kpos = q_count + 1 + static_cast<int>(qs[1]);
            SymbolFn f{s.a_len, 0};
            std::vector<int> vals(1 << (2 * s.a_len));
            for (uint32_t a = 0; a < (1u << s.a_len); ++a)
                for (uint32_t b = 0; b < (1u << s.a_len); ++b)
                    vals[(a << s.a_len) | b] = s.reconstruct(i, r, {a, b});
            f = SymbolFn::from_values(s.a_len, vals);
            dec.plans[i - 1].push_back(QueryPlan{w, jpos, kpos, f});
        }
    dec.validate();
    out.decoder = dec;
    out.smoothness = audit_smoothness(dec);

    bool first = true;
    for (uint32_t x = 0; x < (1u << s.n); ++x) {
        const Word cw = code.encode(x);
        for (int i = 1; i <= s.n; ++i) {
            const Rat rec = evaluate_decoder(dec, cw, x, i);
            if (first || rec < out.min_recovery) {
                out.min_recovery = rec;
                first = false;
            }
        }
    }
    return out;
}

}  // namespace lqdc
