#include "lqdc/serialize.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace lqdc {

std::string float_str(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

Json complex_pair(const Cplx& c) { return Json::array({c.real(), c.imag()}); }

int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    throw std::invalid_argument("bad hex digit");
}

}  // namespace

Json state_to_json(const QuantumState& s) {
    Json j;
    j["dim"] = s.dim();
    Json amps = Json::array();
    for (int t = 0; t < s.dim(); ++t) amps.push_back(complex_pair(s.amplitudes(t)));
    j["amplitudes"] = amps;
    if (s.labels) {
        Json labels = Json::array();
        for (const auto& l : *s.labels) labels.push_back(l.parts);
        j["labels"] = labels;
    }
    if (s.split) j["split"] = Json::array({s.split->first, s.split->second});
    return j;
}

QuantumState state_from_json(const Json& j) {
    const int dim = j.at("dim").get<int>();
    Vec amps(dim);
    const auto& arr = j.at("amplitudes");
    if (static_cast<int>(arr.size()) != dim)
        throw std::invalid_argument("state json: amplitude count mismatch");
    for (int t = 0; t < dim; ++t)
        amps(t) = Cplx(arr[t].at(0).get<double>(), arr[t].at(1).get<double>());
    QuantumState s{std::move(amps), std::nullopt, std::nullopt};
    if (j.contains("labels")) {
        std::vector<Label> labels;
        for (const auto& l : j.at("labels")) {
            Label lab;
            lab.parts = l.get<std::vector<int>>();
            labels.push_back(std::move(lab));
        }
        s.labels = std::move(labels);
    }
    if (j.contains("split"))
        s.split = std::make_pair(j.at("split").at(0).get<int>(), j.at("split").at(1).get<int>());
    s.validate();
    return s;
}

Json density_to_json(const DensityMatrix& d) {
    Json j;
    j["dim"] = d.dim();
    Json rows = Json::array();
    for (int r = 0; r < d.dim(); ++r) {
        Json row = Json::array();
        for (int c = 0; c < d.dim(); ++c) row.push_back(complex_pair(d.entries(r, c)));
        rows.push_back(row);
    }
    j["entries"] = rows;
    if (d.split) j["split"] = Json::array({d.split->first, d.split->second});
    return j;
}

std::string word_to_hex(const Word& w) {
    // Symbols laid out as consecutive ell-bit fields, low bit first,
    // packed into bytes; bytes rendered as two hex digits each.
    const int total_bits = w.length() * w.ell;
    std::string out;
    out.reserve((total_bits + 7) / 8 * 2);
    uint32_t acc = 0;
    int acc_bits = 0;
    auto flush_byte = [&](bool force) {
        while (acc_bits >= 8 || (force && acc_bits > 0)) {
            const uint32_t byte = acc & 0xFF;
            static const char* digits = "0123456789abcdef";
            out.push_back(digits[byte >> 4]);
            out.push_back(digits[byte & 0xF]);
            acc >>= 8;
            acc_bits = std::max(0, acc_bits - 8);
        }
    };
    for (int s = 0; s < w.length(); ++s) {
        acc |= w.symbols[s] << acc_bits;
        acc_bits += w.ell;
        flush_byte(false);
    }
    flush_byte(true);
    return out;
}

Word word_from_hex(const std::string& hex, int m, int ell) {
    Word w;
    w.ell = ell;
    w.symbols.assign(m, 0);
    std::vector<uint8_t> bytes;
    if (hex.size() % 2) throw std::invalid_argument("word hex: odd digit count");
    for (size_t p = 0; p < hex.size(); p += 2)
        bytes.push_back(static_cast<uint8_t>(hex_digit(hex[p]) * 16 + hex_digit(hex[p + 1])));
    for (int s = 0; s < m; ++s) {
        uint32_t v = 0;
        for (int b = 0; b < ell; ++b) {
            const int bit_index = s * ell + b;
            const size_t byte = bit_index / 8;
            if (byte >= bytes.size()) throw std::invalid_argument("word hex: too short");
            v |= ((bytes[byte] >> (bit_index % 8)) & 1u) << b;
        }
        w.symbols[s] = v;
    }
    w.validate();
    return w;
}

Json word_to_json(const Word& w, int n) {
    Json j;
    j["n"] = n;
    j["m"] = w.length();
    j["ell"] = w.ell;
    j["word"] = word_to_hex(w);
    j["bits"] = w.length() * w.ell;
    return j;
}

Word word_from_json(const Json& j) {
    return word_from_hex(j.at("word").get<std::string>(), j.at("m").get<int>(),
                         j.at("ell").get<int>());
}

Json corruption_to_json(const CorruptionSpec& c) {
    Json j;
    j["delta"] = c.delta;
    if (c.seed)
        j["seed"] = *c.seed;
    else
        j["positions"] = c.positions;
    return j;
}

CorruptionSpec corruption_from_json(const Json& j) {
    CorruptionSpec c;
    c.delta = j.at("delta").get<double>();
    if (j.contains("seed"))
        c.seed = j.at("seed").get<uint64_t>();
    else if (j.contains("positions"))
        c.positions = j.at("positions").get<std::vector<int>>();
    return c;
}

namespace {

std::string table_hex(const SymbolFn& f) {
    std::string out;
    const int digits = std::max(1, f.table_bits() / 4);
    static const char* hexd = "0123456789abcdef";
    for (int d = digits - 1; d >= 0; --d) out.push_back(hexd[(f.table >> (4 * d)) & 0xF]);
    return out;
}

SymbolFn table_from_hex(int ell, const std::string& hex) {
    SymbolFn f{ell, 0};
    f.validate();
    for (char c : hex) f.table = (f.table << 4) | static_cast<uint64_t>(hex_digit(c));
    return f;
}

}  // namespace

Json decoder_to_json(const TwoQueryDecoder& d) {
    Json j;
    j["n"] = d.n;
    j["m"] = d.m;
    j["ell"] = d.ell;
    Json targets = Json::array();
    for (int i = 1; i <= d.n; ++i) {
        Json entry;
        entry["i"] = i;
        Json plans = Json::array();
        for (const auto& p : d.plans[i - 1]) {
            Json pj;
            pj["weight"] = rat_str(p.weight);
            pj["j"] = p.j;
            pj["k"] = p.k;
            pj["f"] = table_hex(p.f);
            plans.push_back(pj);
        }
        entry["plans"] = plans;
        targets.push_back(entry);
    }
    j["targets"] = targets;
    return j;
}

TwoQueryDecoder decoder_from_json(const Json& j) {
    TwoQueryDecoder d;
    d.n = j.at("n").get<int>();
    d.m = j.at("m").get<int>();
    d.ell = j.at("ell").get<int>();
    d.plans.resize(d.n);
    for (const auto& entry : j.at("targets")) {
        const int i = entry.at("i").get<int>();
        if (i < 1 || i > d.n) throw std::invalid_argument("decoder json: target out of range");
        for (const auto& pj : entry.at("plans")) {
            QueryPlan p;
            p.weight = rat_parse(pj.at("weight").get<std::string>());
            p.j = pj.at("j").get<int>();
            p.k = pj.at("k").get<int>();
            p.f = table_from_hex(d.ell, pj.at("f").get<std::string>());
            d.plans[i - 1].push_back(std::move(p));
        }
    }
    d.validate();
    return d;
}

Json smooth_report_to_json(const SmoothReport& r) {
    Json j;
    j["m"] = r.m;
    j["c"] = rat_str(r.c);
    j["argmax_i"] = r.argmax_i;
    j["argmax_j"] = r.argmax_j;
    Json rows = Json::array();
    for (const auto& per_i : r.query_probability) {
        Json row = Json::array();
        for (const auto& p : per_i) row.push_back(rat_str(p));
        rows.push_back(row);
    }
    j["query_probability"] = rows;
    return j;
}

Json fourier_to_json(const FourierSelection& f) {
    Json j;
    j["s0"] = f.s0;
    j["t0"] = f.t0;
    j["sign"] = f.sign;
    j["eta"] = rat_str(f.eta);
    j["correlation"] = rat_str(f.correlation);
    Json rows = Json::array();
    for (const auto& row : f.coefficients) {
        Json r = Json::array();
        for (const auto& c : row) r.push_back(rat_str(c));
        rows.push_back(r);
    }
    j["coefficients"] = rows;
    return j;
}

Json gadget_trace_to_json(const GadgetTrace& t) {
    Json j;
    j["input"] = Json::array({t.input[0], t.input[1]});
    j["query_state"] = {{"scale", "1/sqrt(3)"},
                        {"coefficients", Json::array({1, 1, 1, 0})}};
    j["post_oracle"] = {{"scale", "1/sqrt(3)"},
                        {"coefficients", Json::array({t.post_oracle_signs[0],
                                                      t.post_oracle_signs[1],
                                                      t.post_oracle_signs[2],
                                                      t.post_oracle_signs[3]})}};
    Json probs = Json::array();
    for (const auto& p : t.outcome_prob) probs.push_back(rat_str(p));
    j["outcome_probabilities"] = probs;
    Json post = Json::array();
    for (const auto& p : t.output_one_given_b) post.push_back(rat_str(p));
    j["output_one_given_outcome"] = post;
    j["p_one"] = rat_str(t.p_one);
    j["p_correct"] = rat_str(t.p_correct);
    return j;
}

Json ledger_to_json(const EntropyLedger& l) {
    Json j;
    j["n"] = l.n;
    j["qubits"] = l.qubits;
    j["S_XM"] = float_str(l.s_xm);
    j["S_X"] = float_str(l.s_x);
    j["S_M"] = float_str(l.s_m);
    j["S_X_given_M"] = float_str(l.s_x_given_m);
    j["S_X_M_mutual"] = float_str(l.s_mutual);
    j["avg_state_entropy"] = float_str(l.avg_state_entropy);
    Json cond = Json::array();
    for (double v : l.s_xi_given_m) cond.push_back(float_str(v));
    j["S_Xi_given_M"] = cond;
    Json pb = Json::array();
    for (double v : l.p_bits) pb.push_back(float_str(v));
    j["p_bits"] = pb;
    Json hb = Json::array();
    for (double v : l.h_p_bits) hb.push_back(float_str(v));
    j["H_p_bits"] = hb;
    j["p_min"] = float_str(l.p_min);
    Json checks = Json::array();
    for (const auto& c : l.checks) {
        Json cj;
        cj["name"] = c.name;
        cj["lhs"] = float_str(c.lhs);
        cj["rhs"] = float_str(c.rhs);
        cj["relation"] = c.relation;
        cj["slack"] = float_str(c.slack);
        cj["pass"] = c.pass;
        checks.push_back(cj);
    }
    j["checks"] = checks;
    j["all_pass"] = l.all_pass;
    return j;
}

Json bound_report_to_json(const BoundReport& r) {
    Json j;
    j["formula"] = formula_name(r.formula);
    j["n"] = r.params.n;
    j["delta"] = r.params.delta;
    j["eps"] = r.params.eps;
    j["ell"] = r.params.ell;
    j["bound"] = float_str(r.bound);
    j["measured"] = float_str(r.measured);
    j["slack"] = float_str(r.slack);
    j["pass"] = r.pass;
    return j;
}

std::string bound_report_csv_header() {
    return "formula,n,delta,eps,ell,bound,measured,slack,pass";
}

std::string bound_report_csv_row(const BoundReport& r) {
    std::ostringstream os;
    os << formula_name(r.formula) << ',' << r.params.n << ',' << float_str(r.params.delta)
       << ',' << float_str(r.params.eps) << ',' << r.params.ell << ',' << float_str(r.bound)
       << ',' << float_str(r.measured) << ',' << float_str(r.slack) << ','
       << (r.pass ? "pass" : "fail");
    return os.str();
}

Json scheme_descriptor_to_json(const PirScheme& s, const std::string& family, int d) {
    Json j;
    j["k"] = s.k;
    j["n"] = s.n;
    j["t"] = s.t;
    j["a_len"] = s.a_len;
    j["family"] = family;
    if (d > 0) j["d"] = d;
    j["xor_type"] = s.xor_type;
    j["eps"] = s.eps;
    return j;
}

std::string pir_transcript_csv(const PirScheme& s, uint32_t x, int i) {
    std::ostringstream os;
    os << "randomness,server,query,answer\n";
    for (uint32_t r = 0; r < s.randomness_count(); ++r) {
        const auto qs = s.queries(i, r);
        for (int server = 1; server <= s.k; ++server)
            os << r << ',' << server << ',' << qs[server - 1] << ','
               << s.answer(x, server, qs[server - 1]) << '\n';
    }
    return os.str();
}

}  // namespace lqdc
