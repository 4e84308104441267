#pragma once

#include "lqdc/bounds.hpp"
#include "lqdc/cdec.hpp"
#include "lqdc/codes.hpp"
#include "lqdc/pir.hpp"
#include "lqdc/qcore.hpp"
#include "lqdc/qdec.hpp"
#include "lqdc/rac.hpp"

#include <json.hpp>

#include <string>

namespace lqdc {

// Field order is fixed everywhere so golden files are byte-stable.
using Json = nlohmann::ordered_json;

// Floats rendered with up to 17 significant digits, shortest round-trip.
std::string float_str(double v);

Json state_to_json(const QuantumState& s);
QuantumState state_from_json(const Json& j);

Json density_to_json(const DensityMatrix& d);

// {n, m, ell, word: hex, bits}; symbols packed little-endian, low nibble
// first in each hex byte pair.
Json word_to_json(const Word& w, int n);
Word word_from_json(const Json& j);
std::string word_to_hex(const Word& w);
Word word_from_hex(const std::string& hex, int m, int ell);

Json corruption_to_json(const CorruptionSpec& c);
CorruptionSpec corruption_from_json(const Json& j);

Json decoder_to_json(const TwoQueryDecoder& d);
TwoQueryDecoder decoder_from_json(const Json& j);

Json smooth_report_to_json(const SmoothReport& r);
Json fourier_to_json(const FourierSelection& f);

Json gadget_trace_to_json(const GadgetTrace& t);

Json ledger_to_json(const EntropyLedger& l);

Json bound_report_to_json(const BoundReport& r);
std::string bound_report_csv_header();
std::string bound_report_csv_row(const BoundReport& r);

Json scheme_descriptor_to_json(const PirScheme& s, const std::string& family, int d = 0);

// One row per (randomness value, server): queries and answers for x.
std::string pir_transcript_csv(const PirScheme& s, uint32_t x, int i);

}  // namespace lqdc
