#pragma once

#include <string>

namespace lqdc {

// -p log2 p - (1-p) log2 (1-p), endpoints 0; rejects p outside [0,1].
double binary_entropy(double p);

// Closed-form length lower bounds. Code-family formulas constrain
// log2(m); PIR formulas constrain the query length t.
enum class BoundFormula {
    Ldc2,          // log2 m >= (1 - H(1/2 + 3 de/14)) n - 1
    Ldc2Xor,       // log2 m >= (1 - H(1/2 + 3 de/8)) n - 1
    Lqdc1,         // log2 m >= (1 - H(1/2 + de/4)) n - 1
    Ldc2Alphabet,  // log2 m >= (1 - H(1/2 + de/2^{3l+1})) n - l
    Pir2,          // t >= (1 - H(1/2 + 4e/7)) n - 2
    Pir2Xor,       // t >= (1 - H(1/2 + e)) n - 1
};

std::string formula_name(BoundFormula f);
BoundFormula formula_from_name(const std::string& name);

struct BoundParams {
    int n = 0;
    double delta = 0.0;
    double eps = 0.0;
    int ell = 1;
};

// The entropy coefficient c in front of n.
double bound_coefficient(BoundFormula f, const BoundParams& p);

// The right-hand side in the formula's native units: an exponent
// (code formulas) or a bit count (PIR formulas).
double bound_value(BoundFormula f, const BoundParams& p);

struct BoundReport {
    BoundFormula formula;
    BoundParams params;
    double bound = 0.0;     // required minimum (exponent or bits)
    double measured = 0.0;  // log2(m) for codes, t for PIR
    double slack = 0.0;     // measured - bound
    bool pass = false;
};

// measured = log2(m) for code formulas, t for PIR formulas. The check
// direction is always instance-versus-bound: pass means the constructed
// object is consistent with the lower bound.
BoundReport check_instance(double measured, BoundFormula f, const BoundParams& p);

}  // namespace lqdc
