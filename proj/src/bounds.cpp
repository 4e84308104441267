#include "lqdc/bounds.hpp"

#include <cmath>
#include <stdexcept>

namespace lqdc {

double binary_entropy(double p) {
    if (p < 0.0 || p > 1.0) throw std::invalid_argument("binary entropy: p outside [0,1]");
    if (p == 0.0 || p == 1.0) return 0.0;
    return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

std::string formula_name(BoundFormula f) {
    switch (f) {
        case BoundFormula::Ldc2: return "ldc2";
        case BoundFormula::Ldc2Xor: return "ldc2_xor";
        case BoundFormula::Lqdc1: return "lqdc1";
        case BoundFormula::Ldc2Alphabet: return "ldc2_alphabet";
        case BoundFormula::Pir2: return "pir2";
        case BoundFormula::Pir2Xor: return "pir2_xor";
    }
    throw std::invalid_argument("unknown formula");
}

BoundFormula formula_from_name(const std::string& name) {
    if (name == "ldc2") return BoundFormula::Ldc2;
    if (name == "ldc2_xor") return BoundFormula::Ldc2Xor;
    if (name == "lqdc1") return BoundFormula::Lqdc1;
    if (name == "ldc2_alphabet") return BoundFormula::Ldc2Alphabet;
    if (name == "pir2") return BoundFormula::Pir2;
    if (name == "pir2_xor") return BoundFormula::Pir2Xor;
    throw std::invalid_argument("unknown formula id: " + name);
}

namespace {

void check_params(BoundFormula f, const BoundParams& p) {
    if (p.n < 1) throw std::invalid_argument("bound: n must be positive");
    if (p.eps < 0.0 || p.eps > 0.5)
        throw std::invalid_argument("bound: eps outside [0, 1/2]");
    const bool needs_delta = f == BoundFormula::Ldc2 || f == BoundFormula::Ldc2Xor ||
                             f == BoundFormula::Lqdc1 || f == BoundFormula::Ldc2Alphabet;
    if (needs_delta && (p.delta < 0.0 || p.delta > 1.0))
        throw std::invalid_argument("bound: delta outside [0,1]");
    if (f == BoundFormula::Ldc2Alphabet && (p.ell < 1 || p.ell > 16))
        throw std::invalid_argument("bound: ell out of range");
}

}  // namespace

double bound_coefficient(BoundFormula f, const BoundParams& p) {
    check_params(f, p);
    const double de = p.delta * p.eps;
    switch (f) {
        case BoundFormula::Ldc2: return 1.0 - binary_entropy(0.5 + 3.0 * de / 14.0);
        case BoundFormula::Ldc2Xor: return 1.0 - binary_entropy(0.5 + 3.0 * de / 8.0);
        case BoundFormula::Lqdc1: return 1.0 - binary_entropy(0.5 + de / 4.0);
        case BoundFormula::Ldc2Alphabet:
            return 1.0 - binary_entropy(0.5 + de / std::pow(2.0, 3 * p.ell + 1));
        case BoundFormula::Pir2: return 1.0 - binary_entropy(0.5 + 4.0 * p.eps / 7.0);
        case BoundFormula::Pir2Xor: return 1.0 - binary_entropy(0.5 + p.eps);
    }
    throw std::invalid_argument("unknown formula");
}

double bound_value(BoundFormula f, const BoundParams& p) {
    const double c = bound_coefficient(f, p);
    switch (f) {
        case BoundFormula::Ldc2:
        case BoundFormula::Ldc2Xor:
        case BoundFormula::Lqdc1: return c * p.n - 1.0;
        case BoundFormula::Ldc2Alphabet: return c * p.n - p.ell;
        case BoundFormula::Pir2: return c * p.n - 2.0;
        case BoundFormula::Pir2Xor: return c * p.n - 1.0;
    }
    throw std::invalid_argument("unknown formula");
}

BoundReport check_instance(double measured, BoundFormula f, const BoundParams& p) {
    BoundReport rep;
    rep.formula = f;
    rep.params = p;
    rep.bound = bound_value(f, p);
    rep.measured = measured;
    rep.slack = measured - rep.bound;
    rep.pass = rep.slack >= -1e-9;
    return rep;
}

}  // namespace lqdc
