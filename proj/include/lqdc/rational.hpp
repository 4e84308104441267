#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <stdexcept>
#include <string>

namespace lqdc {

// Exact rational arithmetic. All finite probabilities in this project
// (decoder enumerations, gadget outcome weights, recovery probabilities)
// are computed in Rat so that values like 11/14 are equalities, not
// approximations.
using Rat = boost::multiprecision::mpq_rational;

inline std::string rat_str(const Rat& r) { return r.str(); }

inline double rat_double(const Rat& r) { return r.convert_to<double>(); }

// Parses "p", "-p" or "p/q".
inline Rat rat_parse(const std::string& s) {
    try {
        return Rat(s);
    } catch (const std::exception&) {
        throw std::invalid_argument("not a rational: " + s);
    }
}

}  // namespace lqdc
