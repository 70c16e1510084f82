#pragma once

#include <map>
#include <vector>

#include "qaoakit/problems.hpp"
#include "qaoakit/state.hpp"

namespace qaoakit {

// Multilinear polynomial over binary variables; key = sorted variable list,
// the empty key is the constant term.
struct Polynomial {
    std::map<std::vector<int>, double> terms;

    void add(std::vector<int> vars, double coeff);
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator+(const Polynomial& other) const;
    double eval(basis_t assignment) const;  // bit q of `assignment` = variable q

    static Polynomial constant(double c);
    static Polynomial var(int q);
};

// Weighted Z monomials; key = sorted qubit list, empty key = identity.
struct ZTerms {
    std::map<std::vector<int>, double> terms;

    double eval(basis_t assignment) const;  // Z_q eigenvalue = 1 - 2 bit_q
};

struct AffineMap {
    double scale = 1.0;
    double offset = 0.0;
};

// Diagonal separator: semantic phase function g plus, when the catalog has
// an explicit gate form, the encoded circuit. On feasible codewords
// g(x) = scale * f(x) + offset exactly.
struct PhaseSeparator {
    std::shared_ptr<const DiagFn> g;  // over the full encoded index
    AffineMap affine;
    std::vector<GatePrimitive> encoded;  // gamma(1) template gates
    bool has_encoded = false;
    std::vector<std::string> notes;  // e.g. symbolic gate-count bounds
};

// Exact (I-Z)/2 substitution. Degree capped at 4.
ZTerms pseudo_boolean_to_z_terms(const Polynomial& poly);

// Drops the identity term and any per-register sum the encoding pins to a
// constant on codewords, then normalizes common coefficients. The returned
// affine relates the reduced operator to the input polynomial's function:
// H_reduced acts as scale * f + offset on codewords.
struct AffineReduceResult {
    ZTerms reduced;
    AffineMap affine;
};
AffineReduceResult affine_reduce(const ZTerms& z, const Encoding& enc);

// Encoded + semantic separator for a catalog (instance, encoding) pair.
// `mode`: 0 = encoded circuit when available, 1 = semantic only.
PhaseSeparator build_phase_separator(const ProblemInstance& inst, const Encoding& enc);

std::vector<GatePrimitive> z_terms_to_gates(const ZTerms& z);

}  // namespace qaoakit
