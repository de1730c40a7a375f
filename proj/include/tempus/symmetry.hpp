#pragma once

#include <string>
#include <vector>

#include "tempus/operators.hpp"
#include "tempus/system.hpp"

namespace tempus {

// Parity and time reversal act on the energy basis as index maps: parity
// sends mode k at gamma to mode -k at -gamma, and time reversal composes
// that flip with complex conjugation. Conjugating a matrix by either
// therefore lands in the mirrored-gamma basis, and the five relations
// checked below compare such conjugates against operators built directly
// at the mirrored (or same) gamma.

EnergyMatrix apply_parity(const EnergyMatrix& m);
EnergyMatrix apply_time_reversal(const EnergyMatrix& m);

enum class Relation {
    ThetaPiSelf, // conjugation by both maps returns to gamma; vs -T(gamma)
    ThetaMirror, // time reversal alone; vs -T(-gamma)   ("tau-symmetry")
    PiMirror,    // parity alone; vs T(-gamma)
    ThetaSelf,   // gamma = 0 only; vs -T(0)  (proper time reversal)
    PiSelf,      // gamma = 0 only; vs T(0)
};

const char* relation_name(Relation r);

struct SymmetryReport {
    Relation relation;
    OperatorSpec lhs;    // operator whose conjugate forms the left side
    OperatorSpec rhs;    // operator the conjugate is compared against
    double residual = 0.0; // ||LHS - RHS||_F / ||RHS||_F
    double tolerance = 0.0;
    bool holds = false;
};

struct SymmetryScan {
    std::vector<SymmetryReport> reports;
    // "tau-symmetric", "time-reversal symmetric", or "neither"
    std::string classification;
};

// Build the operator at gamma and at -gamma as needed and evaluate every
// relation applicable at this gamma (two at gamma = 0, three elsewhere).
// Tolerance is 1e-6 for exactly-constructed matrices and 1e-4 when a side
// comes from projection quadrature. Construction errors propagate.
SymmetryScan check_relations(const OperatorSpec& spec,
                             const EnergyBasis& basis);

} // namespace tempus
