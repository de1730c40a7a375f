#pragma once

#include <map>
#include <variant>

#include "tempus/system.hpp"

namespace tempus {

// real diagonal sequence of the characteristic family
struct AlphaSequence {
    enum class Rule { Zero, PowerLaw, Explicit };
    Rule rule = Rule::Zero;
    double c = 0.0, p = 0.0;         // PowerLaw: alpha_k = c * E_k^{-p}
    std::map<int, double> table;     // Explicit

    static AlphaSequence zero() { return {}; }
    static AlphaSequence power_law(double c, double p);
    static AlphaSequence explicit_table(std::map<int, double> t);

    double value(int k, const SystemConfig& cfg) const;
    std::string describe() const;
};

struct ArrivalTime {
    double s = 0.0; // s = 0 is the plain arrival-time operator
};

struct Characteristic {
    AlphaSequence alpha; // Zero diagonal recovers the bare off-diagonal form
};

struct OperatorSpec {
    std::variant<ArrivalTime, Characteristic> family;
    double gamma = M_PI / 4;

    bool is_arrival() const {
        return std::holds_alternative<ArrivalTime>(family);
    }
    double s() const { return std::get<ArrivalTime>(family).s; }
    const AlphaSequence& alpha() const {
        return std::get<Characteristic>(family).alpha;
    }
    OperatorSpec at_gamma(double g) const {
        OperatorSpec o = *this;
        o.gamma = g;
        return o;
    }
    std::string describe() const;
};

inline OperatorSpec arrival_spec(double gamma, double s = 0.0) {
    return {ArrivalTime{s}, gamma};
}
inline OperatorSpec characteristic_spec(double gamma,
                                        AlphaSequence a = AlphaSequence::zero()) {
    return {Characteristic{std::move(a)}, gamma};
}

// position-space kernel of the arrival-time family;
// sign convention H(0) = 1/2, sgn(0) = 0 on the diagonal
std::complex<double> arrival_kernel(double q, double qp,
                                    const OperatorSpec& spec,
                                    const SystemConfig& cfg);

// branch value with sgn(q - q') replaced by +/-1 (used by the triangle
// quadrature, where the branch is constant)
std::complex<double> arrival_kernel_branch(double q, double qp, int sgn,
                                           const OperatorSpec& spec,
                                           const SystemConfig& cfg);

// single energy-representation entry of the characteristic family
// (off-diagonal i hbar/(E_k - E_k'), diagonal alpha_k)
std::complex<double> gto_entry(int k, int kp, const OperatorSpec& spec,
                               const SystemConfig& cfg);

// full matrix; refuses degenerate spectra (gamma = 0 or pi/2)
EnergyMatrix gto_matrix(const OperatorSpec& spec, const EnergyBasis& basis);

enum class ExecPolicy { Serial, OpenMP };

struct ProjectionOptions {
    int nodes_per_panel = 16;
    double panel_phase = 8.0; // panel width h such that omega*h <= panel_phase
    ExecPolicy exec = ExecPolicy::OpenMP;
    double defect_tol = 1e-8;
};

// energy representation of the arrival kernel:
// T_{kk'} = int conj(phi_k(q)) K(q,q') phi_k'(q') dq dq',
// panel quadrature split along the kink line q = q' (the two triangles are
// integrated independently), then Hermitized with the defect recorded
EnergyMatrix project_kernel(const OperatorSpec& spec, const EnergyBasis& basis,
                            const ProjectionOptions& opt = {});

} // namespace tempus
