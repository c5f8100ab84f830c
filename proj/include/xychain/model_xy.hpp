#pragma once

#include <vector>

#include "xychain/linalg.hpp"
#include "xychain/mpo.hpp"
#include "xychain/pauli.hpp"

namespace xychain::model {

using linalg::CMatrix;
using linalg::CVector;
using linalg::Complex;
using mpo::Mpo;

// Boundary-driven XY chain:
//   H = sum_{j=1}^{N-1} J [ (1+gamma)/2 sx_j sx_{j+1} + (1-gamma)/2 sy_j sy_{j+1} ]
//       + B sum_j sz_j
// with Lindblad operators sqrt(G_+) s+ and sqrt(G_-) s- on each end.
// Open boundary conditions: the coupling sum stops at N-1.
struct XYParameters {
    int n_sites = 2;
    double coupling = 1.0;    // J
    double anisotropy = 0.0;  // gamma
    double field = 0.0;       // B
    double gamma_l_plus = 0.0;
    double gamma_l_minus = 0.0;
    double gamma_r_plus = 0.0;
    double gamma_r_minus = 0.0;

    void validate() const;
    bool dissipative() const {
        return gamma_l_plus > 0 || gamma_l_minus > 0 || gamma_r_plus > 0 || gamma_r_minus > 0;
    }
    bool operator==(const XYParameters&) const = default;
};

// Piecewise-constant quench schedule; first segment starts at t = 0.
struct ScheduleSegment {
    double t_start = 0.0;
    XYParameters params;
};

struct ParameterSchedule {
    std::vector<ScheduleSegment> segments;

    static ParameterSchedule constant(const XYParameters& p);
    void validate() const;
    const XYParameters& params_at(double t) const;
    // Start times of later segments (the quench instants).
    std::vector<double> boundaries() const;
};

enum class Side { left, right };
enum class OperatorKind { annihilation, creation };

// Coefficients of C(t) = sum_j alpha_j(t) c_j + beta_j(t) c^dagger_j for a
// coherently evolved linear fermion operator.
struct CoherentCoefficients {
    CVector alpha;
    CVector beta;
    int source_site = 1;
    double time = 0.0;
};

// 4x4 Hermitian two-site term; transverse-field weight B/2 per interior
// bond, full weight at the chain ends, so that the bond terms sum to H.
CMatrix bond_hamiltonian(const XYParameters& p, int bond);

// 16x16 vectorized conjugation exp(i h tau) O exp(-i h tau), indexed in the
// MPO site-major composite order, ready for Mpo::apply_two_site_gate.
CMatrix adjoint_bond_gate(const XYParameters& p, int bond, double tau);

// 4x4 exact single-site dissipator exponential for the two Lindblad
// operators on one end of the chain.
CMatrix boundary_dissipator_gate(const XYParameters& p, Side side, double tau);

// One-particle generator of the closed chain in the basis
// (c_1..c_N, c^+_1..c^+_N); coefficient rows evolve as v(t) = v(0) e^{G t}.
CMatrix one_particle_generator(const XYParameters& p);

CoherentCoefficients closed_solution_coefficients(const XYParameters& p, double t,
                                                  int source_site, OperatorKind kind);

// chi = 2 lower-triangular MPO of
// sum_j (prod_{k<j} sz_k)(alpha_j s+_j + beta_j s-_j).
Mpo c_operator_mpo(const CoherentCoefficients& coeffs, int n_sites);

// chi = 1 MPO of the parity operator, a tensor power of sz.
Mpo parity_mpo(int n_sites);

// Dense spin-chain builders shared with the oracles (guarded to N <= 12).
CMatrix dense_xy_hamiltonian(const XYParameters& p);
std::vector<CMatrix> dense_lindblads(const XYParameters& p);
CMatrix dense_site_operator(const pauli::LocalOperator& op, int site, int n_sites);

}  // namespace xychain::model
