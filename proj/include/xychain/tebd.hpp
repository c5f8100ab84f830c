#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "xychain/model_xy.hpp"
#include "xychain/mpo.hpp"

namespace xychain::tebd {

using linalg::CMatrix;
using linalg::Complex;
using model::ParameterSchedule;
using model::XYParameters;
using mpo::Mpo;
using mpo::SchmidtSpectrum;

struct EvolutionConfig {
    double dt = 0.01;
    double t_final = 0.0;
    int chi_max = 64;
    double eps = 1e-10;          // relative truncation threshold
    int measure_every = 1;       // steps between recorded measurements
    int checkpoint_every = 0;    // steps between checkpoint callbacks (0 = off)
    int recanonicalize_every = 10;  // full gauge restorations (0 = only at measurements)
    double chi_count_eps = 1e-8;    // threshold for the effective-chi statistic

    void validate() const;
};

// What to record: expectations are taken against a product density matrix,
// one factor per site; Schmidt snapshots for the listed bonds (empty = none).
struct MeasurementSpec {
    std::vector<pauli::LocalOperator> state;
    std::vector<int> schmidt_bonds;
};

struct TrajectoryRecord {
    std::vector<double> times;
    std::vector<Complex> values;
    std::vector<std::vector<SchmidtSpectrum>> schmidt_snapshots;  // per measure time
    double cumulative_truncation = 0.0;
    int effective_chi_max_seen = 0;
    int max_bond_dim_seen = 0;
    long steps_taken = 0;
};

// Gates for one Strang step at fixed parameters: dissipators outermost at
// dt/2, odd bonds at dt/2, even bonds at dt.
struct GateSet {
    std::vector<std::pair<int, CMatrix>> odd_half;   // (bond, 16x16)
    std::vector<std::pair<int, CMatrix>> even_full;
    CMatrix diss_left_half;   // 4x4
    CMatrix diss_right_half;
    bool dissipative = false;
};

GateSet build_gates(const XYParameters& p, double dt);

// One second-order step: D(dt/2) odd(dt/2) even(dt) odd(dt/2) D(dt/2).
void strang_step_inplace(Mpo& m, const GateSet& gates, int chi_max, double eps,
                         TrajectoryRecord* stats);

// Convenience wrapper matching the one-shot contract.
Mpo strang_step(Mpo m, const XYParameters& p, double dt, int chi_max, double eps);

using CheckpointSink = std::function<void(long step, double t, const Mpo&)>;

// Iterates Strang steps across the schedule, splitting steps exactly at
// segment boundaries, and records measurements every measure_every steps
// plus the initial and final times. Aborts with NumericalAbort on NaN.
TrajectoryRecord evolve(Mpo m0, const ParameterSchedule& schedule, const EvolutionConfig& cfg,
                        const MeasurementSpec& meas, const CheckpointSink& checkpoint = {});

}  // namespace xychain::tebd
