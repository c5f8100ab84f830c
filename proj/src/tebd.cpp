#include "xychain/tebd.hpp"

#include <cmath>

#include "xychain/errors.hpp"

namespace xychain::tebd {

void EvolutionConfig::validate() const {
    if (!(dt > 0)) throw ConfigError("EvolutionConfig: dt must be > 0");
    if (t_final < 0) throw ConfigError("EvolutionConfig: t_final must be >= 0");
    if (chi_max < 1) throw ConfigError("EvolutionConfig: chi_max must be >= 1");
    if (eps < 0 || eps >= 1) throw ConfigError("EvolutionConfig: eps must lie in [0,1)");
    if (measure_every < 1) throw ConfigError("EvolutionConfig: measure_every must be >= 1");
    if (checkpoint_every < 0 || recanonicalize_every < 0)
        throw ConfigError("EvolutionConfig: strides must be >= 0");
}

GateSet build_gates(const XYParameters& p, double dt) {
    p.validate();
    GateSet g;
    for (int b = 1; b <= p.n_sites - 1; ++b) {
        if (b % 2 == 1)
            g.odd_half.emplace_back(b, model::adjoint_bond_gate(p, b, dt / 2.0));
        else
            g.even_full.emplace_back(b, model::adjoint_bond_gate(p, b, dt));
    }
    g.dissipative = p.dissipative();
    if (g.dissipative) {
        g.diss_left_half = model::boundary_dissipator_gate(p, model::Side::left, dt / 2.0);
        g.diss_right_half = model::boundary_dissipator_gate(p, model::Side::right, dt / 2.0);
    }
    return g;
}

namespace {

void apply_dissipators(Mpo& m, const GateSet& g) {
    if (!g.dissipative) return;
    m.apply_one_site_gate(g.diss_left_half, 1);
    m.apply_one_site_gate(g.diss_right_half, m.n_sites());
}

void apply_bond_list(Mpo& m, const std::vector<std::pair<int, CMatrix>>& gates, int chi_max,
                     double eps, TrajectoryRecord* stats) {
    for (const auto& [bond, gate] : gates) {
        const auto tr = m.apply_two_site_gate(gate, bond, chi_max, eps);
        if (stats) {
            stats->cumulative_truncation += tr.relative_error;
            stats->max_bond_dim_seen = std::max(stats->max_bond_dim_seen, tr.retained);
        }
    }
}

}  // namespace

void strang_step_inplace(Mpo& m, const GateSet& gates, int chi_max, double eps,
                         TrajectoryRecord* stats) {
    apply_dissipators(m, gates);
    apply_bond_list(m, gates.odd_half, chi_max, eps, stats);
    apply_bond_list(m, gates.even_full, chi_max, eps, stats);
    apply_bond_list(m, gates.odd_half, chi_max, eps, stats);
    apply_dissipators(m, gates);
}

Mpo strang_step(Mpo m, const XYParameters& p, double dt, int chi_max, double eps) {
    const GateSet gates = build_gates(p, dt);
    strang_step_inplace(m, gates, chi_max, eps, nullptr);
    return m;
}

namespace {

void check_finite(const Mpo& m, double t) {
    if (m.is_zero()) return;
    const Complex lp = m.log_prefactor();
    if (!std::isfinite(lp.real()) || !std::isfinite(lp.imag()))
        throw NumericalAbort("evolve: non-finite prefactor at t = " + std::to_string(t));
}

void measure(Mpo& m, const MeasurementSpec& meas, const EvolutionConfig& cfg, double t,
             TrajectoryRecord& rec) {
    if (!m.is_zero() && !m.is_canonical()) m.canonicalize();
    const Complex v = m.expectation(meas.state);
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NumericalAbort("evolve: non-finite expectation at t = " + std::to_string(t));
    rec.times.push_back(t);
    rec.values.push_back(v);
    if (!m.is_zero()) {
        for (int b = 1; b <= m.n_sites() - 1; ++b) {
            const auto spec = m.schmidt_spectrum(b);
            rec.effective_chi_max_seen =
                std::max(rec.effective_chi_max_seen, mpo::effective_chi(spec, cfg.chi_count_eps));
        }
    }
    std::vector<SchmidtSpectrum> snap;
    for (int b : meas.schmidt_bonds) {
        if (b < 1 || b > m.n_sites() - 1)
            throw ConfigError("evolve: Schmidt bond out of range");
        if (!m.is_zero()) snap.push_back(m.schmidt_spectrum(b));
    }
    rec.schmidt_snapshots.push_back(std::move(snap));
}

}  // namespace

TrajectoryRecord evolve(Mpo m0, const ParameterSchedule& schedule, const EvolutionConfig& cfg,
                        const MeasurementSpec& meas, const CheckpointSink& checkpoint) {
    cfg.validate();
    schedule.validate();
    if (static_cast<int>(meas.state.size()) != m0.n_sites())
        throw ConfigError("evolve: measurement state has wrong number of sites");

    TrajectoryRecord rec;
    Mpo m = std::move(m0);
    if (!m.is_zero() && !m.is_canonical()) m.canonicalize();
    measure(m, meas, cfg, 0.0, rec);

    const std::vector<double> boundaries = schedule.boundaries();
    const double t_end = cfg.t_final;
    // Tolerance must absorb accumulated summation error over long runs.
    const double tol = 1e-9 * std::max({cfg.dt, 1.0, t_end});

    double t = 0.0;
    long step = 0;
    XYParameters current = schedule.params_at(0.0);
    GateSet gates = build_gates(current, cfg.dt);
    double gates_dt = cfg.dt;

    while (t < t_end - tol) {
        // Never step across a quench instant: shorten the step to land on it.
        double dt_step = std::min(cfg.dt, t_end - t);
        for (double b : boundaries)
            if (t < b - tol && t + dt_step > b + tol) dt_step = b - t;

        const XYParameters& p = schedule.params_at(t + dt_step / 2.0);
        if (!(p == current) || std::abs(dt_step - gates_dt) > 1e-15) {
            current = p;
            gates = build_gates(current, dt_step);
            gates_dt = dt_step;
        }

        strang_step_inplace(m, gates, cfg.chi_max, cfg.eps, &rec);
        t += dt_step;
        ++step;
        check_finite(m, t);

        const bool at_end = t >= t_end - tol;
        if (cfg.recanonicalize_every > 0 && step % cfg.recanonicalize_every == 0 && !m.is_zero())
            m.canonicalize();
        if (step % cfg.measure_every == 0 || at_end) measure(m, meas, cfg, t, rec);
        if (checkpoint && cfg.checkpoint_every > 0 && step % cfg.checkpoint_every == 0)
            checkpoint(step, t, m);
    }
    rec.steps_taken = step;
    return rec;
}

}  // namespace xychain::tebd
