#include "inertjump/sde.hpp"

#include <cmath>
#include <ostream>
#include <stdexcept>

namespace inertjump {

namespace {

double drift_factor(double s, double clamp) {
    return s > clamp ? clamp : (s < -clamp ? -clamp : s);
}

Eigen::Index resolve_steps(double T, double dt) {
    if (!(dt > 0.0)) throw std::invalid_argument("simulate: dt must be positive");
    if (!(T > 0.0)) throw std::invalid_argument("simulate: T must be positive");
    const auto n = static_cast<Eigen::Index>(std::llround(T / dt));
    if (n < 1 || std::abs(static_cast<double>(n) * dt - T) > 1e-9 * std::max(1.0, T))
        throw std::invalid_argument("simulate: dt must divide T within rounding");
    return n;
}

TrajectoryYS run_with_path(double y0, double s0, const PotentialSpec& spec,
                           const StablePathGrid& driving, double clamp) {
    const Eigen::Index n = driving.steps();
    if (n < 1) throw std::invalid_argument("simulate: driving path must have >= 1 step");

    TrajectoryYS traj;
    traj.dt = driving.dt;
    traj.theta.resize(n + 1);
    traj.winding.resize(n + 1);
    traj.s.resize(n + 1);
    traj.driving = driving;
    traj.seed = driving.seed;

    CircleIntegrator stepper(spec, driving.dt, y0, s0, clamp);
    traj.theta[0] = stepper.theta();
    traj.winding[0] = stepper.winding();
    traj.s[0] = stepper.s();
    for (Eigen::Index k = 0; k < n; ++k) {
        stepper.step(driving.increments[k]);
        traj.theta[k + 1] = stepper.theta();
        traj.winding[k + 1] = stepper.winding();
        traj.s[k + 1] = stepper.s();
    }
    return traj;
}

}  // namespace

StateYS euler_step(const StateYS& state, double dX, double dt, const PotentialSpec& spec) {
    if (!(dt > 0.0)) throw std::invalid_argument("euler_step: dt must be positive");
    const double wp = spec.derivative(state.y, 1);
    const double wpp = spec.derivative(state.y, 2);
    return StateYS{state.y + (dX + wp * state.s * dt), state.s + wpp * dt};
}

StateYS euler_step_clamped(const StateYS& state, double dX, double dt,
                           const PotentialSpec& spec, double n_clamp) {
    if (!(dt > 0.0)) throw std::invalid_argument("euler_step: dt must be positive");
    if (!(n_clamp >= 1.0)) throw std::invalid_argument("euler_step_clamped: n must be >= 1");
    const double wp = spec.derivative(state.y, 1);
    const double wpp = spec.derivative(state.y, 2);
    return StateYS{state.y + (dX + wp * drift_factor(state.s, n_clamp) * dt),
                   state.s + wpp * dt};
}

CircleIntegrator::CircleIntegrator(const PotentialSpec& spec, double dt, double y0, double s0,
                                   double clamp)
    : spec_(&spec),
      dt_(dt),
      clamp_(clamp),
      theta_(wrap_angle(y0)),
      winding_(wrap_winding(y0)),
      s_(s0) {
    if (!(dt > 0.0)) throw std::invalid_argument("CircleIntegrator: dt must be positive");
    if (!std::isfinite(y0) || !std::isfinite(s0))
        throw std::invalid_argument("CircleIntegrator: start state must be finite");
}

void CircleIntegrator::step(double dX) {
    const double wp = spec_->derivative(theta_, 1);
    const double wpp = spec_->derivative(theta_, 2);
    const double inc = dX + wp * drift_factor(s_, clamp_) * dt_;
    const double a = theta_ + inc;
    const double t = wrap_angle(a);
    winding_ += std::llround((a - t) / kTwoPi);
    theta_ = t;
    s_ += wpp * dt_;
    if (!std::isfinite(theta_) || !std::isfinite(s_))
        throw std::runtime_error(
            "CircleIntegrator: state became non-finite; this must not happen for valid "
            "inputs and indicates a bug or a non-finite driving increment");
}

TrajectoryYS simulate_with_path(double y0, double s0, const PotentialSpec& spec,
                                const StablePathGrid& driving) {
    return run_with_path(y0, s0, spec, driving, std::numeric_limits<double>::infinity());
}

TrajectoryYS simulate_clamped_with_path(long n_clamp, double y0, double s0,
                                        const PotentialSpec& spec,
                                        const StablePathGrid& driving) {
    if (n_clamp < 1) throw std::invalid_argument("simulate_clamped: n must be >= 1");
    return run_with_path(y0, s0, spec, driving, static_cast<double>(n_clamp));
}

TrajectoryYS simulate(double y0, double s0, double T, double dt, Alpha alpha,
                      const PotentialSpec& spec, Rng& rng) {
    const Eigen::Index n = resolve_steps(T, dt);
    return simulate_with_path(y0, s0, spec, sample_path(alpha, n, dt, rng));
}

TrajectoryYS simulate_clamped(long n_clamp, double y0, double s0, double T, double dt,
                              Alpha alpha, const PotentialSpec& spec, Rng& rng) {
    if (n_clamp < 1) throw std::invalid_argument("simulate_clamped: n must be >= 1");
    const Eigen::Index n = resolve_steps(T, dt);
    return simulate_clamped_with_path(n_clamp, y0, s0, spec, sample_path(alpha, n, dt, rng));
}

double wrap(double y) { return wrap_angle(y); }

WrappedTrajectory wrap(const TrajectoryYS& traj) {
    return WrappedTrajectory{traj.dt, traj.theta, traj.s};
}

void write_trajectory_csv(std::ostream& os, const TrajectoryYS& traj,
                          const PotentialSpec& spec) {
    os.precision(17);
    os << "# alpha=" << traj.driving.alpha.value << " dt=" << traj.dt
       << " seed=" << traj.seed.master << " stream=" << traj.seed.stream
       << " potential=" << spec.id() << "\n";
    os << "t,y,theta,s\n";
    for (Eigen::Index k = 0; k < traj.size(); ++k)
        os << traj.time(k) << ',' << traj.y(k) << ',' << traj.theta[k] << ',' << traj.s[k]
           << "\n";
}

}  // namespace inertjump
