#pragma once

#include <Eigen/Core>
#include <iosfwd>
#include <limits>

#include "inertjump/angle.hpp"
#include "inertjump/potential.hpp"
#include "inertjump/stable.hpp"

namespace inertjump {

struct StateYS {
    double y = 0.0;
    double s = 0.0;
};

// One explicit Euler step of
//   dY = dX + W'(Y) S dt,   dS = W''(Y) dt,
// drift evaluated at the left endpoint.  The clamped variant replaces the
// drift factor S by f_n(S) = max(-n, min(S, n)).
StateYS euler_step(const StateYS& state, double dX, double dt, const PotentialSpec& spec);
StateYS euler_step_clamped(const StateYS& state, double dX, double dt,
                           const PotentialSpec& spec, double n_clamp);

// Streaming stepper.  Positions are carried as (theta, winding) with
// theta in (-pi, pi]: the update arithmetic then commutes bit-for-bit with
// shifts of the start by full periods, which is the discrete form of the
// 2pi-shift equivariance of the solution law.
class CircleIntegrator {
public:
    CircleIntegrator(const PotentialSpec& spec, double dt, double y0, double s0,
                     double clamp = std::numeric_limits<double>::infinity());

    void step(double dX);

    double theta() const { return theta_; }
    long long winding() const { return winding_; }
    double s() const { return s_; }
    double y() const { return theta_ + kTwoPi * static_cast<double>(winding_); }

private:
    const PotentialSpec* spec_;
    double dt_;
    double clamp_;
    double theta_;
    long long winding_;
    double s_;
};

// Discretised trajectory on a uniform grid, wrapped representation plus
// winding counts; the driving path is recorded so probes can re-run with
// common noise.
struct TrajectoryYS {
    double dt = 0.0;
    Eigen::ArrayXd theta;                          // size n_steps+1, in (-pi, pi]
    Eigen::Array<long long, Eigen::Dynamic, 1> winding;  // y = theta + 2pi winding
    Eigen::ArrayXd s;
    StablePathGrid driving;
    SeedInfo seed;

    Eigen::Index size() const { return theta.size(); }
    double time(Eigen::Index k) const { return dt * static_cast<double>(k); }
    double y(Eigen::Index k) const {
        return theta[k] + kTwoPi * static_cast<double>(winding[k]);
    }
    StateYS state(Eigen::Index k) const { return StateYS{y(k), s[k]}; }
};

struct WrappedTrajectory {
    double dt = 0.0;
    Eigen::ArrayXd theta;  // Arg Z_t in (-pi, pi]
    Eigen::ArrayXd s;
};

TrajectoryYS simulate(double y0, double s0, double T, double dt, Alpha alpha,
                      const PotentialSpec& spec, Rng& rng);
TrajectoryYS simulate_clamped(long n_clamp, double y0, double s0, double T, double dt,
                              Alpha alpha, const PotentialSpec& spec, Rng& rng);

// Frozen-noise variants: integrate against a supplied driving path (test hook
// and the flow-probe workhorse).
TrajectoryYS simulate_with_path(double y0, double s0, const PotentialSpec& spec,
                                const StablePathGrid& driving);
TrajectoryYS simulate_clamped_with_path(long n_clamp, double y0, double s0,
                                        const PotentialSpec& spec,
                                        const StablePathGrid& driving);

// theta = ((y + pi) mod 2pi) - pi with the -pi boundary mapped to +pi,
// matching Arg in (-pi, pi].
double wrap(double y);
WrappedTrajectory wrap(const TrajectoryYS& traj);

// CSV export: provenance header line, then t,y,theta,s rows.
void write_trajectory_csv(std::ostream& os, const TrajectoryYS& traj,
                          const PotentialSpec& spec);

}  // namespace inertjump
