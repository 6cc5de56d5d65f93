#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>
#include <string>

#include "inertjump/potential.hpp"
#include "inertjump/sde.hpp"

namespace inertjump {

// Burn-in/thinned ergodic samples of (Arg Z, S) with full provenance.
struct SampleSet {
    Eigen::ArrayXd theta;  // in (-pi, pi]
    Eigen::ArrayXd s;
    double burn_in = 0.0;
    double thinning = 0.0;
    double dt = 0.0;
    double alpha_value = 0.0;
    SeedInfo seed;
    std::string potential_id;

    Eigen::Index size() const { return theta.size(); }
};

// Samples extracted from one long trajectory at times burn_in + j * thinning.
// The trajectory itself is streamed, not stored.
SampleSet ergodic_samples(double y0, double s0, Eigen::Index n_samples, double burn_in,
                          double thinning, double dt, Alpha alpha, const PotentialSpec& spec,
                          Rng& rng);

// One-sample Kolmogorov-Smirnov statistic against a continuous CDF.
double ks_one_sample(Eigen::ArrayXd samples, const std::function<double(double)>& cdf);

double ks_uniform_theta(const SampleSet& set);
double ks_normal_s(const SampleSet& set);

double ks_two_sample(Eigen::ArrayXd a, Eigen::ArrayXd b);

struct Chi2Result {
    double statistic = 0.0;
    int dof = 0;
    int bins_theta = 0;
    int bins_s = 0;             // after tail merging
    int underpopulated_cells = 0;  // expected < 5 remaining after the tail rule
};

// Pearson chi-square of the 2-D histogram against the product of the
// empirical marginals; theta bins equal-width, s bins equal-probability under
// the standard normal, outermost s bins merged while any expected count is
// below 5.
Chi2Result independence_chi2(const SampleSet& set, int bins_theta, int bins_s);

// Integrated autocorrelation time of a series, in units of its sampling
// cadence: 1 + 2 sum rho_k, summed until the estimate drops below 0.05.
double integrated_autocorrelation_time(const Eigen::ArrayXd& series);

// Pilot-run thinning choice: S is recorded every time unit over pilot_T after
// the burn-in, and the thinning interval is 5x the integrated autocorrelation
// time, floored at one time unit.
double estimate_thinning(double y0, double s0, double pilot_T, double burn_in, double dt,
                         Alpha alpha, const PotentialSpec& spec, Rng& rng);

struct GoFThresholds {
    double ks = 0.05;          // both marginals, calibrated for n_eff = 1e4
    double var_lo = 0.9;
    double var_hi = 1.1;
    double chi2_confidence = 0.99;
};

struct GoFReport {
    double ks_theta = 0.0;
    double ks_s = 0.0;
    double mean_s = 0.0;
    double var_s = 0.0;
    Chi2Result chi2;
    double chi2_critical = 0.0;
    Eigen::Index n_effective = 0;
    GoFThresholds thresholds;
    bool ks_theta_pass = false;
    bool ks_s_pass = false;
    bool var_pass = false;
    bool chi2_pass = false;

    bool all_pass() const { return ks_theta_pass && ks_s_pass && var_pass && chi2_pass; }
};

GoFReport gof_report(const SampleSet& set, const GoFThresholds& thresholds = {},
                     int bins_theta = 8, int bins_s = 8);

// CSV dump: provenance header, then theta,s rows.
void write_samples_csv(std::ostream& os, const SampleSet& set);

}  // namespace inertjump
