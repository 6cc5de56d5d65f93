#include "inertjump/stationary.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "inertjump/angle.hpp"
#include "inertjump/special.hpp"

namespace inertjump {

SampleSet ergodic_samples(double y0, double s0, Eigen::Index n_samples, double burn_in,
                          double thinning, double dt, Alpha alpha, const PotentialSpec& spec,
                          Rng& rng) {
    if (n_samples < 1) throw std::invalid_argument("ergodic_samples: n_samples must be >= 1");
    if (!(dt > 0.0)) throw std::invalid_argument("ergodic_samples: dt must be positive");
    if (!(burn_in >= 0.0)) throw std::invalid_argument("ergodic_samples: burn_in must be >= 0");
    if (!(thinning >= dt))
        throw std::invalid_argument("ergodic_samples: thinning must be at least one step");

    SampleSet set;
    set.theta.resize(n_samples);
    set.s.resize(n_samples);
    set.burn_in = burn_in;
    set.thinning = thinning;
    set.dt = dt;
    set.alpha_value = alpha.value;
    set.seed = rng.seed_info();
    set.potential_id = spec.id();

    const double scale = std::pow(dt, 1.0 / alpha.value);
    CircleIntegrator stepper(spec, dt, y0, s0);
    Eigen::Index recorded = 0;
    long long k = 0;
    while (recorded < n_samples) {
        const long long target =
            std::llround((burn_in + static_cast<double>(recorded) * thinning) / dt);
        while (k < target) {
            stepper.step(scale * sample_standard_stable(alpha, rng));
            ++k;
        }
        set.theta[recorded] = stepper.theta();
        set.s[recorded] = stepper.s();
        ++recorded;
    }
    return set;
}

double ks_one_sample(Eigen::ArrayXd samples, const std::function<double(double)>& cdf) {
    const Eigen::Index n = samples.size();
    if (n < 1) throw std::invalid_argument("ks_one_sample: empty sample");
    std::sort(samples.data(), samples.data() + n);
    double d = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        const double F = cdf(samples[i]);
        d = std::max(d, std::max((i + 1.0) / n - F, F - static_cast<double>(i) / n));
    }
    return d;
}

double ks_uniform_theta(const SampleSet& set) {
    return ks_one_sample(set.theta, [](double t) { return (t + kPi) / kTwoPi; });
}

double ks_normal_s(const SampleSet& set) {
    return ks_one_sample(set.s, [](double s) { return normal_cdf(s); });
}

double ks_two_sample(Eigen::ArrayXd a, Eigen::ArrayXd b) {
    if (a.size() < 1 || b.size() < 1) throw std::invalid_argument("ks_two_sample: empty sample");
    std::sort(a.data(), a.data() + a.size());
    std::sort(b.data(), b.data() + b.size());
    const double na = static_cast<double>(a.size()), nb = static_cast<double>(b.size());
    double d = 0.0;
    Eigen::Index i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(i / na - j / nb));
    }
    return d;
}

Chi2Result independence_chi2(const SampleSet& set, int bins_theta, int bins_s) {
    if (bins_theta < 2 || bins_s < 2)
        throw std::invalid_argument("independence_chi2: need at least 2 bins per margin");
    const Eigen::Index n = set.size();

    // equal-probability s-bin edges from normal quantiles; merged pairwise at
    // the tails while any expected count stays below 5
    int bs = bins_s;
    Eigen::MatrixXd counts;
    Eigen::VectorXd row, col;
    for (;;) {
        std::vector<double> edges(bs - 1);
        for (int j = 1; j < bs; ++j)
            edges[j - 1] = normal_quantile(static_cast<double>(j) / bs);
        counts = Eigen::MatrixXd::Zero(bins_theta, bs);
        for (Eigen::Index i = 0; i < n; ++i) {
            int bt = static_cast<int>((set.theta[i] + kPi) / kTwoPi * bins_theta);
            bt = std::clamp(bt, 0, bins_theta - 1);
            const int sj = static_cast<int>(
                std::lower_bound(edges.begin(), edges.end(), set.s[i]) - edges.begin());
            counts(bt, sj) += 1.0;
        }
        row = counts.rowwise().sum();
        col = counts.colwise().sum();
        double min_expected = std::numeric_limits<double>::infinity();
        for (int r = 0; r < bins_theta; ++r)
            for (int c = 0; c < bs; ++c)
                min_expected = std::min(min_expected, row[r] * col[c] / static_cast<double>(n));
        if (min_expected >= 5.0 || bs <= 2) break;
        --bs;  // drop one quantile cut; tail mass folds into the neighbours
    }

    Chi2Result out;
    out.bins_theta = bins_theta;
    out.bins_s = bs;
    out.dof = (bins_theta - 1) * (bs - 1);
    for (int r = 0; r < bins_theta; ++r) {
        for (int c = 0; c < bs; ++c) {
            const double expected = row[r] * col[c] / static_cast<double>(n);
            if (expected <= 0.0) continue;
            if (expected < 5.0) ++out.underpopulated_cells;
            const double diff = counts(r, c) - expected;
            out.statistic += diff * diff / expected;
        }
    }
    return out;
}

double integrated_autocorrelation_time(const Eigen::ArrayXd& series) {
    const Eigen::Index n = series.size();
    if (n < 10) throw std::invalid_argument("integrated_autocorrelation_time: series too short");
    const double mean = series.mean();
    const Eigen::ArrayXd centred = series - mean;
    const double c0 = centred.square().sum() / n;
    if (c0 == 0.0) return 1.0;
    double tau = 1.0;
    for (Eigen::Index k = 1; k < n / 4; ++k) {
        const double ck =
            (centred.head(n - k) * centred.tail(n - k)).sum() / static_cast<double>(n);
        const double rho = ck / c0;
        if (rho < 0.05) break;
        tau += 2.0 * rho;
    }
    return tau;
}

double estimate_thinning(double y0, double s0, double pilot_T, double burn_in, double dt,
                         Alpha alpha, const PotentialSpec& spec, Rng& rng) {
    if (!(pilot_T >= 50.0))
        throw std::invalid_argument("estimate_thinning: pilot_T must be >= 50 time units");
    const auto n = static_cast<Eigen::Index>(pilot_T);
    // S recorded every time unit after burn-in
    const auto pilot = ergodic_samples(y0, s0, n, burn_in, 1.0, dt, alpha, spec, rng);
    const double tau = integrated_autocorrelation_time(pilot.s);
    return std::max(1.0, 5.0 * tau);
}

GoFReport gof_report(const SampleSet& set, const GoFThresholds& thresholds, int bins_theta,
                     int bins_s) {
    GoFReport rep;
    rep.thresholds = thresholds;
    rep.n_effective = set.size();
    rep.ks_theta = ks_uniform_theta(set);
    rep.ks_s = ks_normal_s(set);
    rep.mean_s = set.s.mean();
    rep.var_s = (set.s - rep.mean_s).square().sum() / static_cast<double>(set.size() - 1);
    rep.chi2 = independence_chi2(set, bins_theta, bins_s);
    rep.chi2_critical = chi2_quantile_99(rep.chi2.dof);
    rep.ks_theta_pass = rep.ks_theta < thresholds.ks;
    rep.ks_s_pass = rep.ks_s < thresholds.ks;
    rep.var_pass = rep.var_s >= thresholds.var_lo && rep.var_s <= thresholds.var_hi;
    rep.chi2_pass = rep.chi2.statistic < rep.chi2_critical;
    return rep;
}

void write_samples_csv(std::ostream& os, const SampleSet& set) {
    os.precision(17);
    os << "# alpha=" << set.alpha_value << " dt=" << set.dt << " burn_in=" << set.burn_in
       << " thinning=" << set.thinning << " seed=" << set.seed.master
       << " stream=" << set.seed.stream << " potential=" << set.potential_id << "\n";
    os << "theta,s\n";
    for (Eigen::Index i = 0; i < set.size(); ++i) os << set.theta[i] << ',' << set.s[i] << "\n";
}

}  // namespace inertjump
