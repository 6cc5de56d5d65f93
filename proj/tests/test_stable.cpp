#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "inertjump/special.hpp"
#include "inertjump/stable.hpp"
#include "oracle_tables.hpp"

using namespace inertjump;

namespace {

constexpr std::uint64_t kSeed = 20260810;

double empirical_cos_cf(const Eigen::ArrayXd& x, double xi) {
    return (xi * x).cos().mean();
}

// two-sample Kolmogorov-Smirnov statistic (local copy; the library version is
// exercised in the stationary tests)
double ks2(std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    double d = 0.0;
    std::size_t i = 0, j = 0;
    while (i < a.size() && j < b.size()) {
        if (a[i] <= b[j])
            ++i;
        else
            ++j;
        d = std::max(d, std::abs(static_cast<double>(i) / a.size() -
                                 static_cast<double>(j) / b.size()));
    }
    return d;
}

Eigen::ArrayXd draw_increments(Alpha alpha, double dt, int n, const char* stream) {
    Rng rng(kSeed, stream);
    Eigen::ArrayXd out(n);
    for (int k = 0; k < n; ++k) out[k] = sample_increment(alpha, dt, rng);
    return out;
}

}  // namespace

TEST_CASE("gamma function matches the high-precision oracle table") {
    for (const auto& row : oracle::kGammaTable) {
        CHECK(gamma_fn((1.0 + row.alpha) / 2.0) ==
              doctest::Approx(row.gamma_half_1p).epsilon(1e-12));
        CHECK(gamma_fn(1.0 - row.alpha / 2.0) ==
              doctest::Approx(row.gamma_1m_half).epsilon(1e-12));
    }
}

TEST_CASE("alpha_constant") {
    SUBCASE("alpha = 1 gives 1/pi to >= 12 digits") {
        CHECK(alpha_constant(Alpha(1.0)) ==
              doctest::Approx(0.31830988618379067).epsilon(1e-13));
    }
    SUBCASE("alpha = 0.5 matches the high-precision oracle to 10 digits") {
        CHECK(alpha_constant(Alpha(0.5)) ==
              doctest::Approx(oracle::kStableConstantHalf).epsilon(1e-11));
    }
    SUBCASE("vanishes as alpha -> 0 (value at 1e-3 below 1e-3)") {
        const double v = alpha_constant(Alpha(1e-3));
        CHECK(v == doctest::Approx(oracle::kStableConstantMilli).epsilon(1e-10));
        CHECK(v < 1e-3);
        CHECK(v > 0.0);
    }
    SUBCASE("whole oracle table") {
        for (const auto& row : oracle::kGammaTable)
            CHECK(alpha_constant(Alpha(row.alpha)) ==
                  doctest::Approx(row.stable_constant).epsilon(1e-12));
    }
    SUBCASE("rejects indices outside (0,2)") {
        CHECK_THROWS(Alpha(0.0));
        CHECK_THROWS(Alpha(2.0));
        CHECK_THROWS(Alpha(-0.3));
        CHECK_THROWS(Alpha(2.5));
    }
}

TEST_CASE("sample_increment: characteristic function at alpha = 1") {
    const int n = 100000;
    const auto x = draw_increments(Alpha(1.0), 1.0, n, "test.cf");
    for (double xi : {0.5, 1.0, 2.0})
        CHECK(std::abs(empirical_cos_cf(x, xi) - std::exp(-xi)) < 0.01);
}

TEST_CASE("sample_increment: characteristic-function invariant over an (alpha, dt) grid") {
    const int n = 40000;
    int variant = 0;
    for (double a : {0.5, 1.0, 1.5}) {
        for (double dt : {0.25, 1.0}) {
            const auto x = draw_increments(Alpha(a), dt,
                                           n, ("test.cf.grid" + std::to_string(variant++)).c_str());
            for (double xi : {0.5, 1.0, 2.0}) {
                const double target = std::exp(-dt * std::pow(xi, a));
                CHECK(std::abs(empirical_cos_cf(x, xi) - target) < 4.0 / std::sqrt(n));
            }
        }
    }
}

TEST_CASE("sample_increment: 1/alpha self-similarity (KS)") {
    const int n = 10000;
    SUBCASE("dt = 4 rescaled vs dt = 1 at alpha = 1, spec threshold") {
        auto a = draw_increments(Alpha(1.0), 4.0, n, "test.ss.a");
        auto b = draw_increments(Alpha(1.0), 1.0, n, "test.ss.b");
        a /= 4.0;  // dt^{1/alpha} = 4
        std::vector<double> av(a.data(), a.data() + n), bv(b.data(), b.data() + n);
        CHECK(ks2(av, bv) < 1.36 / std::sqrt(static_cast<double>(n)));
    }
    SUBCASE("property over pairs at the 1% two-sample critical value") {
        const double crit = 1.628 * std::sqrt(2.0 / n);
        int variant = 0;
        for (double alpha : {0.7, 1.3}) {
            for (auto [dt1, dt2] : {std::pair{1.0, 4.0}, std::pair{0.5, 2.0}}) {
                auto a = draw_increments(Alpha(alpha), dt1, n,
                                         ("test.ss.q" + std::to_string(variant++)).c_str());
                auto b = draw_increments(Alpha(alpha), dt2, n,
                                         ("test.ss.q" + std::to_string(variant++)).c_str());
                a /= std::pow(dt1, 1.0 / alpha);
                b /= std::pow(dt2, 1.0 / alpha);
                std::vector<double> av(a.data(), a.data() + n), bv(b.data(), b.data() + n);
                CHECK(ks2(av, bv) < crit);
            }
        }
    }
}

TEST_CASE("sample_increment: symmetry of the law") {
    const auto x = draw_increments(Alpha(1.0), 1.0, 100000, "test.sign");
    const double mean_sign = x.sign().mean();
    CHECK(mean_sign > -0.01);
    CHECK(mean_sign < 0.01);
}

TEST_CASE("sample_path") {
    SUBCASE("same seed gives bit-identical paths") {
        Rng r1(kSeed, "test.path");
        Rng r2(kSeed, "test.path");
        const auto p1 = sample_path(Alpha(1.3), 1000, 0.01, r1);
        const auto p2 = sample_path(Alpha(1.3), 1000, 0.01, r2);
        CHECK((p1.increments == p2.increments).all());
        CHECK(p1.seed.master == kSeed);
        CHECK(p1.seed.stream == "test.path");
    }
    SUBCASE("n_steps = 0 rejected") {
        Rng rng(kSeed, "test.path0");
        CHECK_THROWS(sample_path(Alpha(1.0), 0, 0.01, rng));
    }
    SUBCASE("cumulative path is the exact prefix sum, X(0) = 0") {
        Rng rng(kSeed, "test.cum");
        const auto p = sample_path(Alpha(0.8), 257, 0.5, rng);
        const auto cum = p.cumulative();
        CHECK(cum[0] == 0.0);
        double acc = 0.0;
        for (Eigen::Index k = 0; k < p.steps(); ++k) {
            acc += p.increments[k];
            CHECK(cum[k + 1] == acc);
        }
    }
}

TEST_CASE("jump decomposition") {
    SUBCASE("rate: alpha = 1, eps0 = 1 gives 2/pi") {
        CHECK(jump_tail_rate(Alpha(1.0), 1.0) ==
              doctest::Approx(2.0 / 3.14159265358979324).epsilon(1e-12));
    }
    SUBCASE("eps0 <= 0 rejected") {
        Rng rng(kSeed, "test.dec0");
        CHECK_THROWS(sample_decomposed_path(Alpha(1.0), 0.0, 10, 0.1, rng));
        CHECK_THROWS(sample_decomposed_path(Alpha(1.0), -1.0, 10, 0.1, rng));
    }
    SUBCASE("Poisson jump-count concentration over T = 1000") {
        Rng rng(kSeed, "test.dec.count");
        const double eps0 = 1.0, dt = 0.5;
        const auto d = sample_decomposed_path(Alpha(1.0), eps0, 2000, dt, rng);
        const double lam_t = d.rate * 1000.0;
        CHECK(std::abs(static_cast<double>(d.jump_times.size()) - lam_t) <
              3.0 * std::sqrt(lam_t));
    }
    SUBCASE("all stored jumps exceed eps0; times sorted") {
        Rng rng(kSeed, "test.dec.sizes");
        const auto d = sample_decomposed_path(Alpha(0.7), 0.1, 4000, 0.25, rng);
        CHECK(d.jump_times.size() > 100);
        CHECK(std::is_sorted(d.jump_times.begin(), d.jump_times.end()));
        for (double sz : d.jump_sizes) CHECK(std::abs(sz) > 0.1);
        for (double t : d.jump_times) {
            CHECK(t > 0.0);
            CHECK(t <= d.small_part.horizon());
        }
    }
    SUBCASE("reassembly is bit-exact") {
        Rng rng(kSeed, "test.dec.reassemble");
        const auto d = sample_decomposed_path(Alpha(1.2), 0.1, 5000, 0.01, rng);
        const auto full = reassemble_increments(d);
        CHECK((full == d.combined_increments).all());
    }
    SUBCASE("superposed law matches the plain sampler (characteristic function)") {
        const int n = 20000;
        const double dt = 0.05;
        for (double a : {0.8, 1.5}) {
            Rng rng(kSeed, a < 1.0 ? "test.dec.cf.lo" : "test.dec.cf.hi");
            const auto d = sample_decomposed_path(Alpha(a), 0.1, n, dt, rng);
            const auto plain =
                draw_increments(Alpha(a), dt, n, a < 1.0 ? "test.dec.cfp.lo" : "test.dec.cfp.hi");
            for (double xi : {0.5, 1.0, 2.0}) {
                const double target = std::exp(-dt * std::pow(xi, a));
                CHECK(std::abs(empirical_cos_cf(d.combined_increments, xi) - target) <
                      4.0 / std::sqrt(n));
                CHECK(std::abs(empirical_cos_cf(plain, xi) - target) < 4.0 / std::sqrt(n));
            }
        }
    }
}

TEST_CASE("small-jump variance rate formula") {
    // 2 A_alpha delta^{2-alpha} / (2-alpha) at alpha = 1, delta = 0.1:
    // 2/pi * 0.1 = 0.063661977...
    CHECK(small_jump_variance_rate(Alpha(1.0), 0.1) ==
          doctest::Approx(0.063661977236758134).epsilon(1e-12));
}
