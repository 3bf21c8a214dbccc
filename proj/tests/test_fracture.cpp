#include <gtest/gtest.h>

#include <random>

#include "cntpf/fracture.hpp"
#include "cntpf/homogenize.hpp"
#include "oracles.hpp"

using namespace cntpf;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

FractureParams table2() { return FractureParams{}; }

}  // namespace

TEST(PlanarODF, NormalisedAgainstTanhSinh) {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> pq(0.5, 6.0), lim(0.0, 0.6);
  for (int k = 0; k < 12; ++k) {
    const double p = pq(rng), q = pq(rng);
    const double lo = k % 2 ? lim(rng) : 0.0;
    const double hi = k % 3 ? kHalfPi - lim(rng) : kHalfPi;
    const PlanarODF odf(p, q, lo, hi);
    const oracle::PlanarDensity ref(p, q, lo, hi);
    boost::math::quadrature::tanh_sinh<double> ts;
    const double total = ts.integrate([&](double t) { return odf.density(t); }, lo, hi);
    EXPECT_NEAR(total, 1.0, 1e-10) << p << " " << q;
    const double mid = 0.5 * (lo + hi);
    EXPECT_NEAR(odf.density(mid), ref(mid), 1e-10 * ref(mid));
  }
}

TEST(PlanarODF, RandomIsUniform) {
  const PlanarODF odf = PlanarODF::random();
  EXPECT_NEAR(odf.density(0.3), 2 / std::numbers::pi, 1e-14);
  EXPECT_NEAR(odf.mean(), std::numbers::pi / 4, 1e-12);
  EXPECT_NEAR(odf.stddev(), std::numbers::pi / std::sqrt(48.0), 1e-10);
}

TEST(PlanarODF, RejectsInvalid) {
  EXPECT_THROW(PlanarODF(0.4, 1.0), DomainError);
  EXPECT_THROW(PlanarODF(1.0, 1.0, 1.0, 0.5), DomainError);
  EXPECT_THROW(PlanarODF().density(2.0), DomainError);
}

TEST(PlanarODF, FitRoundTrip) {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> pq(0.5, 20.0);
  for (int k = 0; k < 10; ++k) {
    const PlanarODF odf(pq(rng), pq(rng));
    const auto [p, q] = fit_pq(odf.mean(), odf.stddev());
    const PlanarODF fit(p, q);
    EXPECT_NEAR(fit.mean(), odf.mean(), 1e-6);
    EXPECT_NEAR(fit.stddev(), odf.stddev(), 1e-6);
  }
  EXPECT_THROW(fit_pq(0.7, 1.0), DomainError);
}

TEST(Weibull, FitRoundTrip) {
  for (auto [mu, sigma] : {std::pair{10.0, 1.0}, {91.0, 2.0}, {5.0, 4.0}, {20.0, 15.0}}) {
    const WeibullParams w = weibull_fit(mu, sigma);
    EXPECT_NEAR(w.mean(), mu, 1e-8 * mu);
    EXPECT_NEAR(w.stddev(), sigma, 1e-8 * sigma);
  }
}

TEST(Weibull, TruncatedPdfIntegratesToOne) {
  const BundleStatistics s = BundleStatistics::fit(10.0, 3.0, 1.0, 50.0);
  boost::math::quadrature::tanh_sinh<double> ts;
  EXPECT_NEAR(ts.integrate([&](double N) { return s.truncated_pdf(N); }, 1.0, 50.0), 1.0, 1e-10);
  EXPECT_THROW(BundleStatistics::fit(10.0, 1.0, 5.0, 2.0), DomainError);
}

TEST(Packing, StandardTableAndFile) {
  const PackingTable std_table = PackingTable::standard();
  EXPECT_EQ(std_table.lookup(1.0).R, 1.0);
  EXPECT_NEAR(std_table.lookup(2.0).R, 2.0, 1e-12);
  const PackingTable file = PackingTable::load(std::string(CNTPF_DATA_DIR) + "/packing_table.txt");
  for (const auto& row : std_table.rows()) EXPECT_NEAR(file.lookup(row.N).rho_A, row.rho_A, 1e-12);
  const PackingEntry mid = std_table.lookup(7.5);
  EXPECT_NEAR(mid.R, std::sqrt(7.5 / mid.rho_A), 1e-14);
  EXPECT_THROW(std_table.lookup(200.0), DomainError);
  EXPECT_THROW(PackingTable::load("/nonexistent/table.txt"), std::exception);
}

TEST(SingleFibre, CriticalLength) {
  const FractureParams fp = table2();
  // A sigma / (P tau) = D sigma / (4 tau)
  EXPECT_NEAR(critical_length(0.0, fp), fp.geom.D_cnt * fp.sigma_ult / (4 * fp.tau_int), 1e-20);
  EXPECT_EQ(oblique_strength(std::atan(1 / fp.A_const) + 1e-3, fp), 0.0);
  for (double l : {1e-9, 5e-8, 1e-6})
    for (double t : {0.0, 0.5, 1.2})
      EXPECT_NEAR(work_of_fracture(l, t, 1.0, fp), oracle::work(l, t, fp), 1e-12 * oracle::work(l, t, fp));
}

TEST(FractureEnergy, MatchesTrapezoidOracle) {
  std::mt19937 rng(17);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 3; ++k) {
    FractureParams fp;
    fp.geom.L_cnt = (1 + 5 * u(rng)) * 1e-6;
    fp.tau_int = (20 + 60 * u(rng)) * 1e6;
    fp.sigma_ult = (20 + 30 * u(rng)) * 1e9;
    fp.A_const = 0.2 * u(rng);
    fp.mu_snub = 0.5 * u(rng);
    fp.f_p = 0.01;
    fp.threshold = k == 1 ? PulloutThreshold::kHalfCriticalLength : PulloutThreshold::kCriticalLength;
    fp.rupture = k == 2 ? RuptureStrength::kOblique : RuptureStrength::kNominal;
    const double p = 1 + 2 * u(rng), q = 1 + 2 * u(rng);
    const double got = fracture_energy_uniform(fp, PlanarODF(p, q));
    const double ref = oracle::fracture_energy_trapezoid(fp, oracle::PlanarDensity(p, q, 0, kHalfPi));
    EXPECT_NEAR(got, ref, 1e-4 * ref) << "set " << k;
  }
}

TEST(FractureEnergy, LinearInFraction) {
  FractureParams fp;
  fp.f_p = 0.005;
  const double g1 = fracture_energy_uniform(fp, PlanarODF());
  fp.f_p = 0.01;
  const double g2 = fracture_energy_uniform(fp, PlanarODF());
  EXPECT_NEAR(g2, 2 * g1, 1e-12 * g2);
  fp.f_p = 0.0;
  EXPECT_EQ(fracture_energy_uniform(fp, PlanarODF()), 0.0);
}

TEST(FractureEnergy, SingleTubeBundleIsDispersed) {
  const FractureParams fp;
  const double g = fracture_energy_uniform(fp, PlanarODF());
  EXPECT_NEAR(fracture_energy_bundle(1.0, fp, PlanarODF()), g, 1e-12 * g);
}

TEST(FractureEnergy, RuptureRegimeIndependentOfBundleSize) {
  FractureParams fp;
  fp.tau_int = 1e16;  // critical lengths vanish: every tube ruptures
  const double g1 = fracture_energy_bundle(1.0, fp, PlanarODF());
  for (double N : {2.0, 7.0, 50.0, 100.0})
    EXPECT_NEAR(fracture_energy_bundle(N, fp, PlanarODF()), g1, 1e-6 * g1) << N;
}

TEST(FractureEnergy, AgglomerationLowersToughening) {
  const FractureParams fp;
  const AgglomerationParams agg{0.2, 0.4};
  const BundleStatistics stats = BundleStatistics::fit(10.0, 1.0, 1.0, 50.0);
  const FractureEnergySummary s = total_fracture_energy(fp, PlanarODF(), agg, stats);
  EXPECT_LT(s.G_PF_agg, s.G_PF);
  EXPECT_NEAR(s.G_c, fp.G_0 + 0.6 * s.G_PF + 0.4 * s.G_PF_agg, 1e-12 * s.G_c);
}

TEST(FractureEnergy, PeaksNearStrengthOverTwiceShear) {
  FractureParams fp;
  double best_kappa = 0, best = 0;
  for (double kappa = 300; kappa <= 450; kappa += 2) {
    fp.geom.L_cnt = kappa * fp.geom.D_cnt;
    const double g = fracture_energy_uniform(fp, PlanarODF());
    if (g > best) best = g, best_kappa = kappa;
  }
  EXPECT_NEAR(best_kappa, fp.sigma_ult / (2 * fp.tau_int), 15.0);
}

TEST(MassFraction, Conversion) {
  EXPECT_EQ(mass_to_volume_fraction(0.0, 1.8, 1.2), 0.0);
  EXPECT_NEAR(mass_to_volume_fraction(0.01, 1.8, 1.2), (0.01 / 1.8) / (0.01 / 1.8 + 0.99 / 1.2), 1e-16);
  EXPECT_NEAR(mass_to_volume_fraction(0.3, 1.0, 1.0), 0.3, 1e-16);
  EXPECT_THROW(mass_to_volume_fraction(1.0, 1.8, 1.2), DomainError);
}
