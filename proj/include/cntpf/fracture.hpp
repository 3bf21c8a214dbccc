#pragma once

// Fracture energy of CNT composites from fibre pull-out and rupture work,
// with a planar orientation density and an equivalent-bundle agglomeration
// model (circle-packing cross-sections, truncated Weibull bundle sizes).

#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "cntpf/homogenize.hpp"
#include "cntpf/numerics.hpp"

namespace cntpf {

/// Embedment length below which a fibre pulls out instead of breaking.
enum class PulloutThreshold {
  kCriticalLength,      ///< l < L_c(theta): force-balance length itself
  kHalfCriticalLength,  ///< l < L_c(theta) / 2
};

/// Strength entering the rupture work.
enum class RuptureStrength {
  kNominal,  ///< sigma_ult for every orientation
  kOblique,  ///< sigma_ult(theta) = sigma_ult (1 - A tan theta), clamped at 0
};

struct FractureParams {
  double G_0 = 133.0;        ///< matrix toughness (J/m^2)
  double sigma_ult = 35e9;   ///< CNT strength (Pa)
  double tau_int = 47e6;     ///< interfacial shear strength (Pa)
  double A_const = 0.083;    ///< inclined-strength constant
  double mu_snub = 0.0;      ///< snubbing friction coefficient
  double E_cnt = 700e9;      ///< CNT modulus (Pa)
  FillerGeometry geom{};
  double f_p = 0.01;
  PulloutThreshold threshold = PulloutThreshold::kCriticalLength;
  RuptureStrength rupture = RuptureStrength::kNominal;

  double area() const { return std::numbers::pi * geom.D_cnt * geom.D_cnt / 4.0; }
  double perimeter() const { return std::numbers::pi * geom.D_cnt; }
  void validate() const;
};

// ---------------------------------------------------------------------------
// Packing of N equal circles in a circle

struct PackingEntry {
  double R = 1.0;      ///< enclosing diameter / CNT diameter
  double rho_A = 1.0;  ///< packing density N A_cnt / A_ed
};

class PackingTable {
 public:
  struct Row {
    double N;
    double R;
    double rho_A;
  };

  /// Rows N = 1, 2, 5, 10, 20, 50, 100 with their tabulated ratios.
  static PackingTable standard();
  /// Whitespace separated "N rho_A [R]" per line, '#' starts a comment.
  /// R defaults to sqrt(N / rho_A). The standard rows must be present.
  static PackingTable load(const std::string& path);

  explicit PackingTable(std::vector<Row> rows);

  /// Exact row when N is tabulated; otherwise rho_A interpolated linearly
  /// between neighbouring rows and R = sqrt(N / rho_A).
  PackingEntry lookup(double N) const;
  double max_N() const { return rows_.back().N; }
  const std::vector<Row>& rows() const { return rows_; }

 private:
  std::vector<Row> rows_;
};

PackingEntry packing_ratio(double N, const PackingTable& table);

/// Cross-section area and perimeter of the equivalent fibre for a bundle of
/// N CNTs (N = 1 gives the single CNT).
struct FibreSection {
  double area = 0.0;
  double perimeter = 0.0;
};
FibreSection bundle_section(double N, const FractureParams& params, const PackingTable& table);

// ---------------------------------------------------------------------------
// Single-fibre micromechanics

/// sigma_ult (1 - A tan theta), clamped at 0.
double oblique_strength(double theta, const FractureParams& params);

/// L_c(theta) = A_eff sigma_ult(theta) / (P_eff tau_int e^(mu theta)).
double critical_length(double theta, const FractureParams& params, double bundle_N = 1.0,
                       const PackingTable& table = PackingTable::standard());

/// Embedment length separating pull-out from rupture for the configured threshold.
double pullout_limit(double theta, const FractureParams& params, double bundle_N,
                     const PackingTable& table);

/// Piecewise work of fracture of one fibre (or equivalent bundle fibre).
double work_of_fracture(double l, double theta, double bundle_N, const FractureParams& params,
                        const PackingTable& table = PackingTable::standard());

// ---------------------------------------------------------------------------
// Planar orientation density g ~ sin^(2p-1) cos^(2q-1) on [theta_min, theta_max]

class PlanarODF {
 public:
  PlanarODF(double p = 0.5, double q = 0.5, double theta_min = 0.0,
            double theta_max = std::numbers::pi / 2);

  static PlanarODF random() { return PlanarODF(); }

  double p() const { return p_; }
  double q() const { return q_; }
  double theta_min() const { return theta_min_; }
  double theta_max() const { return theta_max_; }

  /// Normalised density; DomainError outside [theta_min, theta_max].
  double density(double theta) const;
  /// Integral of the unnormalised kernel over the support.
  double normalization() const { return std::exp(log_norm_); }
  double mean() const;
  double stddev() const;

 private:
  double log_kernel(double theta) const;

  double p_, q_, theta_min_, theta_max_;
  double log_norm_ = 0.0;
};

double planar_odf(double theta, const PlanarODF& odf);

struct FitOptions {
  double tol = 1e-10;  ///< residual on (mean, std) in radians
  int max_iterations = 100;
};

/// Shape parameters (p, q) >= 1/2 reproducing the mean and standard
/// deviation of theta. DomainError when no admissible pair exists.
std::pair<double, double> fit_pq(double theta_mu, double theta_sigma, double theta_min = 0.0,
                                 double theta_max = std::numbers::pi / 2,
                                 const FitOptions& opt = {});

// ---------------------------------------------------------------------------
// Fracture energy integrals

struct FractureEnergyParts {
  double pullout = 0.0;
  double rupture = 0.0;
  double total() const { return pullout + rupture; }
};

struct FractureQuadrature {
  double theta_rel_tol = 1e-12;
  double N_rel_tol = 1e-9;
};

/// Pull-out and rupture contributions to G_PFN^agg(N) (J/m^2); N = 1 is the
/// well-dispersed case.
FractureEnergyParts fracture_energy_parts(double bundle_N, const FractureParams& params,
                                          const PlanarODF& odf, const PackingTable& table,
                                          const FractureQuadrature& quad = {});

double fracture_energy_uniform(const FractureParams& params, const PlanarODF& odf,
                               const FractureQuadrature& quad = {});

double fracture_energy_bundle(double bundle_N, const FractureParams& params, const PlanarODF& odf,
                              const PackingTable& table = PackingTable::standard(),
                              const FractureQuadrature& quad = {});

// ---------------------------------------------------------------------------
// Bundle-size statistics

struct WeibullParams {
  double lambda = 1.0;
  double k = 1.0;
  double mean() const;
  double stddev() const;
  double pdf(double x) const;
  double cdf(double x) const;
};

/// Scale and shape whose (untruncated) mean and standard deviation are
/// (N_mu, N_sigma).
WeibullParams weibull_fit(double N_mu, double N_sigma);

struct BundleStatistics {
  double N_mu = 10.0;
  double N_sigma = 1.0;
  double N_min = 1.0;
  double N_max = 50.0;
  WeibullParams weibull{};

  /// Validates the bounds and fits the Weibull parameters.
  static BundleStatistics fit(double N_mu, double N_sigma, double N_min, double N_max);
  /// Weibull density renormalised over [N_min, N_max].
  double truncated_pdf(double N) const;
};

/// int_{N_min}^{N_max} G_PFN^agg(N) p(N) dN with p renormalised on the interval.
double fracture_energy_agglomerated(const FractureParams& params, const PlanarODF& odf,
                                    const BundleStatistics& stats,
                                    const PackingTable& table = PackingTable::standard(),
                                    const FractureQuadrature& quad = {});

struct FractureEnergySummary {
  double G_PF = 0.0;
  double G_PF_agg = 0.0;
  double G_c = 0.0;
};

/// G_c = G_0 + (1 - zeta) G_PF + zeta G_PF^agg.
FractureEnergySummary total_fracture_energy(const FractureParams& params, const PlanarODF& odf,
                                            const AgglomerationParams& agg,
                                            const BundleStatistics& stats,
                                            const PackingTable& table = PackingTable::standard(),
                                            const FractureQuadrature& quad = {});

/// Filler volume fraction from a mass fraction and the two densities.
double mass_to_volume_fraction(double mass_fraction, double rho_filler, double rho_matrix);

}  // namespace cntpf
