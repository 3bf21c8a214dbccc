#include "cntpf/fracture.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace cntpf {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2;

const std::vector<PackingTable::Row>& standard_rows() {
  static const std::vector<PackingTable::Row> rows = {
      {1, 1.0, 1.0},      {2, 2.0, 0.5},      {5, 2.701, 0.685},   {10, 3.813, 0.687},
      {20, 5.122, 0.762}, {50, 7.947, 0.791}, {100, 11.082, 0.814}};
  return rows;
}

// Relative tolerance for "R == sqrt(N / rho_A)" given three-digit table entries.
constexpr double kPackingConsistencyTol = 2e-3;

numerics::AdaptiveOptions adaptive(double rel_tol, double abs_tol = 0.0) {
  numerics::AdaptiveOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = abs_tol;
  opt.max_subdivisions = 5000;
  return opt;
}

}  // namespace

void FractureParams::validate() const {
  geom.validate();
  if (!(G_0 >= 0)) throw DomainError("fracture: G_0 must be >= 0");
  if (!(sigma_ult > 0)) throw DomainError("fracture: sigma_ult must be positive");
  if (!(tau_int > 0)) throw DomainError("fracture: tau_int must be positive");
  if (!(E_cnt > 0)) throw DomainError("fracture: E_cnt must be positive");
  if (!(A_const >= 0)) throw DomainError("fracture: A must be >= 0");
  if (!(mu_snub >= 0)) throw DomainError("fracture: mu must be >= 0");
  if (!(f_p >= 0 && f_p < 1)) throw DomainError("fracture: f_p must lie in [0, 1)");
}

// ---------------------------------------------------------------------------
// Packing

PackingTable PackingTable::standard() {
  static const PackingTable table(standard_rows());
  return table;
}

PackingTable::PackingTable(std::vector<Row> rows) : rows_(std::move(rows)) {
  std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.N < b.N; });
  if (rows_.empty() || rows_.front().N != 1.0)
    throw DomainError("packing table: first row must be N = 1");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Row& r = rows_[i];
    if (!(r.rho_A > 0 && r.rho_A <= 1)) throw DomainError("packing table: rho_A must lie in (0, 1]");
    if (std::abs(r.R - std::sqrt(r.N / r.rho_A)) > kPackingConsistencyTol * r.R) {
      std::ostringstream msg;
      msg << "packing table: R = " << r.R << " inconsistent with sqrt(N / rho_A) at N = " << r.N;
      throw DomainError(msg.str());
    }
    if (i > 0 && !(r.N > rows_[i - 1].N && r.R > rows_[i - 1].R))
      throw DomainError("packing table: N and R must be strictly increasing");
  }
}

PackingTable PackingTable::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open packing table '" + path + "'");
  std::vector<Row> rows;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double N = 0, rho = 0;
    if (!(ls >> N)) continue;
    if (!(ls >> rho)) {
      throw DomainError(path + ":" + std::to_string(line_no) + ": expected 'N rho_A [R]'");
    }
    double R = 0;
    if (!(ls >> R)) R = std::sqrt(N / rho);
    rows.push_back({N, R, rho});
  }
  for (const Row& req : standard_rows()) {
    const bool found = std::any_of(rows.begin(), rows.end(), [&](const Row& r) {
      return r.N == req.N && std::abs(r.rho_A - req.rho_A) < 1e-12;
    });
    if (!found) {
      throw DomainError(path + ": missing mandatory row N = " + std::to_string(int(req.N)));
    }
  }
  return PackingTable(std::move(rows));
}

PackingEntry PackingTable::lookup(double N) const {
  if (!(N >= rows_.front().N && N <= rows_.back().N)) {
    std::ostringstream msg;
    msg << "packing table: N = " << N << " outside [" << rows_.front().N << ", " << rows_.back().N
        << "]";
    throw DomainError(msg.str());
  }
  auto hi = std::lower_bound(rows_.begin(), rows_.end(), N,
                             [](const Row& r, double n) { return r.N < n; });
  if (hi->N == N) return {hi->R, hi->rho_A};
  auto lo = hi - 1;
  const double w = (N - lo->N) / (hi->N - lo->N);
  const double rho = lo->rho_A + w * (hi->rho_A - lo->rho_A);
  return {std::sqrt(N / rho), rho};
}

PackingEntry packing_ratio(double N, const PackingTable& table) { return table.lookup(N); }

FibreSection bundle_section(double N, const FractureParams& params, const PackingTable& table) {
  if (N == 1.0) return {params.area(), params.perimeter()};
  const PackingEntry e = table.lookup(N);
  return {N * params.area(), std::numbers::pi * e.R * params.geom.D_cnt};
}

// ---------------------------------------------------------------------------
// Single fibre

double oblique_strength(double theta, const FractureParams& params) {
  if (theta >= kHalfPi) return params.A_const > 0 ? 0.0 : params.sigma_ult;
  return std::max(0.0, params.sigma_ult * (1.0 - params.A_const * std::tan(theta)));
}

namespace {

double critical_length_for(double theta, const FractureParams& params, const FibreSection& s) {
  const double strength = oblique_strength(theta, params);
  if (strength == 0.0) return 0.0;
  return s.area * strength / (s.perimeter * params.tau_int * std::exp(params.mu_snub * theta));
}

double limit_for(double theta, const FractureParams& params, const FibreSection& s) {
  const double lc = critical_length_for(theta, params, s);
  return params.threshold == PulloutThreshold::kCriticalLength ? lc : 0.5 * lc;
}

double rupture_work(double theta, const FractureParams& params, const FibreSection& s) {
  const double strength =
      params.rupture == RuptureStrength::kNominal ? params.sigma_ult : oblique_strength(theta, params);
  return s.area * strength * strength * params.geom.L_cnt / (2.0 * params.E_cnt);
}

}  // namespace

double critical_length(double theta, const FractureParams& params, double bundle_N,
                       const PackingTable& table) {
  return critical_length_for(theta, params, bundle_section(bundle_N, params, table));
}

double pullout_limit(double theta, const FractureParams& params, double bundle_N,
                     const PackingTable& table) {
  return limit_for(theta, params, bundle_section(bundle_N, params, table));
}

double work_of_fracture(double l, double theta, double bundle_N, const FractureParams& params,
                        const PackingTable& table) {
  if (l < 0) throw DomainError("work_of_fracture: embedment length must be >= 0");
  const FibreSection s = bundle_section(bundle_N, params, table);
  if (l < limit_for(theta, params, s)) {
    return l * l * params.tau_int * s.perimeter * std::exp(params.mu_snub * theta) / 2.0;
  }
  return rupture_work(theta, params, s);
}

// ---------------------------------------------------------------------------
// Planar ODF

PlanarODF::PlanarODF(double p, double q, double theta_min, double theta_max)
    : p_(p), q_(q), theta_min_(theta_min), theta_max_(theta_max) {
  if (!(p >= 0.5 && q >= 0.5)) throw DomainError("planar ODF: p and q must be >= 1/2");
  if (!(theta_min >= 0 && theta_max <= kHalfPi && theta_min < theta_max))
    throw DomainError("planar ODF: need 0 <= theta_min < theta_max <= pi/2");
  if (theta_min == 0.0 && theta_max == kHalfPi) {
    // int_0^{pi/2} sin^(2p-1) cos^(2q-1) = B(p, q) / 2
    log_norm_ = std::lgamma(p) + std::lgamma(q) - std::lgamma(p + q) - std::log(2.0);
  } else {
    // Scale by the kernel maximum on the support to avoid underflow.
    double peak = std::max(log_kernel(theta_min), log_kernel(theta_max));
    if (p > 0.5 && q > 0.5) {
      const double mode = std::atan(std::sqrt((2 * p - 1) / (2 * q - 1)));
      if (mode > theta_min && mode < theta_max) peak = std::max(peak, log_kernel(mode));
    }
    auto f = [&](double t) { return std::exp(log_kernel(t) - peak); };
    const double integral = numerics::integrate_adaptive(f, theta_min, theta_max, adaptive(1e-14)).value;
    log_norm_ = peak + std::log(integral);
  }
}

double PlanarODF::log_kernel(double theta) const {
  double v = 0.0;
  if (p_ != 0.5) v += (2 * p_ - 1) * std::log(std::sin(theta));
  if (q_ != 0.5) v += (2 * q_ - 1) * std::log(std::cos(theta));
  return v;
}

double PlanarODF::density(double theta) const {
  if (!(theta >= theta_min_ && theta <= theta_max_)) {
    std::ostringstream msg;
    msg << "planar ODF: theta = " << theta << " outside [" << theta_min_ << ", " << theta_max_ << "]";
    throw DomainError(msg.str());
  }
  return std::exp(log_kernel(theta) - log_norm_);
}

double planar_odf(double theta, const PlanarODF& odf) { return odf.density(theta); }

namespace {

std::vector<double> odf_breakpoints(const PlanarODF& odf) {
  std::vector<double> b{odf.theta_min(), odf.theta_max()};
  if (odf.p() > 0.5 && odf.q() > 0.5) {
    const double mode = std::atan(std::sqrt((2 * odf.p() - 1) / (2 * odf.q() - 1)));
    if (mode > odf.theta_min() && mode < odf.theta_max()) b.push_back(mode);
  }
  return b;
}

std::pair<double, double> odf_moments(const PlanarODF& odf) {
  const auto bp = odf_breakpoints(odf);
  const auto opt = adaptive(1e-13, 1e-15);
  const double mean =
      numerics::integrate_piecewise([&](double t) { return t * odf.density(t); }, bp, opt).value;
  const double var = numerics::integrate_piecewise(
                         [&](double t) { return (t - mean) * (t - mean) * odf.density(t); }, bp, opt)
                         .value;
  return {mean, std::sqrt(var)};
}

}  // namespace

double PlanarODF::mean() const { return odf_moments(*this).first; }
double PlanarODF::stddev() const { return odf_moments(*this).second; }

std::pair<double, double> fit_pq(double theta_mu, double theta_sigma, double theta_min,
                                 double theta_max, const FitOptions& opt) {
  if (!(theta_sigma > 0)) throw DomainError("fit_pq: theta_sigma must be positive");
  if (!(theta_mu > theta_min && theta_mu < theta_max)) {
    throw DomainError("fit_pq: infeasible target, the mean must lie strictly inside the support");
  }
  const double log_half = std::log(0.5);

  // Initial guess: sin^2(theta) ~ Beta(p, q) on the full quarter circle.
  const double m = std::pow(std::sin(theta_mu), 2);
  const double v = std::pow(std::sin(2 * theta_mu) * theta_sigma, 2);
  const double c = m * (1 - m) / v - 1;
  Eigen::Vector2d x(std::log(std::max(0.5, c > 0 ? m * c : 0.5)),
                    std::log(std::max(0.5, c > 0 ? (1 - m) * c : 0.5)));

  auto residual = [&](const Eigen::Vector2d& s) {
    const PlanarODF odf(std::exp(s[0]), std::exp(s[1]), theta_min, theta_max);
    const auto [mu, sd] = odf_moments(odf);
    return Eigen::Vector2d(mu - theta_mu, sd - theta_sigma);
  };
  auto project = [&](Eigen::Vector2d s) {
    s[0] = std::max(s[0], log_half);
    s[1] = std::max(s[1], log_half);
    return s;
  };

  Eigen::Vector2d r = residual(x);
  for (int iter = 0; iter < opt.max_iterations && r.norm() > opt.tol; ++iter) {
    Eigen::Matrix2d J;
    for (int j = 0; j < 2; ++j) {
      const double h = 1e-6;
      Eigen::Vector2d xp = x, xm = x;
      xp[j] += h;
      xm[j] -= h;
      J.col(j) = (residual(xp) - residual(xm)) / (2 * h);
    }
    Eigen::Vector2d step = -J.fullPivLu().solve(r);
    // Drop components that push into an active bound.
    for (int j = 0; j < 2; ++j) {
      if (x[j] <= log_half && step[j] < 0) step[j] = 0;
    }
    if (step.norm() > 2.0) step *= 2.0 / step.norm();
    bool improved = false;
    for (double a = 1.0; a > 1e-6; a *= 0.5) {
      const Eigen::Vector2d trial = project(x + a * step);
      const Eigen::Vector2d rt = residual(trial);
      if (rt.norm() < r.norm()) {
        x = trial;
        r = rt;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (r.norm() > opt.tol) {
    std::ostringstream msg;
    msg << "fit_pq: infeasible target (mean " << theta_mu << ", std " << theta_sigma
        << "): closest p = " << std::exp(x[0]) << ", q = " << std::exp(x[1])
        << " leaves residual " << r.norm();
    throw DomainError(msg.str());
  }
  return {std::exp(x[0]), std::exp(x[1])};
}

// ---------------------------------------------------------------------------
// Fracture energy

FractureEnergyParts fracture_energy_parts(double bundle_N, const FractureParams& params,
                                          const PlanarODF& odf, const PackingTable& table,
                                          const FractureQuadrature& quad) {
  params.validate();
  if (!(bundle_N >= 1)) throw DomainError("fracture energy: bundle size N must be >= 1");
  if (params.f_p == 0.0) return {};
  const FibreSection s = bundle_section(bundle_N, params, table);
  const double half_L = 0.5 * params.geom.L_cnt;

  // Breakpoints: support ends, strength clamp, and where the pull-out limit
  // crosses the longest embedment L/2 (the limit decreases with theta).
  std::vector<double> bp = odf_breakpoints(odf);
  double upper = odf.theta_max();
  if (params.A_const > 0) {
    const double clamp = std::atan(1.0 / params.A_const);
    if (clamp > odf.theta_min() && clamp < odf.theta_max()) {
      bp.push_back(clamp);
      upper = clamp;
    }
  }
  auto excess = [&](double t) { return limit_for(t, params, s) - half_L; };
  const double lo = odf.theta_min();
  const double hi = std::nextafter(upper, lo);
  if (excess(lo) > 0 && excess(hi) < 0) bp.push_back(numerics::brent_root(excess, lo, hi));

  auto pull = [&](double t) {
    const double l = std::min(limit_for(t, params, s), half_L);
    return std::cos(t) * odf.density(t) * params.tau_int * s.perimeter *
           std::exp(params.mu_snub * t) * l * l * l / 6.0;
  };
  auto rupt = [&](double t) {
    const double l = std::min(limit_for(t, params, s), half_L);
    return std::cos(t) * odf.density(t) * (half_L - l) * rupture_work(t, params, s);
  };
  const double pre = 2.0 * params.f_p / (s.area * params.geom.L_cnt);
  const auto opt = adaptive(quad.theta_rel_tol, 1e-300);
  FractureEnergyParts out;
  out.pullout = pre * numerics::integrate_piecewise(pull, bp, opt).value;
  out.rupture = pre * numerics::integrate_piecewise(rupt, bp, opt).value;
  return out;
}

double fracture_energy_uniform(const FractureParams& params, const PlanarODF& odf,
                               const FractureQuadrature& quad) {
  return fracture_energy_parts(1.0, params, odf, PackingTable::standard(), quad).total();
}

double fracture_energy_bundle(double bundle_N, const FractureParams& params, const PlanarODF& odf,
                              const PackingTable& table, const FractureQuadrature& quad) {
  return fracture_energy_parts(bundle_N, params, odf, table, quad).total();
}

// ---------------------------------------------------------------------------
// Weibull statistics

double WeibullParams::mean() const { return lambda * std::tgamma(1 + 1 / k); }

double WeibullParams::stddev() const {
  const double g1 = std::lgamma(1 + 1 / k);
  const double g2 = std::lgamma(1 + 2 / k);
  return mean() * std::sqrt(std::expm1(g2 - 2 * g1));
}

double WeibullParams::pdf(double x) const {
  if (x < 0) return 0.0;
  if (x == 0) return k < 1 ? std::numeric_limits<double>::infinity() : (k == 1 ? 1 / lambda : 0.0);
  const double z = x / lambda;
  return std::exp(std::log(k / lambda) + (k - 1) * std::log(z) - std::pow(z, k));
}

double WeibullParams::cdf(double x) const {
  if (x <= 0) return 0.0;
  return -std::expm1(-std::pow(x / lambda, k));
}

WeibullParams weibull_fit(double N_mu, double N_sigma) {
  if (!(N_mu > 0 && N_sigma > 0)) throw DomainError("weibull_fit: mean and std must be positive");
  const double log_cv = std::log(N_sigma / N_mu);
  // log CV(k) is strictly decreasing in k; solve in s = log k.
  auto f = [&](double s) {
    const double k = std::exp(s);
    const double ratio = std::expm1(std::lgamma(1 + 2 / k) - 2 * std::lgamma(1 + 1 / k));
    return 0.5 * std::log(ratio) - log_cv;
  };
  numerics::RootOptions ro;
  ro.x_tol = 1e-15;
  const double s = numerics::brent_root(f, std::log(0.02), std::log(1e5), ro);
  WeibullParams w;
  w.k = std::exp(s);
  w.lambda = N_mu / std::tgamma(1 + 1 / w.k);
  return w;
}

BundleStatistics BundleStatistics::fit(double N_mu, double N_sigma, double N_min, double N_max) {
  if (!(N_min >= 1)) throw DomainError("bundle statistics: N_min must be >= 1");
  if (!(N_max >= N_min)) throw DomainError("bundle statistics: N_max must be >= N_min");
  BundleStatistics s;
  s.N_mu = N_mu;
  s.N_sigma = N_sigma;
  s.N_min = N_min;
  s.N_max = N_max;
  if (N_max > N_min) {
    s.weibull = weibull_fit(N_mu, N_sigma);
    if (!(s.weibull.cdf(N_max) - s.weibull.cdf(N_min) > 0))
      throw DomainError("bundle statistics: Weibull has no mass on [N_min, N_max]");
  }
  return s;
}

double BundleStatistics::truncated_pdf(double N) const {
  if (N < N_min || N > N_max) return 0.0;
  const double mass = weibull.cdf(N_max) - weibull.cdf(N_min);
  return weibull.pdf(N) / mass;
}

double fracture_energy_agglomerated(const FractureParams& params, const PlanarODF& odf,
                                    const BundleStatistics& stats, const PackingTable& table,
                                    const FractureQuadrature& quad) {
  if (stats.N_max > table.max_N()) {
    std::ostringstream msg;
    msg << "fracture_energy_agglomerated: N_max = " << stats.N_max
        << " exceeds the packing table range (" << table.max_N() << ")";
    throw DomainError(msg.str());
  }
  if (stats.N_min == stats.N_max) return fracture_energy_bundle(stats.N_min, params, odf, table, quad);

  std::vector<double> bp{stats.N_min, stats.N_max};
  for (const auto& row : table.rows()) {
    if (row.N > stats.N_min && row.N < stats.N_max) bp.push_back(row.N);
  }
  for (int j = -6; j <= 6; ++j) {
    const double n = stats.N_mu + j * stats.N_sigma;
    if (n > stats.N_min && n < stats.N_max) bp.push_back(n);
  }
  auto integrand = [&](double N) {
    const double w = stats.truncated_pdf(N);
    if (w == 0.0) return 0.0;
    return fracture_energy_bundle(N, params, odf, table, quad) * w;
  };
  // Rough scale first, so segments with negligible weight do not chase a
  // relative tolerance on their own tiny contribution.
  const double scale = std::max(fracture_energy_bundle(stats.N_min, params, odf, table, quad),
                                fracture_energy_bundle(stats.N_max, params, odf, table, quad));
  const auto opt = adaptive(quad.N_rel_tol, quad.N_rel_tol * 1e-3 * scale);
  return numerics::integrate_piecewise(integrand, bp, opt).value;
}

FractureEnergySummary total_fracture_energy(const FractureParams& params, const PlanarODF& odf,
                                            const AgglomerationParams& agg,
                                            const BundleStatistics& stats,
                                            const PackingTable& table,
                                            const FractureQuadrature& quad) {
  agg.validate();
  FractureEnergySummary s;
  s.G_PF = fracture_energy_uniform(params, odf, quad);
  s.G_PF_agg = agg.zeta > 0 ? fracture_energy_agglomerated(params, odf, stats, table, quad) : 0.0;
  s.G_c = params.G_0 + (1 - agg.zeta) * s.G_PF + agg.zeta * s.G_PF_agg;
  return s;
}

double mass_to_volume_fraction(double mass_fraction, double rho_filler, double rho_matrix) {
  if (!(mass_fraction >= 0 && mass_fraction < 1))
    throw DomainError("mass_to_volume_fraction: mass fraction must lie in [0, 1)");
  if (!(rho_filler > 0 && rho_matrix > 0))
    throw DomainError("mass_to_volume_fraction: densities must be positive");
  const double vf = mass_fraction / rho_filler;
  const double vm = (1 - mass_fraction) / rho_matrix;
  return vf / (vf + vm);
}

}  // namespace cntpf
