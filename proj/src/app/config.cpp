#include "cntpf/app/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

#include "cntpf/io/csv.hpp"

namespace cntpf::app {

namespace pt = boost::property_tree;

std::vector<double> SweepSpec::values() const {
  std::vector<double> v;
  if (count == 1) return {start};
  for (int i = 0; i < count; ++i) {
    const double t = static_cast<double>(i) / (count - 1);
    v.push_back(log_spacing ? start * std::pow(stop / start, t) : start + (stop - start) * t);
  }
  v.back() = stop;
  return v;
}

std::string RunConfig::hash() const {
  std::string canon;
  for (const auto& [k, v] : values) canon += k + "=" + v + "\n";
  return io::fnv1a_hex(canon);
}

const std::vector<KeyInfo>& config_schema() {
  static const std::vector<KeyInfo> schema = {
      {"matrix.E_m", "2.5e9", "epoxy Young's modulus (Pa)"},
      {"matrix.nu_m", "0.28", "epoxy Poisson ratio"},
      {"matrix.rho_m", "1.2", "epoxy density (g/ml), for cnt.w_cnt"},
      {"cnt.L_cnt", "3.21e-6", "CNT length (m)"},
      {"cnt.D_cnt", "10.35e-9", "CNT outer diameter (m)"},
      {"cnt.kappa", "", "aspect ratio; when set, L_cnt = kappa D_cnt"},
      {"cnt.f_cnt", "0.01", "CNT volume fraction"},
      {"cnt.w_cnt", "", "CNT mass fraction; when set, replaces f_cnt"},
      {"cnt.rho_cnt", "1.8", "CNT density (g/ml)"},
      {"cnt.E_cnt", "700e9", "CNT Young's modulus (Pa)"},
      {"cnt.nu_cnt", "0.3", "CNT Poisson ratio"},
      {"cnt.sigma_cnt", "35e9", "CNT tensile strength (Pa)"},
      {"interphase.t", "31e-9", "interphase thickness (m)"},
      {"interphase.E_i", "2.17e9", "interphase Young's modulus (Pa)"},
      {"interphase.nu_i", "0.28", "interphase Poisson ratio"},
      {"interface.tau_cnt", "47e6", "interfacial shear strength (Pa)"},
      {"interface.mu", "0", "snubbing friction coefficient"},
      {"fracture.G_0", "133", "epoxy fracture energy (J/m^2)"},
      {"fracture.A", "0.083", "orientation limit constant"},
      {"fracture.pullout_threshold", "critical_length", "critical_length | half_critical_length"},
      {"fracture.rupture_strength", "nominal", "nominal | oblique"},
      {"fracture.packing_table", "", "packing table file (N rho_A [R]); empty: built-in"},
      {"orientation.p", "0.5", "planar ODF exponent p"},
      {"orientation.q", "0.5", "planar ODF exponent q"},
      {"orientation.theta_min", "0", "lower orientation bound (rad)"},
      {"orientation.theta_max", "1.5707963267948966", "upper orientation bound (rad)"},
      {"agglomeration.dispersion", "uniform", "uniform | agglomerated"},
      {"agglomeration.chi", "0.2", "bundle-region volume fraction"},
      {"agglomeration.zeta", "0.4", "fraction of CNTs inside bundles"},
      {"agglomeration.N_mu", "10", "mean CNTs per bundle"},
      {"agglomeration.N_sigma", "", "std. dev. of CNTs per bundle; empty: 0.1 N_mu"},
      {"agglomeration.N_min", "1", "smallest bundle"},
      {"agglomeration.N_max", "50", "largest bundle"},
      {"sweep.parameter", "cnt.kappa", "numeric key to sweep"},
      {"sweep.start", "10", "first value"},
      {"sweep.stop", "1000", "last value"},
      {"sweep.count", "100", "number of points"},
      {"sweep.spacing", "linear", "linear | log"},
      {"sweep.threads", "1", "worker threads (0: all cores)"},
      {"simulation.case", "sen_tension", "sen_tension | sen_shear | holed_plate"},
      {"simulation.refinement", "coarse", "coarse | fine"},
      {"simulation.ell", "0", "phase-field length scale (mm); 0: case default"},
      {"simulation.ell_over_h", "7", "length scale over refined element size"},
      {"simulation.thickness", "1", "out-of-plane thickness (m) for reported forces"},
      {"simulation.schedule", "", "end:increment list (mm); empty: case default"},
      {"simulation.pin_collar", "1.8", "undamageable ring around the pins (mm); 0: none"},
      {"simulation.stop_fraction", "0.02", "stop once reaction < fraction * peak (0: never)"},
      {"simulation.stop_after", "3", "steps to keep running after the stop condition"},
      {"simulation.sen_size", "50", "SEN plate edge (mm)"},
      {"simulation.sen_notch_length", "25", "SEN notch length (mm)"},
      {"simulation.plate_width", "65", "holed plate width (mm)"},
      {"simulation.plate_height", "120", "holed plate height (mm)"},
      {"simulation.pin_diameter", "10", "pin hole diameter (mm)"},
      {"simulation.pin_x", "20", "pin hole x (mm)"},
      {"simulation.pin_lower_y", "20", "lower pin hole y (mm)"},
      {"simulation.pin_upper_y", "100", "upper pin hole y (mm)"},
      {"simulation.hole_diameter", "20", "central hole diameter (mm)"},
      {"simulation.hole_x", "36.5", "central hole x (mm)"},
      {"simulation.hole_y", "51", "central hole y (mm)"},
      {"simulation.notch_y", "65", "holed plate notch height (mm)"},
      {"simulation.notch_length", "10", "holed plate notch length (mm)"},
      {"solver.rel_tol", "1e-6", "relative residual tolerance"},
      {"solver.abs_tol", "1e-10", "absolute residual tolerance"},
      {"solver.max_iterations", "400", "quasi-Newton iterations per step"},
      {"solver.lbfgs_memory", "30", "stored update pairs"},
      {"solver.tangent_refresh", "20", "iterations between preconditioner rebuilds"},
      {"solver.line_search_eta", "0.8", "line-search acceptance ratio"},
      {"solver.max_halvings", "4", "step halvings before giving up"},
      {"output.vtk", "true", "write VTK snapshots"},
      {"output.snapshot_every", "0", "snapshot interval in steps (0: final only)"},
  };
  return schema;
}

std::size_t edit_distance(const std::string& a, const std::string& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      const std::size_t sub = prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, sub});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::string suggest_key(const std::string& key) {
  std::string best;
  std::size_t best_d = std::string::npos;
  for (const auto& k : config_schema()) {
    const std::size_t d = edit_distance(key, k.key);
    if (d < best_d) {
      best_d = d;
      best = k.key;
    }
  }
  return best_d <= std::max<std::size_t>(3, key.size() / 3) ? best : std::string();
}

namespace {

bool known(const std::string& key) {
  const auto& s = config_schema();
  return std::any_of(s.begin(), s.end(), [&](const KeyInfo& k) { return k.key == key; });
}

[[noreturn]] void unknown_key(const std::string& key, const std::string& where) {
  std::string msg = where + "unknown key '" + key + "'";
  const std::string hint = suggest_key(key);
  if (!hint.empty()) msg += " (did you mean '" + hint + "'?)";
  throw ConfigError(msg);
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

class Reader {
 public:
  explicit Reader(const std::map<std::string, std::string>& v) : v_(v) {}

  const std::string& str(const std::string& key) const { return v_.at(key); }
  bool has(const std::string& key) const { return !str(key).empty(); }

  double num(const std::string& key) const {
    const std::string& s = str(key);
    double x = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(x))
      throw ConfigError(key + ": expected a number, got '" + s + "'");
    return x;
  }
  int integer(const std::string& key) const {
    const double x = num(key);
    if (x != std::floor(x) || std::abs(x) > 1e9) throw ConfigError(key + ": expected an integer");
    return static_cast<int>(x);
  }
  bool boolean(const std::string& key) const {
    const std::string& s = str(key);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ConfigError(key + ": expected true or false, got '" + s + "'");
  }
  std::string choice(const std::string& key, std::initializer_list<const char*> options) const {
    const std::string& s = str(key);
    std::string list;
    for (const char* o : options) {
      if (s == o) return s;
      list += (list.empty() ? "" : ", ") + std::string(o);
    }
    throw ConfigError(key + ": '" + s + "' is not one of " + list);
  }

 private:
  const std::map<std::string, std::string>& v_;
};

/// Runs `check`, prefixing DomainError messages with the field path.
template <class F>
void checked(const std::string& field, F&& check) {
  try {
    check();
  } catch (const DomainError& e) {
    std::string msg = e.what();
    if (msg.rfind(field + ": ", 0) == 0) msg = msg.substr(field.size() + 2);
    throw ConfigError(field + ": " + msg);
  }
}

void require(bool ok, const std::string& key, const std::string& what) {
  if (!ok) throw ConfigError(key + ": " + what);
}

void apply_override(std::map<std::string, std::string>& values, const std::string& ov) {
  const auto eq = ov.find('=');
  if (eq == std::string::npos) throw ConfigError("override '" + ov + "': expected section.key=value");
  const std::string key = trim(ov.substr(0, eq));
  if (!known(key)) unknown_key(key, "override: ");
  values[key] = trim(ov.substr(eq + 1));
}

std::map<std::string, std::string> defaults() {
  std::map<std::string, std::string> v;
  for (const auto& k : config_schema()) v[k.key] = k.default_value;
  return v;
}

RunConfig from_tree(const pt::ptree& tree, const std::vector<std::string>& overrides) {
  auto values = defaults();
  for (const auto& [section, body] : tree) {
    if (body.empty() && !body.data().empty())
      throw ConfigError("key '" + section + "' outside a section");
    for (const auto& [key, node] : body) {
      const std::string full = section + "." + key;
      if (!known(full)) unknown_key(full, "");
      values[full] = trim(node.data());
    }
  }
  for (const auto& ov : overrides) apply_override(values, ov);
  return build_config(values);
}

}  // namespace

std::vector<fem::LoadSegment> parse_schedule(const std::string& text) {
  std::vector<fem::LoadSegment> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item.empty()) continue;
    const auto colon = item.find(':');
    if (colon == std::string::npos)
      throw ConfigError("simulation.schedule: segment '" + item + "' is not end:increment");
    std::map<std::string, std::string> tmp{{"end", trim(item.substr(0, colon))},
                                           {"inc", trim(item.substr(colon + 1))}};
    Reader r(tmp);
    try {
      out.push_back({r.num("end"), r.num("inc")});
    } catch (const ConfigError&) {
      throw ConfigError("simulation.schedule: segment '" + item + "' is not numeric");
    }
  }
  return out;
}

RunConfig build_config(const std::map<std::string, std::string>& input) {
  auto values = defaults();
  for (const auto& [k, v] : input) {
    if (!known(k)) unknown_key(k, "");
    values[k] = v;
  }
  const Reader r(values);
  RunConfig cfg;
  cfg.values = values;
  CompositeSpec& c = cfg.composite;

  c.phases.matrix = {r.num("matrix.E_m"), r.num("matrix.nu_m")};
  c.phases.filler = {r.num("cnt.E_cnt"), r.num("cnt.nu_cnt")};
  c.phases.interphase = {r.num("interphase.E_i"), r.num("interphase.nu_i")};
  c.geom.D_cnt = r.num("cnt.D_cnt");
  c.geom.L_cnt = r.has("cnt.kappa") ? r.num("cnt.kappa") * c.geom.D_cnt : r.num("cnt.L_cnt");
  c.geom.t = r.num("interphase.t");
  if (r.has("cnt.w_cnt")) {
    checked("cnt.w_cnt", [&] {
      c.phases.f_p = mass_to_volume_fraction(r.num("cnt.w_cnt"), r.num("cnt.rho_cnt"),
                                             r.num("matrix.rho_m"));
    });
  } else {
    c.phases.f_p = r.num("cnt.f_cnt");
  }
  for (const char* k : {"matrix.E_m", "cnt.E_cnt", "interphase.E_i"})
    require(r.num(k) > 0, k, "must be positive");
  for (const char* k : {"matrix.nu_m", "cnt.nu_cnt", "interphase.nu_i"})
    require(r.num(k) > -1 && r.num(k) < 0.5, k, "must lie in (-1, 0.5)");
  require(c.phases.f_p >= 0 && c.phases.f_p < 1, r.has("cnt.w_cnt") ? "cnt.w_cnt" : "cnt.f_cnt",
          "volume fraction must lie in [0, 1)");
  require(c.geom.D_cnt > 0, "cnt.D_cnt", "must be positive");
  require(c.geom.L_cnt >= c.geom.D_cnt, r.has("cnt.kappa") ? "cnt.kappa" : "cnt.L_cnt",
          "aspect ratio must be >= 1");
  require(c.geom.t >= 0, "interphase.t", "must be >= 0");
  checked("matrix", [&] { c.phases.validate(); });
  checked("cnt", [&] { c.geom.validate(); });

  FractureParams& f = c.fracture;
  f.G_0 = r.num("fracture.G_0");
  f.sigma_ult = r.num("cnt.sigma_cnt");
  f.tau_int = r.num("interface.tau_cnt");
  f.mu_snub = r.num("interface.mu");
  f.A_const = r.num("fracture.A");
  require(f.G_0 >= 0, "fracture.G_0", "must be >= 0");
  require(f.sigma_ult > 0, "cnt.sigma_cnt", "must be positive");
  require(f.tau_int > 0, "interface.tau_cnt", "must be positive");
  require(f.mu_snub >= 0, "interface.mu", "must be >= 0");
  require(f.A_const >= 0, "fracture.A", "must be >= 0");
  f.threshold = r.choice("fracture.pullout_threshold", {"critical_length", "half_critical_length"}) ==
                        "critical_length"
                    ? PulloutThreshold::kCriticalLength
                    : PulloutThreshold::kHalfCriticalLength;
  f.rupture = r.choice("fracture.rupture_strength", {"nominal", "oblique"}) == "nominal"
                  ? RuptureStrength::kNominal
                  : RuptureStrength::kOblique;
  checked("fracture", [&] { c.fracture_params().validate(); });
  if (r.has("fracture.packing_table")) {
    try {
      c.packing = PackingTable::load(r.str("fracture.packing_table"));
    } catch (const DomainError& e) {
      throw ConfigError(std::string("fracture.packing_table: ") + e.what());
    }
  }

  checked("orientation", [&] {
    c.planar_odf = PlanarODF(r.num("orientation.p"), r.num("orientation.q"),
                             r.num("orientation.theta_min"), r.num("orientation.theta_max"));
  });

  c.dispersion = r.choice("agglomeration.dispersion", {"uniform", "agglomerated"}) == "uniform"
                     ? Dispersion::kUniform
                     : Dispersion::kAgglomerated;
  c.agg.chi = r.num("agglomeration.chi");
  c.agg.zeta = r.num("agglomeration.zeta");
  require(c.agg.chi > 0 && c.agg.chi <= 1, "agglomeration.chi", "must lie in (0, 1]");
  require(c.agg.zeta >= 0 && c.agg.zeta <= 1, "agglomeration.zeta", "must lie in [0, 1]");
  checked("agglomeration", [&] { c.agg.validate(); });
  const double N_mu = r.num("agglomeration.N_mu");
  const double N_sigma = r.has("agglomeration.N_sigma") ? r.num("agglomeration.N_sigma") : 0.1 * N_mu;
  checked("agglomeration", [&] {
    c.bundles = BundleStatistics::fit(N_mu, N_sigma, r.num("agglomeration.N_min"),
                                      r.num("agglomeration.N_max"));
  });

  SweepSpec& s = cfg.sweep;
  s.parameter = r.str("sweep.parameter");
  if (!known(s.parameter)) unknown_key(s.parameter, "sweep.parameter: ");
  s.start = r.num("sweep.start");
  s.stop = r.num("sweep.stop");
  s.count = r.integer("sweep.count");
  s.log_spacing = r.choice("sweep.spacing", {"linear", "log"}) == "log";
  s.threads = r.integer("sweep.threads");
  if (s.count < 1) throw ConfigError("sweep.count: must be >= 1");
  if (s.threads < 0) throw ConfigError("sweep.threads: must be >= 0");
  if (s.log_spacing && !(s.start > 0 && s.stop > 0))
    throw ConfigError("sweep.spacing: log spacing needs positive start and stop");

  SimulationConfig& m = cfg.simulation;
  checked("simulation.case", [&] { m.bench = fem::benchmark_case_from_string(r.str("simulation.case")); });
  checked("simulation.refinement",
          [&] { m.mesh.refinement = fem::mesh_refinement_from_string(r.str("simulation.refinement")); });
  m.mesh.ell = r.num("simulation.ell");
  m.mesh.ell_over_h = r.num("simulation.ell_over_h");
  if (m.mesh.ell < 0) throw ConfigError("simulation.ell: must be >= 0");
  if (!(m.mesh.ell_over_h > 0)) throw ConfigError("simulation.ell_over_h: must be positive");
  m.thickness_m = r.num("simulation.thickness");
  if (!(m.thickness_m > 0)) throw ConfigError("simulation.thickness: must be positive");
  m.schedule = parse_schedule(r.str("simulation.schedule"));
  m.stop_fraction = r.num("simulation.stop_fraction");
  m.stop_after = r.integer("simulation.stop_after");
  if (m.stop_fraction < 0 || m.stop_fraction >= 1)
    throw ConfigError("simulation.stop_fraction: must lie in [0, 1)");
  m.geometry.sen.size = r.num("simulation.sen_size");
  m.geometry.sen.notch_length = r.num("simulation.sen_notch_length");
  auto& h = m.geometry.holed;
  h.width = r.num("simulation.plate_width");
  h.height = r.num("simulation.plate_height");
  h.pin_diameter = r.num("simulation.pin_diameter");
  h.pin_x = r.num("simulation.pin_x");
  h.pin_lower_y = r.num("simulation.pin_lower_y");
  h.pin_upper_y = r.num("simulation.pin_upper_y");
  h.hole_diameter = r.num("simulation.hole_diameter");
  h.hole_x = r.num("simulation.hole_x");
  h.hole_y = r.num("simulation.hole_y");
  h.notch_y = r.num("simulation.notch_y");
  h.notch_length = r.num("simulation.notch_length");
  h.pin_collar = r.num("simulation.pin_collar");
  m.vtk = r.boolean("output.vtk");
  m.snapshot_every = r.integer("output.snapshot_every");
  if (m.snapshot_every < 0) throw ConfigError("output.snapshot_every: must be >= 0");

  fem::SolverConfig& v = cfg.solver;
  v.rel_tol = r.num("solver.rel_tol");
  v.abs_tol = r.num("solver.abs_tol");
  v.max_iterations = r.integer("solver.max_iterations");
  v.lbfgs_memory = r.integer("solver.lbfgs_memory");
  v.tangent_refresh = r.integer("solver.tangent_refresh");
  v.line_search_eta = r.num("solver.line_search_eta");
  v.max_halvings = r.integer("solver.max_halvings");
  v.schedule = m.schedule;
  checked("solver", [&] { v.validate(); });
  return cfg;
}

RunConfig parse_config_string(const std::string& text, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  std::istringstream is(text);
  try {
    pt::read_ini(is, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError("line " + std::to_string(e.line()) + ": " + e.message());
  }
  return from_tree(tree, overrides);
}

RunConfig parse_config(const std::string& path, const std::vector<std::string>& overrides) {
  pt::ptree tree;
  try {
    pt::read_ini(path, tree);
  } catch (const pt::ini_parser_error& e) {
    if (e.line() == 0) throw IoError("cannot read config '" + path + "': " + e.message());
    throw ConfigError(path + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  return from_tree(tree, overrides);
}

}  // namespace cntpf::app
