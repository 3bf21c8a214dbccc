#include "cntpf/fem/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "cntpf/errors.hpp"

namespace cntpf::fem {

namespace {

constexpr double kGauss = 0.577350269189625764509148780502;

/// Jacobian determinant of a bilinear quad at (xi, eta).
double jacobian_det(const std::array<Eigen::Vector2d, 4>& x, double xi, double eta) {
  const double dxi[4] = {-(1 - eta) / 4, (1 - eta) / 4, (1 + eta) / 4, -(1 + eta) / 4};
  const double deta[4] = {-(1 - xi) / 4, -(1 + xi) / 4, (1 + xi) / 4, (1 - xi) / 4};
  Eigen::Matrix2d J = Eigen::Matrix2d::Zero();
  for (int a = 0; a < 4; ++a) {
    J(0, 0) += dxi[a] * x[a].x();
    J(0, 1) += dxi[a] * x[a].y();
    J(1, 0) += deta[a] * x[a].x();
    J(1, 1) += deta[a] * x[a].y();
  }
  return J.determinant();
}

double min_gauss_det(const Mesh& m, int e) {
  std::array<Eigen::Vector2d, 4> x;
  for (int a = 0; a < 4; ++a) x[a] = m.nodes[m.elements[e][a]];
  double d = std::numeric_limits<double>::infinity();
  for (double xi : {-kGauss, kGauss})
    for (double eta : {-kGauss, kGauss}) d = std::min(d, jacobian_det(x, xi, eta));
  // Corners as well, so badly shaped (but not yet inverted) quads are caught.
  for (double xi : {-1.0, 1.0})
    for (double eta : {-1.0, 1.0}) d = std::min(d, jacobian_det(x, xi, eta));
  return d;
}

bool in_set(const std::string& name, const Mesh& m, int e) {
  if (name.empty()) return true;
  const auto& s = m.element_sets.at(name);
  return std::binary_search(s.begin(), s.end(), e);
}

}  // namespace

const std::vector<int>& Mesh::node_set(const std::string& name) const {
  auto it = node_sets.find(name);
  if (it == node_sets.end()) throw DomainError("mesh: unknown node set '" + name + "'");
  return it->second;
}

double Mesh::min_edge_length(const std::string& element_set) const {
  if (!element_set.empty() && !element_sets.count(element_set))
    throw DomainError("mesh: unknown element set '" + element_set + "'");
  double h = std::numeric_limits<double>::infinity();
  for (int e = 0; e < num_elements(); ++e) {
    if (!in_set(element_set, *this, e)) continue;
    for (int a = 0; a < 4; ++a)
      h = std::min(h, (nodes[elements[e][(a + 1) % 4]] - nodes[elements[e][a]]).norm());
  }
  return h;
}

double Mesh::max_edge_length(const std::string& element_set) const {
  if (!element_set.empty() && !element_sets.count(element_set))
    throw DomainError("mesh: unknown element set '" + element_set + "'");
  double h = 0.0;
  for (int e = 0; e < num_elements(); ++e) {
    if (!in_set(element_set, *this, e)) continue;
    for (int a = 0; a < 4; ++a)
      h = std::max(h, (nodes[elements[e][(a + 1) % 4]] - nodes[elements[e][a]]).norm());
  }
  return h;
}

void Mesh::validate() const {
  std::vector<char> used(nodes.size(), 0);
  for (int e = 0; e < num_elements(); ++e) {
    for (int a : elements[e]) {
      if (a < 0 || a >= num_nodes()) {
        throw DomainError("mesh: element " + std::to_string(e) + " references a missing node");
      }
      used[a] = 1;
    }
    if (!(min_gauss_det(*this, e) > 0)) {
      throw DomainError("mesh: non-positive Jacobian in element " + std::to_string(e));
    }
  }
  std::vector<char> constrained(nodes.size(), 0);
  for (const auto& h : hanging) {
    if (h.node < 0 || h.node >= num_nodes() || h.masters[0] < 0 || h.masters[1] < 0)
      throw DomainError("mesh: malformed hanging-node constraint");
    if (constrained[h.node]) throw DomainError("mesh: node constrained twice");
    constrained[h.node] = 1;
  }
  for (int n = 0; n < num_nodes(); ++n) {
    if (!used[n]) throw DomainError("mesh: orphan node " + std::to_string(n));
  }
}

Mesh structured_rectangle(double W, double H, int nx, int ny, double x0, double y0) {
  if (!(W > 0 && H > 0 && nx > 0 && ny > 0)) throw DomainError("structured_rectangle: bad size");
  Mesh m;
  auto id = [&](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i) m.nodes.emplace_back(x0 + W * i / nx, y0 + H * j / ny);
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i)
      m.elements.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)});
  for (int j = 0; j <= ny; ++j) {
    m.node_sets["left"].push_back(id(0, j));
    m.node_sets["right"].push_back(id(nx, j));
  }
  for (int i = 0; i <= nx; ++i) {
    m.node_sets["bottom"].push_back(id(i, 0));
    m.node_sets["top"].push_back(id(i, ny));
  }
  std::vector<int> all(m.elements.size());
  for (std::size_t e = 0; e < all.size(); ++e) all[e] = static_cast<int>(e);
  m.element_sets["all"] = all;
  return m;
}

std::pair<double, int> choose_root(double unit, double target, int max_k) {
  if (!(unit > 0 && target > 0)) throw DomainError("choose_root: sizes must be positive");
  double best_h = 0.0, best_root = unit;
  int best_levels = 0;
  for (int k = 1; k <= max_k; ++k) {
    const double root = unit / k;
    int levels = 0;
    while (root / std::ldexp(1.0, levels) > target * (1 + 1e-12)) ++levels;
    const double h = root / std::ldexp(1.0, levels);
    if (h > best_h * (1 + 1e-9)) {
      best_h = h;
      best_root = root;
      best_levels = levels;
    }
  }
  return {best_root, best_levels};
}

// ---------------------------------------------------------------------------
// Quadtree

namespace {

constexpr int kMaxLevel = 20;

struct CellKey {
  int level, i, j;
};

std::uint64_t pack(int level, int i, int j) {
  return (std::uint64_t(level) << 58) | (std::uint64_t(std::uint32_t(i)) << 29) |
         std::uint64_t(std::uint32_t(j));
}
CellKey unpack(std::uint64_t k) {
  return {int(k >> 58), int((k >> 29) & ((1u << 29) - 1)), int(k & ((1u << 29) - 1))};
}

struct Rect {
  double x0, y0, x1, y1;
};

double dist_point_rect(const Eigen::Vector2d& p, const Rect& r) {
  const double dx = std::max({r.x0 - p.x(), 0.0, p.x() - r.x1});
  const double dy = std::max({r.y0 - p.y(), 0.0, p.y() - r.y1});
  return std::hypot(dx, dy);
}

double dist_point_segment(const Eigen::Vector2d& p, const Eigen::Vector2d& a,
                          const Eigen::Vector2d& b) {
  const Eigen::Vector2d ab = b - a;
  const double len2 = ab.squaredNorm();
  double t = len2 > 0 ? (p - a).dot(ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return (a + t * ab - p).norm();
}

// Liang-Barsky clip test.
bool segment_hits_rect(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Rect& r) {
  double t0 = 0.0, t1 = 1.0;
  const double dx = b.x() - a.x(), dy = b.y() - a.y();
  const double p[4] = {-dx, dx, -dy, dy};
  const double q[4] = {a.x() - r.x0, r.x1 - a.x(), a.y() - r.y0, r.y1 - a.y()};
  for (int k = 0; k < 4; ++k) {
    if (p[k] == 0) {
      if (q[k] < 0) return false;
    } else {
      const double t = q[k] / p[k];
      if (p[k] < 0) t0 = std::max(t0, t);
      else t1 = std::min(t1, t);
      if (t0 > t1) return false;
    }
  }
  return true;
}

double dist_segment_rect(const Eigen::Vector2d& a, const Eigen::Vector2d& b, const Rect& r) {
  if (segment_hits_rect(a, b, r)) return 0.0;
  double d = std::min(dist_point_rect(a, r), dist_point_rect(b, r));
  for (const Eigen::Vector2d& c :
       {Eigen::Vector2d(r.x0, r.y0), Eigen::Vector2d(r.x1, r.y0), Eigen::Vector2d(r.x1, r.y1),
        Eigen::Vector2d(r.x0, r.y1)})
    d = std::min(d, dist_point_segment(c, a, b));
  return d;
}

double max_dist_point_rect(const Eigen::Vector2d& p, const Rect& r) {
  const double dx = std::max(std::abs(p.x() - r.x0), std::abs(p.x() - r.x1));
  const double dy = std::max(std::abs(p.y() - r.y0), std::abs(p.y() - r.y1));
  return std::hypot(dx, dy);
}

double zone_size_if_hit(const RefinementZone& z, const Rect& r) {
  constexpr double none = std::numeric_limits<double>::infinity();
  if (auto* band = std::get_if<BandZone>(&z)) {
    return dist_segment_rect(band->a, band->b, r) <= band->half_width ? band->size : none;
  }
  if (auto* box = std::get_if<BoxZone>(&z)) {
    const bool hit = r.x0 < box->x_max && r.x1 > box->x_min && r.y0 < box->y_max && r.y1 > box->y_min;
    return hit ? box->size : none;
  }
  const auto& ring = std::get<RingZone>(z);
  const bool hit = dist_point_rect(ring.center, r) <= ring.r_out &&
                   max_dist_point_rect(ring.center, r) >= ring.r_in;
  return hit ? ring.size : none;
}

double zone_size(const RefinementZone& z) {
  return std::visit([](const auto& v) { return v.size; }, z);
}

class Quadtree {
 public:
  Quadtree(const QuadtreeSpec& spec) : spec_(spec) {
    nx_ = static_cast<int>(std::lround(spec.width / spec.root_size));
    ny_ = static_cast<int>(std::lround(spec.height / spec.root_size));
    if (nx_ < 1 || ny_ < 1 || std::abs(nx_ * spec.root_size - spec.width) > 1e-9 * spec.width ||
        std::abs(ny_ * spec.root_size - spec.height) > 1e-9 * spec.height) {
      throw DomainError("quadtree: width and height must be multiples of the root size");
    }
    for (int j = 0; j < ny_; ++j)
      for (int i = 0; i < nx_; ++i) leaves_.insert(pack(0, i, j));
  }

  double cell_size(int level) const { return spec_.root_size / std::ldexp(1.0, level); }

  Rect rect(const CellKey& c) const {
    const double h = cell_size(c.level);
    return {c.i * h, c.j * h, (c.i + 1) * h, (c.j + 1) * h};
  }

  bool inside_hole(const Rect& r) const {
    for (const auto& hole : spec_.holes)
      if (max_dist_point_rect(hole.center, r) < hole.radius) return true;
    return false;
  }

  int required_level(const CellKey& c) const {
    const Rect r = rect(c);
    if (inside_hole(r)) return 0;
    double size = std::numeric_limits<double>::infinity();
    for (const auto& z : spec_.zones) size = std::min(size, zone_size_if_hit(z, r));
    if (!std::isfinite(size)) return 0;
    int level = 0;
    while (cell_size(level) > size * (1 + 1e-12) && level < kMaxLevel) ++level;
    return level;
  }

  void split(std::uint64_t key) {
    const CellKey c = unpack(key);
    leaves_.erase(key);
    for (int dj = 0; dj < 2; ++dj)
      for (int di = 0; di < 2; ++di) leaves_.insert(pack(c.level + 1, 2 * c.i + di, 2 * c.j + dj));
    max_level_ = std::max(max_level_, c.level + 1);
  }

  void refine_to_zones() {
    std::vector<std::uint64_t> work(leaves_.begin(), leaves_.end());
    while (!work.empty()) {
      const std::uint64_t key = work.back();
      work.pop_back();
      const CellKey c = unpack(key);
      if (c.level < required_level(c)) {
        split(key);
        for (int dj = 0; dj < 2; ++dj)
          for (int di = 0; di < 2; ++di) work.push_back(pack(c.level + 1, 2 * c.i + di, 2 * c.j + dj));
      }
    }
  }

  /// Leaf containing point (x, y), if any.
  std::optional<std::uint64_t> locate(double x, double y) const {
    if (x < 0 || y < 0 || x > spec_.width || y > spec_.height) return std::nullopt;
    for (int l = 0; l <= max_level_; ++l) {
      const double h = cell_size(l);
      const int i = static_cast<int>(std::floor(x / h));
      const int j = static_cast<int>(std::floor(y / h));
      const auto k = pack(l, i, j);
      if (leaves_.count(k)) return k;
    }
    return std::nullopt;
  }

  void balance() {
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<std::uint64_t> current(leaves_.begin(), leaves_.end());
      std::sort(current.begin(), current.end());
      for (std::uint64_t key : current) {
        if (!leaves_.count(key)) continue;
        const CellKey c = unpack(key);
        if (c.level < 2) continue;
        const Rect r = rect(c);
        const double eps = 1e-3 * cell_size(c.level);
        const double xm = 0.5 * (r.x0 + r.x1), ym = 0.5 * (r.y0 + r.y1);
        const double probes[4][2] = {
            {r.x0 - eps, ym}, {r.x1 + eps, ym}, {xm, r.y0 - eps}, {xm, r.y1 + eps}};
        for (const auto& p : probes) {
          auto nb = locate(p[0], p[1]);
          if (!nb) continue;
          if (unpack(*nb).level < c.level - 1) {
            split(*nb);
            changed = true;
          }
        }
      }
    }
  }

  const std::unordered_set<std::uint64_t>& leaves() const { return leaves_; }
  int max_level() const { return max_level_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }

 private:
  const QuadtreeSpec& spec_;
  int nx_ = 0, ny_ = 0;
  int max_level_ = 0;
  std::unordered_set<std::uint64_t> leaves_;
};

struct NodeKeyHash {
  std::size_t operator()(const std::array<long long, 3>& k) const {
    return std::hash<long long>()(k[0] * 73856093LL ^ k[1] * 19349663LL ^ k[2] * 83492791LL);
  }
};

}  // namespace

Mesh quadtree_mesh(const QuadtreeSpec& spec) {
  if (!(spec.width > 0 && spec.height > 0 && spec.root_size > 0))
    throw DomainError("quadtree: sizes must be positive");
  for (const auto& z : spec.zones)
    if (!(zone_size(z) > 0)) throw DomainError("quadtree: zone sizes must be positive");

  Quadtree tree(spec);
  tree.refine_to_zones();
  tree.balance();

  const int L = tree.max_level();
  const double h_fine = tree.cell_size(L);
  const long long scale = 1LL << L;

  // Notch in lattice units.
  long long notch_Y = -1, notch_X0 = 0, notch_X1 = -1, notch_tip = -1;
  if (spec.notch) {
    const double Y = spec.notch->y / h_fine;
    const double X0 = spec.notch->x_start / h_fine;
    const double X1 = spec.notch->x_end / h_fine;
    notch_Y = std::llround(Y);
    notch_X0 = std::llround(X0);
    notch_X1 = std::llround(X1);
    if (std::abs(Y - notch_Y) > 1e-6 || std::abs(X1 - notch_X1) > 1e-6 ||
        std::abs(X0 - notch_X0) > 1e-6) {
      throw DomainError("quadtree: notch line and tip must lie on the finest lattice");
    }
    if (std::abs(spec.notch->y / spec.root_size - std::round(spec.notch->y / spec.root_size)) > 1e-9)
      throw DomainError("quadtree: notch must lie on a root-cell boundary");
    if (!(notch_X0 < notch_X1)) throw DomainError("quadtree: notch needs x_start < x_end");
    if (std::abs(spec.notch->x_start) < 1e-9 * spec.width) {
      notch_tip = notch_X1;
    } else if (std::abs(spec.notch->x_end - spec.width) < 1e-9 * spec.width) {
      notch_tip = notch_X0;
    } else {
      throw DomainError("quadtree: notch must start on the left or right edge");
    }
  }

  // Leaves in deterministic order; drop cells whose centre is in a hole.
  std::vector<std::uint64_t> cells(tree.leaves().begin(), tree.leaves().end());
  std::sort(cells.begin(), cells.end(), [&](std::uint64_t a, std::uint64_t b) {
    const CellKey ca = unpack(a), cb = unpack(b);
    const long long sa = scale >> ca.level, sb = scale >> cb.level;
    const long long ya = ca.j * sa, yb = cb.j * sb, xa = ca.i * sa, xb = cb.i * sb;
    if (ya != yb) return ya < yb;
    if (xa != xb) return xa < xb;
    return ca.level < cb.level;
  });
  std::vector<CellKey> kept;
  std::vector<CellKey> removed;
  std::vector<int> removed_hole;
  for (std::uint64_t k : cells) {
    const CellKey c = unpack(k);
    const double h = tree.cell_size(c.level);
    const Eigen::Vector2d center((c.i + 0.5) * h, (c.j + 0.5) * h);
    int hole_id = -1;
    for (std::size_t q = 0; q < spec.holes.size(); ++q)
      if ((center - spec.holes[q].center).norm() < spec.holes[q].radius) hole_id = int(q);
    if (hole_id >= 0) {
      removed.push_back(c);
      removed_hole.push_back(hole_id);
    } else {
      kept.push_back(c);
    }
  }

  Mesh mesh;
  std::unordered_map<std::array<long long, 3>, int, NodeKeyHash> node_ids;
  auto side_key = [&](long long X, long long Y, bool cell_below) -> std::array<long long, 3> {
    const bool on_slit =
        spec.notch && Y == notch_Y && X >= notch_X0 && X <= notch_X1 && X != notch_tip;
    return {X, Y, (on_slit && cell_below) ? 1 : 0};
  };
  auto corner_keys = [&](const CellKey& c) {
    const long long s = scale >> c.level;
    const long long X0 = c.i * s, Y0 = c.j * s;
    const bool below = spec.notch && (Y0 + s) <= notch_Y;
    return std::array<std::array<long long, 3>, 4>{side_key(X0, Y0, below),
                                                    side_key(X0 + s, Y0, below),
                                                    side_key(X0 + s, Y0 + s, below),
                                                    side_key(X0, Y0 + s, below)};
  };

  for (const CellKey& c : kept) {
    std::array<int, 4> conn{};
    const auto keys = corner_keys(c);
    for (int a = 0; a < 4; ++a) {
      auto [it, inserted] = node_ids.try_emplace(keys[a], mesh.num_nodes());
      if (inserted) mesh.nodes.emplace_back(keys[a][0] * h_fine, keys[a][1] * h_fine);
      conn[a] = it->second;
    }
    mesh.elements.push_back(conn);
    if (c.level == L) mesh.element_sets["refined"].push_back(mesh.num_elements() - 1);
  }
  if (spec.notch && !node_ids.count({notch_tip, notch_Y, 0})) {
    throw DomainError("quadtree: notch tip is not a mesh node; refine around the tip");
  }

  // Hanging nodes: an existing node at the midpoint of a coarse cell edge.
  std::set<int> hanging_seen;
  for (const CellKey& c : kept) {
    if (c.level == L) continue;
    const long long s = scale >> c.level;
    const long long X0 = c.i * s, Y0 = c.j * s;
    const bool below = spec.notch && (Y0 + s) <= notch_Y;
    const long long edges[4][4] = {{X0, Y0, X0 + s, Y0},
                                   {X0 + s, Y0, X0 + s, Y0 + s},
                                   {X0 + s, Y0 + s, X0, Y0 + s},
                                   {X0, Y0 + s, X0, Y0}};
    for (const auto& e : edges) {
      const long long Xm = (e[0] + e[2]) / 2, Ym = (e[1] + e[3]) / 2;
      auto it = node_ids.find(side_key(Xm, Ym, below));
      if (it == node_ids.end()) continue;
      if (!hanging_seen.insert(it->second).second) continue;
      HangingNode hn;
      hn.node = it->second;
      hn.masters = {node_ids.at(side_key(e[0], e[1], below)), node_ids.at(side_key(e[2], e[3], below))};
      mesh.hanging.push_back(hn);
    }
  }

  // Boundary node sets (outer rectangle).
  const long long Xmax = static_cast<long long>(tree.nx()) * scale;
  const long long Ymax = static_cast<long long>(tree.ny()) * scale;
  std::vector<std::pair<std::array<long long, 3>, int>> ordered(node_ids.begin(), node_ids.end());
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) { return a.second < b.second; });
  for (const auto& [key, id] : ordered) {
    if (key[0] == 0) mesh.node_sets["left"].push_back(id);
    if (key[0] == Xmax) mesh.node_sets["right"].push_back(id);
    if (key[1] == 0) mesh.node_sets["bottom"].push_back(id);
    if (key[1] == Ymax) mesh.node_sets["top"].push_back(id);
    if (spec.notch && key[1] == notch_Y && key[0] >= notch_X0 && key[0] <= notch_X1 &&
        key[0] != notch_tip) {
      mesh.node_sets[key[2] ? "notch_lower" : "notch_upper"].push_back(id);
    }
  }

  // Holes: staircase boundary = corners shared by kept and removed cells.
  if (!spec.holes.empty()) {
    std::vector<std::vector<int>> node_elems(mesh.nodes.size());
    for (int e = 0; e < mesh.num_elements(); ++e)
      for (int a : mesh.elements[e]) node_elems[a].push_back(e);
    std::set<int> hanging_related;
    for (const auto& h : mesh.hanging) {
      hanging_related.insert(h.node);
      hanging_related.insert(h.masters[0]);
      hanging_related.insert(h.masters[1]);
    }

    std::vector<std::set<int>> boundary(spec.holes.size());
    for (std::size_t r = 0; r < removed.size(); ++r) {
      for (const auto& key : corner_keys(removed[r])) {
        auto it = node_ids.find(key);
        if (it != node_ids.end()) boundary[removed_hole[r]].insert(it->second);
      }
    }

    auto local_ok = [&](int node, double ratio_floor, const std::vector<double>& before) {
      for (std::size_t k = 0; k < node_elems[node].size(); ++k) {
        if (min_gauss_det(mesh, node_elems[node][k]) < ratio_floor * before[k]) return false;
      }
      return true;
    };

    for (std::size_t q = 0; q < spec.holes.size(); ++q) {
      const Hole& hole = spec.holes[q];
      // Inside nodes first (mandatory), then nodes just outside (optional).
      std::vector<int> inside, outside;
      for (int n : boundary[q]) {
        ((mesh.nodes[n] - hole.center).norm() < hole.radius ? inside : outside).push_back(n);
      }
      auto snap = [&](int n, bool mandatory) {
        const Eigen::Vector2d d = mesh.nodes[n] - hole.center;
        if (d.norm() == 0) throw DomainError("quadtree: node at hole centre");
        if (hanging_related.count(n)) {
          throw DomainError("quadtree: hanging node on the boundary of hole '" + hole.name +
                            "'; add a ring refinement zone around it");
        }
        std::vector<double> before;
        for (int e : node_elems[n]) before.push_back(min_gauss_det(mesh, e));
        const Eigen::Vector2d old = mesh.nodes[n];
        mesh.nodes[n] = hole.center + hole.radius * d.normalized();
        if (!local_ok(n, mandatory ? 0.0 : 0.25, before)) {
          if (mandatory) {
            throw DomainError("quadtree: snapping to hole '" + hole.name + "' inverts an element");
          }
          mesh.nodes[n] = old;
        }
      };
      for (int n : inside) snap(n, true);
      for (int n : outside) snap(n, false);

      std::vector<int> all(boundary[q].begin(), boundary[q].end());
      std::vector<int> upper, lower;
      for (int n : all) {
        if (mesh.nodes[n].y() >= hole.center.y() - 1e-9) upper.push_back(n);
        if (mesh.nodes[n].y() <= hole.center.y() + 1e-9) lower.push_back(n);
      }
      mesh.node_sets[hole.name] = all;
      mesh.node_sets[hole.name + "_upper"] = upper;
      mesh.node_sets[hole.name + "_lower"] = lower;
    }
  }

  std::vector<int> all(mesh.elements.size());
  for (std::size_t e = 0; e < all.size(); ++e) all[e] = static_cast<int>(e);
  mesh.element_sets["all"] = std::move(all);
  mesh.validate();
  return mesh;
}

}  // namespace cntpf::fem
