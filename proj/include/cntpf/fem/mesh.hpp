#pragma once

// Bilinear quadrilateral meshes (units: mm). Non-conforming quadtree meshes
// carry their hanging nodes as linear constraints on the nodal fields.

#include <Eigen/Dense>

#include <array>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace cntpf::fem {

/// A node whose field values are the weighted sum of its masters
/// (the two ends of the coarse edge it sits on).
struct HangingNode {
  int node = -1;
  std::array<int, 2> masters{-1, -1};
};

struct Mesh {
  std::vector<Eigen::Vector2d> nodes;
  std::vector<std::array<int, 4>> elements;  ///< counter-clockwise
  std::map<std::string, std::vector<int>> node_sets;
  std::map<std::string, std::vector<int>> element_sets;
  std::vector<HangingNode> hanging;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_elements() const { return static_cast<int>(elements.size()); }
  const std::vector<int>& node_set(const std::string& name) const;

  /// Shortest edge length over the named element set (or all elements).
  double min_edge_length(const std::string& element_set = "") const;
  double max_edge_length(const std::string& element_set = "") const;

  /// Throws DomainError on clockwise/degenerate elements (non-positive
  /// Jacobian at a 2x2 Gauss point, reporting the element id), orphan nodes,
  /// or malformed hanging-node constraints.
  void validate() const;
};

/// nx x ny uniform grid on [x0, x0 + W] x [y0, y0 + H] with node sets
/// "left", "right", "bottom", "top".
Mesh structured_rectangle(double W, double H, int nx, int ny, double x0 = 0.0, double y0 = 0.0);

// ---------------------------------------------------------------------------
// Quadtree generator

/// Refines cells within `half_width` of the segment a-b.
struct BandZone {
  Eigen::Vector2d a, b;
  double half_width = 0.0;
  double size = 0.0;  ///< target element size inside the zone
};

struct BoxZone {
  double x_min, x_max, y_min, y_max;
  double size = 0.0;
};

/// Refines cells intersecting the annulus r_in <= |x - c| <= r_out.
struct RingZone {
  Eigen::Vector2d center;
  double r_in = 0.0, r_out = 0.0;
  double size = 0.0;
};

using RefinementZone = std::variant<BandZone, BoxZone, RingZone>;

struct Hole {
  Eigen::Vector2d center;
  double radius = 0.0;
  std::string name;  ///< node sets <name>, <name>_upper, <name>_lower
};

/// Straight edge notch on y = y between x_start and x_end. One end lies on
/// the left or right edge, the other is the tip. Nodes on the notch faces are
/// duplicated so the faces separate.
struct EdgeNotch {
  double y = 0.0;
  double x_start = 0.0;
  double x_end = 0.0;
};

struct QuadtreeSpec {
  double width = 1.0, height = 1.0;
  double root_size = 1.0;  ///< width and height must be multiples of it
  std::vector<RefinementZone> zones;
  std::vector<Hole> holes;
  std::optional<EdgeNotch> notch;
};

/// Quadtree mesh over [0, width] x [0, height]: cells are split until every
/// zone is resolved at its target size, then 2:1 edge balanced. Holes remove
/// cells whose centre lies inside; the remaining boundary nodes are moved
/// radially onto the circle. Element set "refined" holds the cells at the
/// finest level. Node sets: left/right/bottom/top, notch_upper/notch_lower,
/// and per hole <name>, <name>_upper, <name>_lower.
Mesh quadtree_mesh(const QuadtreeSpec& spec);

/// Largest root-cell size of the form unit / k (k = 1, 2, ...) for which
/// some power-of-two subdivision is <= target. Returns (root_size, levels).
std::pair<double, int> choose_root(double unit, double target, int max_k = 8);

}  // namespace cntpf::fem
