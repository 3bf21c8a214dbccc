#pragma once

// Effective elastic and fracture properties of one composite configuration.

#include "cntpf/fracture.hpp"
#include "cntpf/homogenize.hpp"

namespace cntpf {

enum class Dispersion { kUniform, kAgglomerated };

struct CompositeSpec {
  PhaseSet phases{};
  FillerGeometry geom{};
  Dispersion dispersion = Dispersion::kUniform;
  AgglomerationParams agg{};
  BundleStatistics bundles = BundleStatistics::fit(10.0, 1.0, 1.0, 50.0);
  FractureParams fracture{};  ///< geom, f_p and E_cnt are taken from the fields above
  PlanarODF planar_odf = PlanarODF::random();
  ODF3D odf = UniformODF{};
  PackingTable packing = PackingTable::standard();

  /// Fracture parameters with geometry, filler fraction and modulus synced.
  FractureParams fracture_params() const;
  void validate() const;
};

struct CompositeProperties {
  Stiffness C;
  IsotropicFit iso;
  /// G_PF and G_PF_agg are always filled; G_c follows the dispersion.
  FractureEnergySummary fracture;
};

CompositeProperties evaluate_composite(const CompositeSpec& spec);

}  // namespace cntpf
