#include "cntpf/composite.hpp"

namespace cntpf {

FractureParams CompositeSpec::fracture_params() const {
  FractureParams p = fracture;
  p.geom = geom;
  p.f_p = phases.f_p;
  p.E_cnt = phases.filler.E;
  return p;
}

void CompositeSpec::validate() const {
  phases.validate();
  geom.validate();
  agg.validate();
  fracture_params().validate();
}

CompositeProperties evaluate_composite(const CompositeSpec& spec) {
  spec.validate();
  CompositeProperties out;
  const FractureParams fp = spec.fracture_params();
  out.fracture = total_fracture_energy(fp, spec.planar_odf, spec.agg, spec.bundles, spec.packing);
  if (spec.dispersion == Dispersion::kUniform) {
    out.C = double_inclusion_effective(spec.phases, spec.geom, spec.odf);
    out.fracture.G_c = fp.G_0 + out.fracture.G_PF;
  } else {
    out.C = two_step_effective(spec.phases, spec.geom, spec.agg, spec.odf);
  }
  out.iso = isotropic_projection(out.C);
  return out;
}

}  // namespace cntpf
