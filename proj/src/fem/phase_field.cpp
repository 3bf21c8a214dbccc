#include "cntpf/fem/phase_field.hpp"

#include <Eigen/SparseCholesky>

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

namespace cntpf::fem {

Eigen::Matrix3d plane_strain_reduce(const Matrix6d& C) {
  constexpr int idx[3] = {0, 1, 5};
  Eigen::Matrix3d c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) c(i, j) = C(idx[i], idx[j]);
  return c;
}

PFMaterial PFMaterial::from_si(const Matrix6d& C_pa, double Gc_J_m2, double ell_mm) {
  PFMaterial m;
  m.C2d = plane_strain_reduce(C_pa) * 1e-6;
  m.Gc = Gc_J_m2 * 1e-3;
  m.ell = ell_mm;
  m.validate();
  return m;
}

void PFMaterial::validate() const {
  if (!(Gc > 0)) throw DomainError("PFMaterial: G_c must be positive");
  if (!(ell > 0)) throw DomainError("PFMaterial: ell must be positive");
  if (!(k_res >= 0 && k_res < 1)) throw DomainError("PFMaterial: k_res must lie in [0, 1)");
  if ((C2d - C2d.transpose()).norm() > 1e-9 * C2d.norm())
    throw DomainError("PFMaterial: C2d must be symmetric");
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> es(C2d);
  if (!(es.eigenvalues().minCoeff() > 0)) throw DomainError("PFMaterial: C2d must be positive definite");
}

void SolverConfig::validate() const {
  if (!(rel_tol > 0) || !(abs_tol >= 0)) throw DomainError("SolverConfig: tolerance must be positive");
  if (max_iterations < 1 || lbfgs_memory < 0 || tangent_refresh < 1)
    throw DomainError("SolverConfig: iteration limits must be positive");
  if (!(line_search_eta > 0 && line_search_eta < 1))
    throw DomainError("SolverConfig: line-search eta must lie in (0, 1)");
  if (max_halvings < 0) throw DomainError("SolverConfig: max_halvings must be >= 0");
  if (quadrature != 2) throw DomainError("SolverConfig: only 2x2 Gauss quadrature is supported");
  double prev = 0.0;
  for (const auto& seg : schedule) {
    if (!(seg.increment > 0)) throw DomainError("SolverConfig: load increments must be positive");
    if (!(std::abs(seg.end) > std::abs(prev) || seg.end == prev))
      throw DomainError("SolverConfig: load segments must be monotone");
    prev = seg.end;
  }
}

std::vector<double> schedule_loads(const std::vector<LoadSegment>& schedule) {
  std::vector<double> loads;
  double cur = 0.0;
  for (const auto& seg : schedule) {
    const double span = seg.end - cur;
    if (span == 0) continue;
    const int n = std::max(1, static_cast<int>(std::ceil(std::abs(span) / seg.increment - 1e-9)));
    for (int k = 1; k <= n; ++k) loads.push_back(cur + span * k / n);
    cur = seg.end;
  }
  return loads;
}

namespace {

constexpr double kG = 0.577350269189625764509148780502;

Eigen::Matrix<double, 3, 8> strain_matrix(const Eigen::Matrix<double, 4, 2>& dN) {
  Eigen::Matrix<double, 3, 8> B = Eigen::Matrix<double, 3, 8>::Zero();
  for (int a = 0; a < 4; ++a) {
    B(0, 2 * a) = dN(a, 0);
    B(1, 2 * a + 1) = dN(a, 1);
    B(2, 2 * a) = dN(a, 1);
    B(2, 2 * a + 1) = dN(a, 0);
  }
  return B;
}

Eigen::VectorXd gather(const std::vector<int>& rows, const Eigen::VectorXd& full) {
  Eigen::VectorXd z(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) z[k] = full[rows[k]];
  return z;
}

}  // namespace

PhaseFieldModel::PhaseFieldModel(Mesh mesh, PFMaterial mat, std::vector<BoundaryCondition> bcs)
    : mesh_(std::move(mesh)), mat_(mat), bcs_(std::move(bcs)) {
  mat_.validate();
  mesh_.validate();
  const int nn = mesh_.num_nodes();

  // Gauss-point data.
  gp_.reserve(4 * mesh_.num_elements());
  const double pts[4][2] = {{-kG, -kG}, {kG, -kG}, {kG, kG}, {-kG, kG}};
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    Eigen::Matrix<double, 4, 2> X;
    for (int a = 0; a < 4; ++a) X.row(a) = mesh_.nodes[mesh_.elements[e][a]].transpose();
    for (const auto& p : pts) {
      const double xi = p[0], eta = p[1];
      GaussPoint g;
      g.N << (1 - xi) * (1 - eta) / 4, (1 + xi) * (1 - eta) / 4, (1 + xi) * (1 + eta) / 4,
          (1 - xi) * (1 + eta) / 4;
      Eigen::Matrix<double, 4, 2> dNr;
      dNr << -(1 - eta) / 4, -(1 - xi) / 4, (1 - eta) / 4, -(1 + xi) / 4, (1 + eta) / 4,
          (1 + xi) / 4, -(1 + eta) / 4, (1 - xi) / 4;
      const Eigen::Matrix2d J = dNr.transpose() * X;
      const double det = J.determinant();
      if (!(det > 0)) {
        throw DomainError("non-positive Jacobian in element " + std::to_string(e));
      }
      g.dN = dNr * J.inverse().transpose();
      g.dV = det;
      gp_.push_back(g);
    }
  }

  // Dirichlet prescriptions: (field dof) -> factor.
  std::map<int, double> fixed_u, fixed_p;
  for (const auto& bc : bcs_) {
    for (int n : mesh_.node_set(bc.node_set)) {
      auto& target = bc.dof == Dof::kPhi ? fixed_p : fixed_u;
      const int dof = bc.dof == Dof::kPhi ? n : 2 * n + static_cast<int>(bc.dof);
      auto [it, inserted] = target.emplace(dof, bc.factor);
      if (!inserted && it->second != bc.factor) {
        throw DomainError("boundary conditions: conflicting prescriptions on node " +
                          std::to_string(n) + " (set '" + bc.node_set + "')");
      }
    }
  }
  std::vector<const HangingNode*> hang(nn, nullptr);
  for (const auto& h : mesh_.hanging) hang[h.node] = &h;

  // Rows of T as sparse maps, resolved recursively through hanging chains.
  auto build = [&](int ncomp, const std::map<int, double>& fixed, Eigen::SparseMatrix<double>& T,
                   Eigen::VectorXd& g, std::vector<int>& free_rows) {
    const int ndof = ncomp * nn;
    std::vector<int> col(ndof, -1);
    int nfree = 0;
    free_rows.clear();
    for (int d = 0; d < ndof; ++d)
      if (!fixed.count(d) && !hang[d / ncomp]) {
        col[d] = nfree++;
        free_rows.push_back(d);
      }
    std::vector<std::map<int, double>> rows(ndof);
    std::vector<double> gval(ndof, 0.0);
    std::vector<int> state(ndof, 0);  // 0 new, 1 in progress, 2 done
    std::function<void(int)> resolve = [&](int d) {
      if (state[d] == 2) return;
      if (state[d] == 1) throw DomainError("mesh: cyclic hanging-node constraints");
      state[d] = 1;
      if (auto it = fixed.find(d); it != fixed.end()) {
        gval[d] = it->second;
      } else if (col[d] >= 0) {
        rows[d][col[d]] = 1.0;
      } else {
        const int comp = d % ncomp;
        for (int m : hang[d / ncomp]->masters) {
          const int md = ncomp * m + comp;
          resolve(md);
          for (const auto& [c, w] : rows[md]) rows[d][c] += 0.5 * w;
          gval[d] += 0.5 * gval[md];
        }
      }
      state[d] = 2;
    };
    std::vector<Eigen::Triplet<double>> trip;
    g = Eigen::VectorXd::Zero(ndof);
    for (int d = 0; d < ndof; ++d) {
      resolve(d);
      for (const auto& [c, w] : rows[d]) trip.emplace_back(d, c, w);
      g[d] = gval[d];
    }
    T.resize(ndof, nfree);
    T.setFromTriplets(trip.begin(), trip.end());
    T.makeCompressed();
  };
  build(2, fixed_u, Tu_, gu_, free_u_);
  build(1, fixed_p, Tp_, gp_load_, free_p_);
}

SolutionState PhaseFieldModel::initial_state() const {
  SolutionState s;
  s.u = Eigen::VectorXd::Zero(2 * mesh_.num_nodes());
  s.phi = Eigen::VectorXd::Zero(mesh_.num_nodes());
  s.H = Eigen::VectorXd::Zero(4 * mesh_.num_elements());
  return s;
}

Eigen::VectorXd PhaseFieldModel::full_u(const Eigen::VectorXd& z, double load) const {
  return Tu_ * z + gu_ * load;
}
Eigen::VectorXd PhaseFieldModel::full_phi(const Eigen::VectorXd& z, double load) const {
  return Tp_ * z + gp_load_ * load;
}

Eigen::VectorXd PhaseFieldModel::strain_energy(const Eigen::VectorXd& u) const {
  Eigen::VectorXd psi(4 * mesh_.num_elements());
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    Eigen::Matrix<double, 8, 1> ue;
    for (int a = 0; a < 4; ++a) ue.segment<2>(2 * a) = u.segment<2>(2 * mesh_.elements[e][a]);
    for (int q = 0; q < 4; ++q) {
      const Eigen::Vector3d eps = strain_matrix(gp_[4 * e + q].dN) * ue;
      psi[4 * e + q] = element_energy_density(eps, mat_.C2d);
    }
  }
  return psi;
}

Eigen::VectorXd PhaseFieldModel::trial_history(const Eigen::VectorXd& u,
                                               const Eigen::VectorXd& H_old) const {
  return strain_energy(u).cwiseMax(H_old);
}

Residual PhaseFieldModel::assemble_residual(const Eigen::VectorXd& u, const Eigen::VectorXd& phi,
                                            const Eigen::VectorXd& H) const {
  const int nn = mesh_.num_nodes();
  Residual R;
  R.r_u = Eigen::VectorXd::Zero(2 * nn);
  R.r_phi = Eigen::VectorXd::Zero(nn);
  R.crack = Eigen::VectorXd::Zero(nn);
  R.drive = Eigen::VectorXd::Zero(nn);
  const double Gc = mat_.Gc, l = mat_.ell;
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    const auto& conn = mesh_.elements[e];
    Eigen::Matrix<double, 8, 1> ue;
    Eigen::Vector4d pe;
    for (int a = 0; a < 4; ++a) {
      ue.segment<2>(2 * a) = u.segment<2>(2 * conn[a]);
      pe[a] = phi[conn[a]];
    }
    Eigen::Matrix<double, 8, 1> fu = Eigen::Matrix<double, 8, 1>::Zero();
    Eigen::Vector4d fp = Eigen::Vector4d::Zero(), fc = Eigen::Vector4d::Zero(),
                    fd = Eigen::Vector4d::Zero();
    for (int q = 0; q < 4; ++q) {
      const GaussPoint& g = gp_[4 * e + q];
      const auto B = strain_matrix(g.dN);
      const Eigen::Vector3d sig = mat_.C2d * (B * ue);
      const double ph = g.N.dot(pe);
      const Eigen::Vector2d grad = g.dN.transpose() * pe;
      const double deg = (1 - ph) * (1 - ph) + mat_.k_res;
      fu += deg * g.dV * (B.transpose() * sig);
      // Reaction and drive terms are row-sum lumped (nodal phi).
      const Eigen::Vector4d crack =
          (Gc / l) * g.N.cwiseProduct(pe) + (Gc * l) * (g.dN * grad);
      const Eigen::Vector4d drive =
          (2 * H[4 * e + q]) * g.N.cwiseProduct((Eigen::Vector4d::Ones() - pe));
      fp += g.dV * (crack - drive);
      fc += g.dV * crack.cwiseAbs();
      fd += g.dV * drive.cwiseAbs();
    }
    for (int a = 0; a < 4; ++a) {
      R.r_u.segment<2>(2 * conn[a]) += fu.segment<2>(2 * a);
      R.r_phi[conn[a]] += fp[a];
      R.crack[conn[a]] += fc[a];
      R.drive[conn[a]] += fd[a];
    }
  }
  return R;
}

PhaseFieldModel::ResidualNorms PhaseFieldModel::reduced_norms(const Residual& r) const {
  ResidualNorms n;
  n.u = (Tu_.transpose() * r.r_u).norm();
  n.phi = (Tp_.transpose() * r.r_phi).norm();
  n.u_scale = r.r_u.norm();
  n.phi_scale = (Tp_.transpose() * r.crack).norm() + (Tp_.transpose() * r.drive).norm();
  return n;
}

void PhaseFieldModel::tangent(const Eigen::VectorXd& phi, const Eigen::VectorXd& H,
                              Eigen::SparseMatrix<double>& Kuu,
                              Eigen::SparseMatrix<double>& Kpp) const {
  const int nn = mesh_.num_nodes();
  std::vector<Eigen::Triplet<double>> tu, tp;
  tu.reserve(64 * mesh_.num_elements());
  tp.reserve(16 * mesh_.num_elements());
  const double Gc = mat_.Gc, l = mat_.ell;
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    const auto& conn = mesh_.elements[e];
    Eigen::Vector4d pe;
    for (int a = 0; a < 4; ++a) pe[a] = phi[conn[a]];
    Eigen::Matrix<double, 8, 8> ku = Eigen::Matrix<double, 8, 8>::Zero();
    Eigen::Matrix4d kp = Eigen::Matrix4d::Zero();
    for (int q = 0; q < 4; ++q) {
      const GaussPoint& g = gp_[4 * e + q];
      const auto B = strain_matrix(g.dN);
      const double ph = std::clamp(g.N.dot(pe), 0.0, 1.0);
      const double deg = (1 - ph) * (1 - ph) + mat_.k_res;
      ku += deg * g.dV * (B.transpose() * mat_.C2d * B);
      kp += g.dV * (Eigen::Matrix4d(((Gc / l + 2 * H[4 * e + q]) * g.N).asDiagonal()) +
                    (Gc * l) * g.dN * g.dN.transpose());
    }
    for (int a = 0; a < 4; ++a) {
      for (int b = 0; b < 4; ++b) {
        tp.emplace_back(conn[a], conn[b], kp(a, b));
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            tu.emplace_back(2 * conn[a] + i, 2 * conn[b] + j, ku(2 * a + i, 2 * b + j));
      }
    }
  }
  Eigen::SparseMatrix<double> K(2 * nn, 2 * nn), P(nn, nn);
  K.setFromTriplets(tu.begin(), tu.end());
  P.setFromTriplets(tp.begin(), tp.end());
  Kuu = Tu_.transpose() * K * Tu_;
  Kpp = Tp_.transpose() * P * Tp_;
}

void PhaseFieldModel::apply_constraints(SolutionState& s, double load) const {
  s.u = full_u(gather(free_u_, s.u), load);
  s.phi = full_phi(gather(free_p_, s.phi), load);
}

SolutionState PhaseFieldModel::solve_step(const SolutionState& prev, double load,
                                          const SolverConfig& cfg, const SolutionState* guess,
                                          StepReport* report) const {
  const int nu = num_free_u(), np = num_free_phi();
  const int n = nu + np;

  const SolutionState& start = guess ? *guess : prev;
  Eigen::VectorXd z(n);
  z.head(nu) = gather(free_u_, start.u);
  Eigen::VectorXd phi0 = start.phi.cwiseMax(prev.phi).cwiseMin(1.0);
  z.tail(np) = gather(free_p_, phi0);

  struct Eval {
    Eigen::VectorXd r;
    ResidualNorms norms;
    Eigen::VectorXd u, phi, H;
  };
  auto evaluate = [&](const Eigen::VectorXd& zz) {
    Eval ev;
    ev.u = full_u(zz.head(nu), load);
    ev.phi = full_phi(zz.tail(np), load);
    ev.H = trial_history(ev.u, prev.H);
    const Residual R = assemble_residual(ev.u, ev.phi, ev.H);
    ev.norms = reduced_norms(R);
    ev.r.resize(n);
    ev.r.head(nu) = Tu_.transpose() * R.r_u;
    ev.r.tail(np) = Tp_.transpose() * R.r_phi;
    // phi <= 1 is a bound constraint: a dof sitting on it with a residual
    // pushing further up is inactive.
    for (int i = 0; i < np; ++i)
      if (zz[nu + i] >= 1.0 && ev.r[nu + i] < 0) ev.r[nu + i] = 0.0;
    ev.norms.phi = ev.r.tail(np).norm();
    return ev;
  };
  auto project = [&](Eigen::VectorXd zz) {
    zz.tail(np) = zz.tail(np).cwiseMin(1.0);
    return zz;
  };
  auto converged = [&](const ResidualNorms& q) {
    return q.u <= cfg.rel_tol * q.u_scale + cfg.abs_tol &&
           q.phi <= cfg.rel_tol * q.phi_scale + cfg.abs_tol;
  };
  auto measure = [&](const ResidualNorms& q) {
    return std::max(q.u / (cfg.rel_tol * q.u_scale + cfg.abs_tol),
                    q.phi / (cfg.rel_tol * q.phi_scale + cfg.abs_tol));
  };

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> Lu, Lp;
  std::deque<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;  // (s, y)
  std::deque<double> rho;
  auto apply_h0 = [&](const Eigen::VectorXd& v) {
    Eigen::VectorXd out(n);
    if (nu) out.head(nu) = Lu.solve(v.head(nu));
    if (np) out.tail(np) = Lp.solve(v.tail(np));
    return out;
  };
  auto apply_inverse = [&](const Eigen::VectorXd& g) {
    Eigen::VectorXd q = g;
    std::vector<double> alpha(pairs.size());
    for (int i = static_cast<int>(pairs.size()) - 1; i >= 0; --i) {
      alpha[i] = rho[i] * pairs[i].first.dot(q);
      q -= alpha[i] * pairs[i].second;
    }
    Eigen::VectorXd r = apply_h0(q);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const double beta = rho[i] * pairs[i].second.dot(r);
      r += (alpha[i] - beta) * pairs[i].first;
    }
    return r;
  };

  StepReport rep;
  Eval cur = evaluate(z);
  bool need_tangent = true;
  int since_tangent = 0;
  double best = std::numeric_limits<double>::infinity();
  int stall = 0;
  int it = 0;
  for (; it < cfg.max_iterations; ++it) {
    if (converged(cur.norms)) break;
    const double m = measure(cur.norms);
    if (m < 0.5 * best) {
      best = m;
      stall = 0;
    } else if (++stall >= 10) {
      need_tangent = true;
      pairs.clear();
      rho.clear();
      stall = 0;
      best = m;
    }
    if (need_tangent || since_tangent >= cfg.tangent_refresh) {
      Eigen::SparseMatrix<double> Kuu, Kpp;
      tangent(cur.phi, cur.H, Kuu, Kpp);
      if (nu) Lu.compute(Kuu);
      if (np) Lp.compute(Kpp);
      if ((nu && Lu.info() != Eigen::Success) || (np && Lp.info() != Eigen::Success))
        throw SingularMatrixError("tangent factorisation failed", "solve_step");
      need_tangent = false;
      since_tangent = 0;
      ++rep.tangent_updates;
    }
    ++since_tangent;

    auto freeze = [&](Eigen::VectorXd& dir) {
      for (int i = 0; i < np; ++i)
        if (z[nu + i] >= 1.0 && cur.r[nu + i] == 0.0 && dir[nu + i] > 0) dir[nu + i] = 0.0;
    };
    Eigen::VectorXd d = -apply_inverse(cur.r);
    freeze(d);
    double s0 = d.dot(cur.r);
    if (!(s0 < 0)) {
      pairs.clear();
      rho.clear();
      d = -apply_h0(cur.r);
      freeze(d);
      s0 = d.dot(cur.r);
    }

    // Line search on the directional residual s(a) = d . r(z + a d).
    double a = 1.0, a_lo = 0.0, s_lo = s0;
    double a_hi = -1.0, s_hi = 0.0;
    Eval trial = evaluate(project(z + a * d));
    for (int ls = 0; ls < 8; ++ls) {
      const double s = d.dot(trial.r);
      if (!(s0 < 0) || std::abs(s) <= cfg.line_search_eta * std::abs(s0)) break;
      double a_new;
      if (s < 0) {
        a_lo = a;
        if (a_hi < 0) {
          a_new = s > s_lo ? a + (a - 0.0) * s / (s0 - s) : 2 * a;
          a_new = std::clamp(a_new, 1.5 * a, 4.0 * a);
          s_lo = s;
          if (a_new > 16.0) break;
        } else {
          s_lo = s;
          a_new = a_lo - s_lo * (a_hi - a_lo) / (s_hi - s_lo);
        }
      } else {
        a_hi = a;
        s_hi = s;
        a_new = a_lo - s_lo * (a_hi - a_lo) / (s_hi - s_lo);
      }
      if (a_hi > 0) {
        const double w = a_hi - a_lo;
        a_new = std::clamp(a_new, a_lo + 0.1 * w, a_hi - 0.1 * w);
      }
      a = a_new;
      trial = evaluate(project(z + a * d));
    }

    const Eigen::VectorXd s_vec = project(z + a * d) - z;
    const Eigen::VectorXd y_vec = trial.r - cur.r;
    const double ys = y_vec.dot(s_vec);
    if (cfg.lbfgs_memory > 0 && ys > 1e-14 * y_vec.norm() * s_vec.norm()) {
      pairs.emplace_back(s_vec, y_vec);
      rho.push_back(1.0 / ys);
      if (static_cast<int>(pairs.size()) > cfg.lbfgs_memory) {
        pairs.pop_front();
        rho.pop_front();
      }
    }
    z += s_vec;
    cur = std::move(trial);
  }
  rep.iterations = it;
  rep.residual = std::max(cur.norms.u, cur.norms.phi);
  if (report) *report = rep;
  if (!converged(cur.norms)) throw StepConvergenceError(prev.step + 1, load, rep.residual);

  SolutionState out;
  out.u = std::move(cur.u);
  out.phi = std::move(cur.phi);
  out.H = std::move(cur.H);
  out.load = load;
  out.step = prev.step + 1;
  return out;
}

double PhaseFieldModel::reaction_force(const SolutionState& s, const std::string& set_name, Dof dof,
                                       double thickness_m) const {
  if (dof == Dof::kPhi) throw DomainError("reaction_force: phase-field dof has no reaction");
  const auto& nodes = mesh_.node_set(set_name);
  const Residual R = assemble_residual(s.u, s.phi, s.H);
  double f = 0.0;
  for (int node : nodes) f += R.r_u[2 * node + static_cast<int>(dof)];
  return f * thickness_m;
}

double PhaseFieldModel::crack_surface_energy(const Eigen::VectorXd& phi) const {
  double G = 0.0;
  for (int e = 0; e < mesh_.num_elements(); ++e) {
    Eigen::Vector4d pe;
    for (int a = 0; a < 4; ++a) pe[a] = phi[mesh_.elements[e][a]];
    for (int q = 0; q < 4; ++q) {
      const GaussPoint& g = gp_[4 * e + q];
      const double ph = g.N.dot(pe);
      const Eigen::Vector2d grad = g.dN.transpose() * pe;
      G += g.dV * mat_.Gc * (ph * ph / (2 * mat_.ell) + 0.5 * mat_.ell * grad.squaredNorm());
    }
  }
  return G;
}

SimulationResult run_simulation(const PhaseFieldModel& model, const SimulationSpec& spec,
                                const SolverConfig& cfg, const StepCallback& on_step) {
  cfg.validate();
  SimulationResult res;
  SolutionState cur = model.initial_state();
  SolutionState older;
  bool have_older = false;
  res.phi_min = 0.0;
  res.phi_max = 0.0;
  double peak = 0.0;
  int after_stop = -1;
  bool stop = false;

  auto commit = [&](SolutionState next) {
    if ((next.H.array() < cur.H.array()).any()) res.history_monotone = false;
    res.phi_min = std::min(res.phi_min, next.phi.minCoeff());
    res.phi_max = std::max(res.phi_max, next.phi.maxCoeff());
    older = std::move(cur);
    have_older = true;
    cur = std::move(next);
    const double F = spec.reaction_sign * model.reaction_force(cur, spec.reaction_set,
                                                               spec.reaction_dof, spec.thickness_m);
    res.curve.push_back({cur.step, cur.load, F});
    if (on_step) on_step(cur, F);
    peak = std::max(peak, std::abs(F));
    if (spec.stop_fraction > 0 && after_stop < 0 && peak > 0 &&
        std::abs(F) < spec.stop_fraction * peak) {
      after_stop = 0;
    } else if (after_stop >= 0) {
      ++after_stop;
    }
    if (after_stop >= spec.stop_after) stop = after_stop >= 0;
  };

  std::function<void(double, int)> advance = [&](double target, int depth) {
    SolutionState guess = cur;
    if (have_older && cur.load != older.load) {
      const double t = (target - cur.load) / (cur.load - older.load);
      guess.u = cur.u + t * (cur.u - older.u);
      guess.phi = (cur.phi + t * (cur.phi - older.phi)).cwiseMax(cur.phi).cwiseMin(1.0);
    }
    StepReport rep;
    try {
      SolutionState next = model.solve_step(cur, target, cfg, &guess, &rep);
      res.total_iterations += rep.iterations;
      commit(std::move(next));
    } catch (const StepConvergenceError&) {
      res.total_iterations += rep.iterations;
      if (depth >= cfg.max_halvings) throw;
      const double mid = 0.5 * (cur.load + target);
      advance(mid, depth + 1);
      if (!stop) advance(target, depth + 1);
    }
  };

  try {
    for (double load : schedule_loads(cfg.schedule)) {
      if (stop) break;
      advance(load, 0);
    }
  } catch (const StepConvergenceError& e) {
    res.failure = e.what();
  }
  res.final_state = std::move(cur);
  return res;
}

}  // namespace cntpf::fem
