#pragma once

#include <array>
#include <memory>
#include <vector>

#include "shellthermo/dofmap.hpp"
#include "shellthermo/geometry.hpp"
#include "shellthermo/loads.hpp"
#include "shellthermo/materials.hpp"
#include "shellthermo/mesh.hpp"
#include "shellthermo/system.hpp"
#include "shellthermo/tensors.hpp"

namespace shellthermo {

/// Linearized change-of-metric tensor of a surface displacement field:
///   gamma_{ab}(eta) = 1/2 (d_b eta_a + d_a eta_b)
///                     - Gamma^s_{ab} eta_s - b_{ab} eta_3.
/// grad_eta(a, b) = d_b eta_a at the evaluation point.
inline Mat2 strain_gamma(const GeometryFrame& f, const Mat2& grad_eta, const Vec2& eta_t,
                         double eta3) {
  Mat2 g;
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b) {
      double v = 0.5 * (grad_eta(a, b) + grad_eta(b, a)) - f.b_lower(a, b) * eta3;
      for (int s = 0; s < 2; ++s) v -= f.christoffel[s][a][b] * eta_t[s];
      g(a, b) = v;
      g(b, a) = v;
    }
  return g;
}

namespace detail2d {

// Rows (gamma_11, gamma_22, gamma_12) of the strain operator against the
// 7 local dofs [eta1@nodes | eta2@nodes | eta3]. phi are the P1 values at
// the quadrature point, gphi the constant P1 gradients.
inline Eigen::Matrix<double, 3, 7> gamma_B(const GeometryFrame& f,
                                           const std::array<double, 3>& phi,
                                           const std::array<Vec2, 3>& gphi) {
  Eigen::Matrix<double, 3, 7> B = Eigen::Matrix<double, 3, 7>::Zero();
  for (int a = 0; a < 3; ++a) {
    const int c1 = a, c2 = 3 + a;
    // eta1 basis: grad_eta row 0 = gphi[a], eta_t = (phi,0)
    B(0, c1) = gphi[a][0] - f.christoffel[0][0][0] * phi[a];
    B(1, c1) = -f.christoffel[0][1][1] * phi[a];
    B(2, c1) = 0.5 * gphi[a][1] - f.christoffel[0][0][1] * phi[a];
    // eta2 basis
    B(0, c2) = -f.christoffel[1][0][0] * phi[a];
    B(1, c2) = gphi[a][1] - f.christoffel[1][1][1] * phi[a];
    B(2, c2) = 0.5 * gphi[a][0] - f.christoffel[1][0][1] * phi[a];
  }
  B(0, 6) = -f.b_lower(0, 0);
  B(1, 6) = -f.b_lower(1, 1);
  B(2, 6) = -f.b_lower(0, 1);
  return B;
}

// 3x3 matrix of the quadratic form a^{abst} g_st g'_ab on packed strains
// (g11, g22, g12); off-diagonal multiplicities folded in.
inline Mat3 membrane_D(const Tensor4_2D& a) {
  Mat3 D;
  D << a(0, 0, 0, 0), a(0, 0, 1, 1), 2.0 * a(0, 0, 0, 1),
       a(1, 1, 0, 0), a(1, 1, 1, 1), 2.0 * a(1, 1, 0, 1),
       2.0 * a(0, 1, 0, 0), 2.0 * a(0, 1, 1, 1), 4.0 * a(0, 1, 0, 1);
  return D;
}

struct TriQuadrature {
  // second-order midedge rule
  static constexpr int n = 3;
  static constexpr double bary[3][3] = {{0.5, 0.5, 0.0}, {0.0, 0.5, 0.5}, {0.5, 0.0, 0.5}};
};

}  // namespace detail2d

struct AssemblyOptions {
  bool apply_dirichlet = true;
  bool include_coupling = true;
  bool check_ellipticity = true;
};

/// Assembled membrane problem with its discretization context.
struct MembraneSystem {
  SemiDiscreteSystem sys;
  Mesh2D mesh;
  DofMap2D dofs;
  std::shared_ptr<const Chart> chart;
  MaterialParams mat;
  std::vector<std::string> warnings;
};

/// Galerkin assembly of the two-dimensional thermoelastic membrane
/// problem. The leading factors follow the limit problem verbatim:
/// 2 on the mechanical mass, thermal mass and thermal stiffness, 4 on the
/// thermo-mechanical coupling, 1 on the membrane stiffness. Membrane
/// resultants are built from the shared scaled loads as
/// F^i = 2 f^{i,0} + h^{i,1} and Q = 2 q^0.
inline MembraneSystem assemble_membrane(const Mesh2D& mesh, std::shared_ptr<const Chart> chart,
                                        const MaterialParams& mat, const LoadSpec& loads = {},
                                        const AssemblyOptions& opts = {}) {
  MembraneSystem out;
  out.mesh = mesh;
  out.chart = chart;
  out.mat = mat;
  out.dofs = DofMap2D::build(mesh, opts.apply_dirichlet);
  const DofMap2D& dofs = out.dofs;
  const CouplingCoefficients cc = CouplingCoefficients::from(mat);
  const Rect dom = chart->param_domain();

  if (opts.check_ellipticity) {
    try {
      const EllipticityReport rep = check_elliptic(*chart, 8, 8);
      if (!rep.uniform_elliptic)
        out.warnings.push_back(
            "chart '" + chart->name() +
            "' is not uniformly elliptic on the sampled grid; the membrane stiffness may lose "
            "definiteness");
    } catch (const ShellError&) {
      throw;
    }
  }

  using T = Eigen::Triplet<double>;
  std::vector<T> tM, tK, tCt, tC, tMt, tKt;
  VecX load_f = VecX::Zero(dofs.n_mech());
  VecX load_h = VecX::Zero(dofs.n_mech());
  VecX load_q = VecX::Zero(dofs.n_th());

  std::array<double, 3> phi;
  std::array<Vec2, 3> gphi;
  int mech_dof[7];

  for (int e = 0; e < mesh.num_elements(); ++e) {
    const auto& tri = mesh.triangles[e];
    const Vec2 p0 = mesh.nodes[tri[0]], p1 = mesh.nodes[tri[1]], p2 = mesh.nodes[tri[2]];
    const double area = mesh.triangle_area(e);
    if (area <= 0.0)
      fail(ErrorKind::AssemblyFailure, "element " + std::to_string(e) + " has non-positive area");
    const Mat2 J = (Mat2() << (p1 - p0)[0], (p2 - p0)[0], (p1 - p0)[1], (p2 - p0)[1]).finished();
    const Mat2 Jit = J.inverse().transpose();
    gphi[0] = Jit * Vec2(-1.0, -1.0);
    gphi[1] = Jit * Vec2(1.0, 0.0);
    gphi[2] = Jit * Vec2(0.0, 1.0);

    for (int c = 0; c < 3; ++c) mech_dof[c] = dofs.xi_dof(0, tri[c]);
    for (int c = 0; c < 3; ++c) mech_dof[3 + c] = dofs.xi_dof(1, tri[c]);
    mech_dof[6] = dofs.xi3_dof(e);

    Eigen::Matrix<double, 7, 7> Ke = Eigen::Matrix<double, 7, 7>::Zero();
    Eigen::Matrix<double, 7, 7> Me = Eigen::Matrix<double, 7, 7>::Zero();
    Eigen::Matrix<double, 7, 3> Cte = Eigen::Matrix<double, 7, 3>::Zero();
    Mat3 Mte = Mat3::Zero();
    Mat3 Kte = Mat3::Zero();
    Eigen::Matrix<double, 7, 1> fe = Eigen::Matrix<double, 7, 1>::Zero();
    Eigen::Matrix<double, 7, 1> he = Eigen::Matrix<double, 7, 1>::Zero();
    Vec3 qe = Vec3::Zero();

    for (int qp = 0; qp < detail2d::TriQuadrature::n; ++qp) {
      const double* l = detail2d::TriQuadrature::bary[qp];
      phi = {l[0], l[1], l[2]};
      const Vec2 yq = l[0] * p0 + l[1] * p1 + l[2] * p2;
      GeometryFrame f;
      try {
        f = eval_frame(*chart, yq);
      } catch (const ShellError& err) {
        if (err.kind() == ErrorKind::DegenerateChart)
          fail(ErrorKind::AssemblyFailure,
               std::string("degenerate frame in element ") + std::to_string(e) + ": " + err.what());
        throw;
      }
      const double w = area / 3.0 * f.sqrt_a;

      const auto B = detail2d::gamma_B(f, phi, gphi);
      const Mat3 D = detail2d::membrane_D(membrane_tensor(f, mat));
      Ke += w * (B.transpose() * D * B);

      // 2 rho (xi_a a^{ab} eta_b + xi_3 eta_3)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          for (int ca = 0; ca < 2; ++ca)
            for (int cb = 0; cb < 2; ++cb)
              Me(ca * 3 + a, cb * 3 + b) +=
                  2.0 * mat.rho * f.a_upper(ca, cb) * phi[a] * phi[b] * w;
      Me(6, 6) += 2.0 * mat.rho * w;

      // coupling: 4 coef zeta a^{ab} gamma_{ab}(eta); trace weights (a11, a22, 2 a12)
      Eigen::Matrix<double, 1, 7> trB = f.a_upper(0, 0) * B.row(0) + f.a_upper(1, 1) * B.row(1) +
                                        2.0 * f.a_upper(0, 1) * B.row(2);
      if (opts.include_coupling)
        for (int j = 0; j < 3; ++j)
          Cte.col(j) += cc.mech_thermal * phi[j] * w * trB.transpose();

      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          Mte(a, b) += cc.heat_capacity_eff * phi[a] * phi[b] * w;
          Kte(a, b) += 2.0 * mat.k * gphi[a].dot(f.a_upper * gphi[b]) * w;
        }

      // membrane load resultants: F^i eta_i (contravariant components
      // paired directly with covariant test components)
      const double sf = spatial_profile(loads.f.space, yq, dom);
      const double sh = spatial_profile(loads.h.space, yq, dom);
      const double sq = spatial_profile(loads.q.space, yq, dom);
      for (int a = 0; a < 3; ++a)
        for (int c = 0; c < 2; ++c) {
          fe(c * 3 + a) += 2.0 * loads.f.amplitude[c] * sf * phi[a] * w;
          he(c * 3 + a) += loads.h.amplitude[c] * sh * phi[a] * w;
        }
      fe(6) += 2.0 * loads.f.amplitude[2] * sf * w;
      he(6) += loads.h.amplitude[2] * sh * w;
      for (int a = 0; a < 3; ++a) qe(a) += 2.0 * loads.q.amplitude[0] * sq * phi[a] * w;
    }

    for (int i = 0; i < 7; ++i) {
      const int gi = mech_dof[i];
      if (gi < 0) continue;
      for (int j = 0; j < 7; ++j) {
        const int gj = mech_dof[j];
        if (gj < 0) continue;
        if (Me(i, j) != 0.0) tM.emplace_back(gi, gj, Me(i, j));
        if (Ke(i, j) != 0.0) tK.emplace_back(gi, gj, Ke(i, j));
      }
      for (int j = 0; j < 3; ++j) {
        const int gj = dofs.th_dof(tri[j]);
        if (gj < 0) continue;
        if (Cte(i, j) != 0.0) {
          tCt.emplace_back(gi, gj, Cte(i, j));
          tC.emplace_back(gj, gi, Cte(i, j));
        }
      }
      load_f[gi] += fe(i);
      load_h[gi] += he(i);
    }
    for (int a = 0; a < 3; ++a) {
      const int ga = dofs.th_dof(tri[a]);
      if (ga < 0) continue;
      for (int b = 0; b < 3; ++b) {
        const int gb = dofs.th_dof(tri[b]);
        if (gb < 0) continue;
        if (Mte(a, b) != 0.0) tMt.emplace_back(ga, gb, Mte(a, b));
        if (Kte(a, b) != 0.0) tKt.emplace_back(ga, gb, Kte(a, b));
      }
      load_q[ga] += qe(a);
    }
  }

  SemiDiscreteSystem& sys = out.sys;
  sys.n_mech = dofs.n_mech();
  sys.n_th = dofs.n_th();
  const auto build = [](int r, int c, std::vector<T>& trip) {
    SpMat m(r, c);
    m.setFromTriplets(trip.begin(), trip.end());
    m.makeCompressed();
    return m;
  };
  sys.M = build(sys.n_mech, sys.n_mech, tM);
  sys.K = build(sys.n_mech, sys.n_mech, tK);
  sys.Ct = build(sys.n_mech, sys.n_th, tCt);
  sys.C = build(sys.n_th, sys.n_mech, tC);
  sys.M_th = build(sys.n_th, sys.n_th, tMt);
  sys.K_th = build(sys.n_th, sys.n_th, tKt);
  sys.K_th_z = SpMat(sys.n_th, sys.n_th);

  if (!loads.f.is_zero())
    sys.mech_loads.emplace_back(
        [tp = loads.f.time, pr = loads.f.time_param](double t) { return time_profile(tp, t, pr); },
        std::move(load_f));
  if (!loads.h.is_zero())
    sys.mech_loads.emplace_back(
        [tp = loads.h.time, pr = loads.h.time_param](double t) { return time_profile(tp, t, pr); },
        std::move(load_h));
  if (!loads.q.is_zero())
    sys.th_loads.emplace_back(
        [tp = loads.q.time, pr = loads.q.time_param](double t) { return time_profile(tp, t, pr); },
        std::move(load_q));
  return out;
}

/// Point values (xi1, xi2, xi3, zeta) of a membrane state at a parameter
/// point; constrained dofs evaluate to zero.
inline Eigen::Vector4d probe_membrane(const MembraneSystem& ms, const State& s, const Vec2& y) {
  Eigen::Vector3d bary;
  const int e = locate_point(ms.mesh, y, bary);
  const auto& tri = ms.mesh.triangles[e];
  Eigen::Vector4d out = Eigen::Vector4d::Zero();
  for (int a = 0; a < 3; ++a) {
    for (int c = 0; c < 2; ++c) {
      const int d = ms.dofs.xi_dof(c, tri[a]);
      if (d >= 0) out[c] += bary[a] * s.xi[d];
    }
    const int dt = ms.dofs.th_dof(tri[a]);
    if (dt >= 0) out[3] += bary[a] * s.zeta[dt];
  }
  out[2] = s.xi[ms.dofs.xi3_dof(e)];
  return out;
}

}  // namespace shellthermo
