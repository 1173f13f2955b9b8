#pragma once

#include <array>
#include <memory>
#include <vector>

#include "shellthermo/dofmap.hpp"
#include "shellthermo/loads.hpp"
#include "shellthermo/scaled_geometry.hpp"
#include "shellthermo/system.hpp"
#include "shellthermo/assemble2d.hpp"

namespace shellthermo {

/// Scaled linearized strains on the fixed domain:
///   e_ab = 1/2 (d_b v_a + d_a v_b) - Gamma^p_ab(eps) v_p
///   e_a3 = 1/2 ((1/eps) d3 v_a + d_a v_3) - Gamma^p_a3(eps) v_p
///   e_33 = (1/eps) d3 v_3
/// grad_v(i, j) = d_j v_i with plain fixed-domain derivatives.
inline Mat3 scaled_strain(const ScaledFrame& s, const Mat3& grad_v, const Vec3& v_vals,
                          double eps) {
  Mat3 e;
  for (int a = 0; a < 2; ++a)
    for (int b = a; b < 2; ++b) {
      double v = 0.5 * (grad_v(a, b) + grad_v(b, a));
      for (int p = 0; p < 3; ++p) v -= s.christoffel3[p][a][b] * v_vals[p];
      e(a, b) = v;
      e(b, a) = v;
    }
  for (int a = 0; a < 2; ++a) {
    double v = 0.5 * ((1.0 / eps) * grad_v(a, 2) + grad_v(2, a));
    for (int p = 0; p < 3; ++p) v -= s.christoffel3[p][a][2] * v_vals[p];
    e(a, 2) = v;
    e(2, a) = v;
  }
  e(2, 2) = (1.0 / eps) * grad_v(2, 2);
  return e;
}

namespace detail3d {

// Packed strain order (e11, e22, e33, e23, e13, e12) against the 18
// local dofs [u1 | u2 | u3] x 6 prism nodes.
inline Eigen::Matrix<double, 6, 18> strain_B(const ScaledFrame& s, double eps,
                                             const std::array<double, 6>& N,
                                             const std::array<Vec3, 6>& gN) {
  Eigen::Matrix<double, 6, 18> B = Eigen::Matrix<double, 6, 18>::Zero();
  for (int n = 0; n < 6; ++n)
    for (int c = 0; c < 3; ++c) {
      const int col = c * 6 + n;
      // e_ab rows 0,1,5 in order (0,0), (1,1), (0,1)
      const int ab_rows[3][2] = {{0, 0}, {1, 1}, {0, 1}};
      const int ab_pos[3] = {0, 1, 5};
      for (int r = 0; r < 3; ++r) {
        const int a = ab_rows[r][0], b = ab_rows[r][1];
        double v = 0.0;
        if (c < 2) {
          if (c == a) v += 0.5 * gN[n][b];
          if (c == b) v += 0.5 * gN[n][a];
        }
        v -= s.christoffel3[c][a][b] * N[n];
        B(ab_pos[r], col) += v;
      }
      // e_33 row 2
      if (c == 2) B(2, col) += (1.0 / eps) * gN[n][2];
      // e_a3 rows: (1,2) -> 3, (0,2) -> 4
      const int a3_pos[2] = {4, 3};
      for (int a = 0; a < 2; ++a) {
        double v = 0.0;
        if (c == a) v += 0.5 * (1.0 / eps) * gN[n][2];
        if (c == 2) v += 0.5 * gN[n][a];
        v -= s.christoffel3[c][a][2] * N[n];
        B(a3_pos[a], col) += v;
      }
    }
  return B;
}

// Quadratic-form matrix of A^{ijkl}(eps) on packed symmetric strains.
inline Eigen::Matrix<double, 6, 6> tensor_D(const Tensor4_3D& A) {
  const int pr[6][2] = {{0, 0}, {1, 1}, {2, 2}, {1, 2}, {0, 2}, {0, 1}};
  const double mult[6] = {1.0, 1.0, 1.0, 2.0, 2.0, 2.0};
  Eigen::Matrix<double, 6, 6> D;
  for (int I = 0; I < 6; ++I)
    for (int J = 0; J < 6; ++J)
      D(I, J) = mult[I] * mult[J] * A(pr[I][0], pr[I][1], pr[J][0], pr[J][1]);
  return D;
}

}  // namespace detail3d

/// Assembled scaled 3D problem with its discretization context.
struct Scaled3DSystem {
  SemiDiscreteSystem sys;
  Mesh3D mesh;
  DofMap3D dofs;
  std::shared_ptr<const Chart> chart;
  MaterialParams mat;
  double eps = 0.0;
};

/// Galerkin assembly of the scaled three-dimensional problem on
/// Omega = omega x (-1,1) for half-thickness eps: mass weighted by
/// g^{ab}(eps) sqrt(g), stiffness A^{ijkl}(eps) on the scaled strains,
/// thermal conduction with the 1/eps^2 transverse channel, Duhamel
/// coupling through e_ab g^{ab} + e_33. Loads follow the m = 0 orders:
/// body f^0 and heat q^0 in the volume, traction eps h^1 on the top face
/// whose assembled value is eps-independent after the 1/eps factor of the
/// scaled weak form.
inline Scaled3DSystem assemble_scaled3d(const Mesh3D& mesh, std::shared_ptr<const Chart> chart,
                                        const MaterialParams& mat, double eps,
                                        const LoadSpec& loads = {},
                                        const AssemblyOptions& opts = {}) {
  Scaled3DSystem out;
  out.mesh = mesh;
  out.chart = chart;
  out.mat = mat;
  out.eps = eps;
  out.dofs = DofMap3D::build(mesh, opts.apply_dirichlet);
  const DofMap3D& dofs = out.dofs;
  const CouplingCoefficients cc = CouplingCoefficients::from(mat);
  const double duhamel = opts.include_coupling ? cc.duhamel : 0.0;
  const Rect dom = chart->param_domain();
  const Mesh2D& base = mesh.base;

  using T = Eigen::Triplet<double>;
  std::vector<T> tM, tK, tCt, tC, tMt, tKt, tKz;
  VecX load_f = VecX::Zero(dofs.n_mech());
  VecX load_h = VecX::Zero(dofs.n_mech());
  VecX load_q = VecX::Zero(dofs.n_th());

  // 2-point Gauss rule on each vertical interval
  const double gauss[2] = {-1.0 / std::sqrt(3.0), 1.0 / std::sqrt(3.0)};

  std::array<double, 6> N;
  std::array<Vec3, 6> gN;
  int mech_dof[18], th_dof[6];

  for (int e = 0; e < base.num_elements(); ++e) {
    const auto& tri = base.triangles[e];
    const Vec2 p0 = base.nodes[tri[0]], p1 = base.nodes[tri[1]], p2 = base.nodes[tri[2]];
    const double area = base.triangle_area(e);
    const Mat2 J = (Mat2() << (p1 - p0)[0], (p2 - p0)[0], (p1 - p0)[1], (p2 - p0)[1]).finished();
    const Mat2 Jit = J.inverse().transpose();
    const std::array<Vec2, 3> gphi = {Jit * Vec2(-1.0, -1.0), Jit * Vec2(1.0, 0.0),
                                      Jit * Vec2(0.0, 1.0)};

    for (int layer = 0; layer < mesh.layers; ++layer) {
      const double z0 = mesh.z[layer], z1 = mesh.z[layer + 1];
      const double dz = z1 - z0;
      // local node order: 3 base nodes at the lower level then the upper
      for (int a = 0; a < 3; ++a) {
        const int lower = mesh.node_id(tri[a], layer);
        const int upper = mesh.node_id(tri[a], layer + 1);
        for (int c = 0; c < 3; ++c) {
          mech_dof[c * 6 + a] = dofs.u_dof(c, lower);
          mech_dof[c * 6 + 3 + a] = dofs.u_dof(c, upper);
        }
        th_dof[a] = dofs.th_dof(lower);
        th_dof[3 + a] = dofs.th_dof(upper);
      }

      Eigen::Matrix<double, 18, 18> Ke = Eigen::Matrix<double, 18, 18>::Zero();
      Eigen::Matrix<double, 18, 18> Me = Eigen::Matrix<double, 18, 18>::Zero();
      Eigen::Matrix<double, 18, 6> Cte = Eigen::Matrix<double, 18, 6>::Zero();
      Eigen::Matrix<double, 6, 6> Mte = Eigen::Matrix<double, 6, 6>::Zero();
      Eigen::Matrix<double, 6, 6> Kte = Eigen::Matrix<double, 6, 6>::Zero();
      Eigen::Matrix<double, 6, 6> Kze = Eigen::Matrix<double, 6, 6>::Zero();
      Eigen::Matrix<double, 18, 1> fe = Eigen::Matrix<double, 18, 1>::Zero();
      Eigen::Matrix<double, 6, 1> qe = Eigen::Matrix<double, 6, 1>::Zero();

      for (int qp = 0; qp < 3; ++qp) {
        const double* l = detail2d::TriQuadrature::bary[qp];
        const Vec2 yq = l[0] * p0 + l[1] * p1 + l[2] * p2;
        for (int gz = 0; gz < 2; ++gz) {
          const double x3 = 0.5 * (z0 + z1) + 0.5 * dz * gauss[gz];
          const double lz0 = (z1 - x3) / dz, lz1 = (x3 - z0) / dz;
          ScaledFrame sf;
          try {
            sf = eval_scaled_frame(*chart, yq, x3, eps);
          } catch (const ShellError& err) {
            if (err.kind() == ErrorKind::DegenerateChart) throw;
            fail(ErrorKind::AssemblyFailure, std::string("frame failure in prism: ") + err.what());
          }
          const double w = (area / 3.0) * (0.5 * dz) * sf.sqrt_g;

          for (int a = 0; a < 3; ++a) {
            N[a] = l[a] * lz0;
            N[3 + a] = l[a] * lz1;
            gN[a] = Vec3(gphi[a][0] * lz0, gphi[a][1] * lz0, -l[a] / dz);
            gN[3 + a] = Vec3(gphi[a][0] * lz1, gphi[a][1] * lz1, l[a] / dz);
          }

          const auto B = detail3d::strain_B(sf, eps, N, gN);
          const auto D = detail3d::tensor_D(scaled_tensor3d(sf, mat));
          Ke += w * (B.transpose() * D * B);

          for (int m = 0; m < 6; ++m)
            for (int n = 0; n < 6; ++n) {
              const double nn = N[m] * N[n] * w;
              for (int ca = 0; ca < 2; ++ca)
                for (int cb = 0; cb < 2; ++cb)
                  Me(ca * 6 + m, cb * 6 + n) += mat.rho * sf.g_upper(ca, cb) * nn;
              Me(2 * 6 + m, 2 * 6 + n) += mat.rho * nn;
              Mte(m, n) += mat.beta * nn;
              const double cond =
                  gN[m].head<2>().dot(sf.g_upper.topLeftCorner<2, 2>() * gN[n].head<2>());
              const double trans = (1.0 / (eps * eps)) * gN[m][2] * gN[n][2];
              Kte(m, n) += mat.k * (cond + trans) * w;
              Kze(m, n) += mat.k * trans * w;
            }

          // coupling trace weights on packed strains: (g11, g22, 1, 0, 0, 2 g12)
          Eigen::Matrix<double, 1, 18> trB = sf.g_upper(0, 0) * B.row(0) +
                                             sf.g_upper(1, 1) * B.row(1) + B.row(2) +
                                             2.0 * sf.g_upper(0, 1) * B.row(5);
          for (int n = 0; n < 6; ++n) Cte.col(n) += duhamel * N[n] * w * trB.transpose();

          const double sfv = spatial_profile(loads.f.space, yq, dom);
          const double sqv = spatial_profile(loads.q.space, yq, dom);
          for (int n = 0; n < 6; ++n) {
            for (int c = 0; c < 3; ++c) fe(c * 6 + n) += loads.f.amplitude[c] * sfv * N[n] * w;
            qe(n) += loads.q.amplitude[0] * sqv * N[n] * w;
          }
        }
      }

      // top-face traction, only for the last layer
      if (layer == mesh.layers - 1 && !loads.h.is_zero()) {
        for (int qp = 0; qp < 3; ++qp) {
          const double* l = detail2d::TriQuadrature::bary[qp];
          const Vec2 yq = l[0] * p0 + l[1] * p1 + l[2] * p2;
          const ScaledFrame sf = eval_scaled_frame(*chart, yq, 1.0, eps);
          const double w = (area / 3.0) * sf.sqrt_g;
          const double shv = spatial_profile(loads.h.space, yq, dom);
          for (int a = 0; a < 3; ++a)
            for (int c = 0; c < 3; ++c) {
              const int gi = mech_dof[c * 6 + 3 + a];  // upper-level nodes
              if (gi >= 0) load_h[gi] += loads.h.amplitude[c] * shv * l[a] * w;
            }
        }
      }

      for (int i = 0; i < 18; ++i) {
        const int gi = mech_dof[i];
        if (gi < 0) continue;
        for (int j = 0; j < 18; ++j) {
          const int gj = mech_dof[j];
          if (gj < 0) continue;
          if (Me(i, j) != 0.0) tM.emplace_back(gi, gj, Me(i, j));
          if (Ke(i, j) != 0.0) tK.emplace_back(gi, gj, Ke(i, j));
        }
        for (int j = 0; j < 6; ++j) {
          const int gj = th_dof[j];
          if (gj < 0) continue;
          if (Cte(i, j) != 0.0) {
            tCt.emplace_back(gi, gj, Cte(i, j));
            tC.emplace_back(gj, gi, Cte(i, j));
          }
        }
        load_f[gi] += fe(i);
      }
      for (int i = 0; i < 6; ++i) {
        const int gi = th_dof[i];
        if (gi < 0) continue;
        for (int j = 0; j < 6; ++j) {
          const int gj = th_dof[j];
          if (gj < 0) continue;
          if (Mte(i, j) != 0.0) tMt.emplace_back(gi, gj, Mte(i, j));
          if (Kte(i, j) != 0.0) tKt.emplace_back(gi, gj, Kte(i, j));
          if (Kze(i, j) != 0.0) tKz.emplace_back(gi, gj, Kze(i, j));
        }
        load_q[gi] += qe(i);
      }
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
  sys.K_th_z = build(sys.n_th, sys.n_th, tKz);

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

/// Average through the thickness, (1/2) int_{-1}^{1} dx3 by the composite
/// trapezoid rule on the layer grid. Input: one value per 3D node; output:
/// one value per base node.
inline VecX average_x3_nodal(const Mesh3D& mesh, const VecX& nodal3d) {
  const int nb = mesh.base.num_nodes();
  if (nodal3d.size() != mesh.num_nodes())
    fail(ErrorKind::ValidationError, "average_x3: field size does not match the prism mesh");
  VecX out = VecX::Zero(nb);
  for (int n = 0; n < nb; ++n) {
    double acc = 0.0;
    for (int lvl = 0; lvl <= mesh.layers; ++lvl) {
      const double wz = (lvl == 0   ? mesh.z[1] - mesh.z[0]
                         : lvl == mesh.layers ? mesh.z[mesh.layers] - mesh.z[mesh.layers - 1]
                                              : mesh.z[lvl + 1] - mesh.z[lvl - 1]) /
                        2.0;
      acc += wz * nodal3d[mesh.node_id(n, lvl)];
    }
    out[n] = 0.5 * acc;
  }
  return out;
}

/// Element-constant version for comparison with the P0 normal component:
/// the averaged nodal field evaluated at base-triangle centroids.
inline VecX average_x3_element(const Mesh3D& mesh, const VecX& nodal3d) {
  const VecX nodal = average_x3_nodal(mesh, nodal3d);
  VecX out = VecX::Zero(mesh.base.num_elements());
  for (int e = 0; e < mesh.base.num_elements(); ++e) {
    const auto& tri = mesh.base.triangles[e];
    out[e] = (nodal[tri[0]] + nodal[tri[1]] + nodal[tri[2]]) / 3.0;
  }
  return out;
}

/// Expand the constrained dof vector of one displacement component (or
/// the temperature) to a full nodal vector with zeros on the lateral face.
inline VecX expand_component3d(const Mesh3D& mesh, const DofMap3D& dofs, const VecX& dofvec,
                               int comp /* 0,1,2 for u_i, 3 for theta */) {
  VecX out = VecX::Zero(mesh.num_nodes());
  for (int n = 0; n < mesh.num_nodes(); ++n) {
    const int d = comp < 3 ? dofs.u_dof(comp, n) : dofs.th_dof(n);
    if (d >= 0) out[n] = dofvec[d];
  }
  return out;
}

}  // namespace shellthermo
