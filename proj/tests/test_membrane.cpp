#include <catch2/catch_amalgamated.hpp>

#include "shellthermo/assemble2d.hpp"

using namespace shellthermo;

namespace {

MaterialParams unit_material() {
  MaterialParams m;
  m.rho = 1.0;
  m.lambda = 1.0;
  m.mu = 1.0;
  m.alpha_T = 0.1;
  m.k = 1.0;
  m.beta = 1.0;
  return m;
}

std::shared_ptr<const Chart> sphere_chart() { return std::make_shared<SphereCapChart>(1.0); }
std::shared_ptr<const Chart> plane_chart() { return std::make_shared<PlaneChart>(); }

AssemblyOptions quiet(bool dirichlet = true, bool coupling = true) {
  AssemblyOptions o;
  o.apply_dirichlet = dirichlet;
  o.include_coupling = coupling;
  o.check_ellipticity = false;
  return o;
}

}  // namespace

TEST_CASE("strain_gamma closed-form values") {
  const GeometryFrame flat = eval_frame(*plane_chart(), {0.5, 0.5});

  SECTION("constant field on the flat chart") {
    const Mat2 grad = Mat2::Zero();
    CHECK(strain_gamma(flat, grad, {0.3, -0.7}, 2.0).isZero(0.0));
  }
  SECTION("eta = (y1, 0, 0) on the flat chart") {
    Mat2 grad = Mat2::Zero();
    grad(0, 0) = 1.0;  // d_1 eta_1 = 1
    const Mat2 g = strain_gamma(flat, grad, {0.4, 0.0}, 0.0);
    CHECK(g(0, 0) == 1.0);
    CHECK(g(0, 1) == 0.0);
    CHECK(g(1, 1) == 0.0);
  }
  SECTION("normal displacement on the sphere gives -b_ab eta3") {
    const GeometryFrame f = eval_frame(*sphere_chart(), {0.8, 0.6});
    const double eta3 = 1.7;
    const Mat2 g = strain_gamma(f, Mat2::Zero(), Vec2::Zero(), eta3);
    CHECK((g + eta3 * f.b_lower).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("single-triangle stiffness matches a hand assembly") {
  // One positively oriented unit right triangle; no boundary conditions so
  // the raw element matrix is visible. Flat chart, lambda = mu = 1: the
  // strain has constant B and the element matrix is area * B^T D B.
  Mesh2D mesh;
  mesh.nodes = {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  mesh.boundary = {true, true, true};
  mesh.triangles = {{0, 1, 2}};
  mesh.h_max = std::sqrt(2.0);
  mesh.domain = {0.0, 1.0, 0.0, 1.0};

  const MaterialParams mat = unit_material();
  const MembraneSystem ms =
      assemble_membrane(mesh, plane_chart(), mat, {}, quiet(/*dirichlet=*/false));

  // independent dense assembly: gamma rows (g11, g22, g12) per dof
  // [eta1 at 3 nodes | eta2 at 3 nodes | eta3]; P1 gradients of the unit
  // triangle are (-1,-1), (1,0), (0,1); eta3 does not strain a flat chart.
  Eigen::Matrix<double, 3, 7> B = Eigen::Matrix<double, 3, 7>::Zero();
  const double gx[3] = {-1.0, 1.0, 0.0};
  const double gy[3] = {-1.0, 0.0, 1.0};
  for (int a = 0; a < 3; ++a) {
    B(0, a) = gx[a];
    B(2, a) = 0.5 * gy[a];
    B(1, 3 + a) = gy[a];
    B(2, 3 + a) = 0.5 * gx[a];
  }
  Mat3 D;
  D << 16.0 / 3.0, 4.0 / 3.0, 0.0,
       4.0 / 3.0, 16.0 / 3.0, 0.0,
       0.0, 0.0, 8.0;
  const Eigen::MatrixXd K_hand = 0.5 * B.transpose() * D * B;

  const Eigen::MatrixXd K = Eigen::MatrixXd(ms.sys.K);
  REQUIRE(K.rows() == 7);
  CHECK((K - K_hand).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("assembled operators have the stated structure") {
  const Mesh2D mesh = generate_mesh({0.3, 1.2, 0.2, 1.4}, 5, 5);
  const MaterialParams mat = unit_material();
  const MembraneSystem ms = assemble_membrane(mesh, sphere_chart(), mat, {}, quiet());
  const auto& sys = ms.sys;

  SECTION("dof bookkeeping") {
    CHECK(ms.dofs.n_p1 == 16);             // interior nodes of a 6x6 grid
    CHECK(ms.dofs.n_elem == 50);
    CHECK(sys.n_mech == 2 * 16 + 50);
    CHECK(sys.n_th == 16);
  }

  SECTION("M, M_th SPD; K SPD on the constrained space; K_th SPD") {
    const Eigen::MatrixXd M = Eigen::MatrixXd(sys.M);
    const Eigen::MatrixXd K = Eigen::MatrixXd(sys.K);
    const Eigen::MatrixXd Mt = Eigen::MatrixXd(sys.M_th);
    const Eigen::MatrixXd Kt = Eigen::MatrixXd(sys.K_th);
    CHECK((M - M.transpose()).cwiseAbs().maxCoeff() < 1e-14);
    CHECK((K - K.transpose()).cwiseAbs().maxCoeff() < 1e-13);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> esM(M), esK(K), esMt(Mt), esKt(Kt);
    CHECK(esM.eigenvalues().minCoeff() > 0.0);
    CHECK(esK.eigenvalues().minCoeff() > 0.0);  // Korn-type inequality on the elliptic cap
    CHECK(esMt.eigenvalues().minCoeff() > 0.0);
    CHECK(esKt.eigenvalues().minCoeff() > 0.0);
  }

  SECTION("coupling blocks are exact transposes") {
    const Eigen::MatrixXd Ct = Eigen::MatrixXd(sys.Ct);
    const Eigen::MatrixXd C = Eigen::MatrixXd(sys.C);
    CHECK((Ct - C.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(Ct.cwiseAbs().maxCoeff() > 0.0);
  }

  SECTION("mass-norm equivalence with the Euclidean nodal norm") {
    const Eigen::MatrixXd M = Eigen::MatrixXd(sys.M);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(M);
    const double cond = es.eigenvalues().maxCoeff() / es.eigenvalues().minCoeff();
    CHECK(cond > 0.0);
    CHECK(cond < 1e6);
  }

  SECTION("alpha_T = 0 decouples the blocks") {
    MaterialParams m0 = unit_material();
    m0.alpha_T = 0.0;
    const MembraneSystem dec = assemble_membrane(mesh, sphere_chart(), m0, {}, quiet());
    CHECK(Eigen::MatrixXd(dec.sys.Ct).cwiseAbs().maxCoeff() == 0.0);
    CHECK(Eigen::MatrixXd(dec.sys.C).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("non-elliptic chart triggers a warning, not an error") {
  const Mesh2D mesh = generate_mesh({0.0, 1.0, 0.0, 1.0}, 4, 4);
  AssemblyOptions opts;  // ellipticity check on
  const MembraneSystem ms = assemble_membrane(mesh, plane_chart(), unit_material(), {}, opts);
  CHECK_FALSE(ms.warnings.empty());
  const MembraneSystem ok = assemble_membrane(generate_mesh({0.3, 1.2, 0.2, 1.4}, 4, 4),
                                              sphere_chart(), unit_material(), {}, opts);
  CHECK(ok.warnings.empty());
}

TEST_CASE("boundary dofs stay exactly zero through a run") {
  const Mesh2D mesh = generate_mesh({0.3, 1.2, 0.2, 1.4}, 4, 4);
  LoadSpec loads;
  loads.f.amplitude = {0.0, 0.0, 1.0};
  loads.f.space = "bump";
  loads.f.time = "sine";
  loads.f.time_param = 5.0;
  loads.q.amplitude[0] = 0.5;
  loads.q.space = "bump";
  loads.q.time = "constant";
  const MembraneSystem ms = assemble_membrane(mesh, sphere_chart(), unit_material(), loads, quiet());
  const Trajectory traj = simulate(ms.sys, 0.2, 0.02, Scheme::Midpoint, 1);
  // constrained dofs are not assembled, so probing any boundary point
  // must interpolate to zero for xi_alpha and zeta
  for (const auto& sample : traj.samples) {
    const auto vals = probe_membrane(ms, sample.state, {0.3, 0.9});
    CHECK(vals[0] == 0.0);
    CHECK(vals[1] == 0.0);
    CHECK(vals[3] == 0.0);
  }
}
