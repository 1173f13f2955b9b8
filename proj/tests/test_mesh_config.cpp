#include <catch2/catch_amalgamated.hpp>

#include <sstream>

#include "shellthermo/mesh.hpp"

using namespace shellthermo;

TEST_CASE("structured mesh generation") {
  const Mesh2D m = generate_mesh({0.0, 1.0, 0.0, 1.0}, 2, 2);
  CHECK(m.num_nodes() == 9);
  CHECK(m.num_elements() == 8);
  CHECK(m.num_boundary_nodes() == 8);
  for (int e = 0; e < m.num_elements(); ++e) CHECK(m.triangle_area(e) > 0.0);
  CHECK(m.h_max == Catch::Approx(std::sqrt(0.5)).epsilon(1e-14));
  CHECK_THROWS_AS(generate_mesh({0.0, 1.0, 0.0, 1.0}, 1, 3), ShellError);
}

TEST_CASE("mesh file round trip") {
  const Mesh2D m = generate_mesh({0.3, 1.2, 0.2, 1.4}, 3, 4);
  std::stringstream ss;
  write_mesh(m, ss);
  const Mesh2D r = read_mesh(ss);
  REQUIRE(r.num_nodes() == m.num_nodes());
  REQUIRE(r.num_elements() == m.num_elements());
  for (int i = 0; i < m.num_nodes(); ++i) {
    CHECK(r.nodes[i] == m.nodes[i]);
    CHECK(r.boundary[i] == m.boundary[i]);
  }
  CHECK(r.triangles == m.triangles);

  std::stringstream bad("nodes 2 elements 1\n0 0 1\n1 0 1\n0 1 5\n");
  CHECK_THROWS_AS(read_mesh(bad), ShellError);
}

TEST_CASE("point location on structured meshes") {
  const Mesh2D m = generate_mesh({0.0, 2.0, 0.0, 1.0}, 4, 4);
  Eigen::Vector3d bary;
  for (const Vec2 y : {Vec2{0.1, 0.1}, Vec2{1.9, 0.95}, Vec2{1.0, 0.5}}) {
    const int e = locate_point(m, y, bary);
    REQUIRE(e >= 0);
    REQUIRE(e < m.num_elements());
    const auto& tri = m.triangles[e];
    const Vec2 rec = bary[0] * m.nodes[tri[0]] + bary[1] * m.nodes[tri[1]] + bary[2] * m.nodes[tri[2]];
    CHECK((rec - y).norm() < 1e-13);
    CHECK(bary.minCoeff() > -1e-12);
  }
}

TEST_CASE("prismatic extrusion") {
  const Mesh2D base = generate_mesh({0.0, 1.0, 0.0, 1.0}, 2, 2);
  const Mesh3D m = extrude_mesh(base, 4);
  CHECK(m.num_nodes() == 9 * 5);
  CHECK(m.num_prisms() == 8 * 4);
  CHECK(m.z.front() == -1.0);
  CHECK(m.z.back() == 1.0);
  int lateral = 0, top = 0;
  for (int n = 0; n < m.num_nodes(); ++n) {
    lateral += m.on_lateral(n) ? 1 : 0;
    top += m.on_top(n) ? 1 : 0;
  }
  CHECK(lateral == 8 * 5);
  CHECK(top == 9);
  CHECK_THROWS_AS(extrude_mesh(base, 1), ShellError);
}
