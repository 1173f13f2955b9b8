#pragma once

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "shellthermo/charts.hpp"
#include "shellthermo/errors.hpp"

namespace shellthermo {

/// Conforming triangulation of the parameter rectangle. Triangles are
/// positively oriented; boundary nodes carry a flag.
struct Mesh2D {
  std::vector<Vec2> nodes;
  std::vector<std::array<int, 3>> triangles;
  std::vector<bool> boundary;  // per node
  double h_max = 0.0;

  // Set for structured meshes; enables direct point location.
  int n1 = 0, n2 = 0;
  Rect domain;

  int num_nodes() const { return static_cast<int>(nodes.size()); }
  int num_elements() const { return static_cast<int>(triangles.size()); }

  int num_boundary_nodes() const {
    int n = 0;
    for (bool b : boundary) n += b ? 1 : 0;
    return n;
  }

  double triangle_area(int e) const {
    const auto& t = triangles[e];
    const Vec2 d1 = nodes[t[1]] - nodes[t[0]];
    const Vec2 d2 = nodes[t[2]] - nodes[t[0]];
    return 0.5 * (d1[0] * d2[1] - d1[1] * d2[0]);
  }
};

/// Structured triangulation of rect with (n1 x n2) cells, each split
/// along the (+1,+1) diagonal: 2 n1 n2 triangles, (n1+1)(n2+1) nodes.
inline Mesh2D generate_mesh(const Rect& rect, int n1, int n2) {
  if (n1 < 2 || n2 < 2)
    fail(ErrorKind::ValidationError, "generate_mesh: resolution must be at least 2x2");
  Mesh2D m;
  m.n1 = n1;
  m.n2 = n2;
  m.domain = rect;
  const double hx = rect.extent1() / n1;
  const double hy = rect.extent2() / n2;
  m.nodes.reserve((n1 + 1) * (n2 + 1));
  m.boundary.reserve((n1 + 1) * (n2 + 1));
  for (int j = 0; j <= n2; ++j)
    for (int i = 0; i <= n1; ++i) {
      m.nodes.push_back({rect.y1_min + i * hx, rect.y2_min + j * hy});
      m.boundary.push_back(i == 0 || i == n1 || j == 0 || j == n2);
    }
  const auto id = [n1](int i, int j) { return j * (n1 + 1) + i; };
  m.triangles.reserve(2 * n1 * n2);
  for (int j = 0; j < n2; ++j)
    for (int i = 0; i < n1; ++i) {
      // lower-left and upper-right triangles of the cell
      m.triangles.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      m.triangles.push_back({id(i, j), id(i + 1, j + 1), id(i, j + 1)});
    }
  m.h_max = std::sqrt(hx * hx + hy * hy);
  return m;
}

/// Plain-text mesh format: header "nodes N elements M", then N lines
/// "y1 y2 boundary_flag", then M lines "i j k" (0-based node indices).
inline Mesh2D read_mesh(std::istream& in) {
  Mesh2D m;
  std::string kw1, kw2;
  int n = 0, e = 0;
  if (!(in >> kw1 >> n >> kw2 >> e) || kw1 != "nodes" || kw2 != "elements")
    fail(ErrorKind::ParseError, "mesh: expected header 'nodes N elements M'");
  m.nodes.resize(n);
  m.boundary.resize(n);
  for (int i = 0; i < n; ++i) {
    int flag = 0;
    if (!(in >> m.nodes[i][0] >> m.nodes[i][1] >> flag))
      fail(ErrorKind::ParseError, "mesh: bad node line " + std::to_string(i));
    m.boundary[i] = flag != 0;
  }
  m.triangles.resize(e);
  for (int t = 0; t < e; ++t) {
    auto& tri = m.triangles[t];
    if (!(in >> tri[0] >> tri[1] >> tri[2]))
      fail(ErrorKind::ParseError, "mesh: bad element line " + std::to_string(t));
    for (int v : tri)
      if (v < 0 || v >= n)
        fail(ErrorKind::ValidationError, "mesh: node index out of range in element " +
                                             std::to_string(t));
  }
  double y1min = 1e300, y1max = -1e300, y2min = 1e300, y2max = -1e300;
  for (const auto& p : m.nodes) {
    y1min = std::min(y1min, p[0]);
    y1max = std::max(y1max, p[0]);
    y2min = std::min(y2min, p[1]);
    y2max = std::max(y2max, p[1]);
  }
  m.domain = {y1min, y1max, y2min, y2max};
  for (int t = 0; t < e; ++t) {
    if (m.triangle_area(t) <= 0.0)
      fail(ErrorKind::ValidationError, "mesh: non-positive orientation in element " +
                                           std::to_string(t));
    const auto& tri = m.triangles[t];
    for (int a = 0; a < 3; ++a) {
      const double len = (m.nodes[tri[a]] - m.nodes[tri[(a + 1) % 3]]).norm();
      m.h_max = std::max(m.h_max, len);
    }
  }
  return m;
}

inline Mesh2D read_mesh_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::IoError, "cannot open mesh file '" + path + "'");
  return read_mesh(in);
}

inline void write_mesh(const Mesh2D& m, std::ostream& out) {
  out << "nodes " << m.num_nodes() << " elements " << m.num_elements() << "\n";
  char buf[80];
  for (int i = 0; i < m.num_nodes(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %d\n", m.nodes[i][0], m.nodes[i][1],
                  m.boundary[i] ? 1 : 0);
    out << buf;
  }
  for (const auto& t : m.triangles) out << t[0] << " " << t[1] << " " << t[2] << "\n";
}

/// Locate the triangle containing y in a structured mesh and return its
/// index plus barycentric coordinates. Points are clamped to the domain.
inline int locate_point(const Mesh2D& m, const Vec2& y, Eigen::Vector3d& bary) {
  if (m.n1 <= 0 || m.n2 <= 0)
    fail(ErrorKind::ValidationError, "locate_point requires a structured mesh");
  const double hx = m.domain.extent1() / m.n1;
  const double hy = m.domain.extent2() / m.n2;
  const double sx = (y[0] - m.domain.y1_min) / hx;
  const double sy = (y[1] - m.domain.y2_min) / hy;
  const int i = std::min(m.n1 - 1, std::max(0, static_cast<int>(std::floor(sx))));
  const int j = std::min(m.n2 - 1, std::max(0, static_cast<int>(std::floor(sy))));
  const double fx = sx - i, fy = sy - j;
  // Cell split along the (+1,+1) diagonal; lower triangle has fy <= fx.
  const int e = 2 * (j * m.n1 + i) + (fy <= fx ? 0 : 1);
  const auto& t = m.triangles[e];
  const Vec2& p0 = m.nodes[t[0]];
  const Vec2& p1 = m.nodes[t[1]];
  const Vec2& p2 = m.nodes[t[2]];
  const double det = (p1 - p0)[0] * (p2 - p0)[1] - (p1 - p0)[1] * (p2 - p0)[0];
  const double l1 = ((y - p0)[0] * (p2 - p0)[1] - (y - p0)[1] * (p2 - p0)[0]) / det;
  const double l2 = ((p1 - p0)[0] * (y - p0)[1] - (p1 - p0)[1] * (y - p0)[0]) / det;
  bary = {1.0 - l1 - l2, l1, l2};
  return e;
}

/// Prismatic extrusion of a base triangulation over (-1, 1): `layers`
/// vertical intervals, nodes stacked level-major. The lateral face
/// gamma x [-1,1] is the Dirichlet part, the top face omega x {1} is
/// Gamma_N.
struct Mesh3D {
  Mesh2D base;
  int layers = 0;
  std::vector<double> z;  // layer coordinates, size layers+1, z[0] = -1, z[layers] = 1

  int num_nodes() const { return base.num_nodes() * (layers + 1); }
  int num_prisms() const { return base.num_elements() * layers; }

  int node_id(int base_node, int level) const { return level * base.num_nodes() + base_node; }
  int base_of(int node) const { return node % base.num_nodes(); }
  int level_of(int node) const { return node / base.num_nodes(); }

  bool on_lateral(int node) const { return base.boundary[base_of(node)]; }
  bool on_top(int node) const { return level_of(node) == layers; }
};

inline Mesh3D extrude_mesh(const Mesh2D& base, int layers) {
  if (layers < 2) fail(ErrorKind::ValidationError, "extrude_mesh: layers must be >= 2");
  Mesh3D m;
  m.base = base;
  m.layers = layers;
  m.z.resize(layers + 1);
  for (int l = 0; l <= layers; ++l) m.z[l] = -1.0 + 2.0 * double(l) / layers;
  return m;
}

}  // namespace shellthermo
