#pragma once

#include <vector>

#include "shellthermo/mesh.hpp"

namespace shellthermo {

/// Discrete mimic of V_M(omega) x H^1_0(omega): continuous P1 for the
/// tangential displacements xi_alpha and the temperature zeta, both zero
/// on gamma; piecewise-constant P0 for the normal displacement xi_3 with
/// no boundary condition. Mechanical layout: [xi1 | xi2 | xi3].
struct DofMap2D {
  std::vector<int> node_dof;  // interior P1 index per node, -1 if constrained
  int n_p1 = 0;               // free P1 dofs per scalar field
  int n_elem = 0;
  bool dirichlet = true;

  int n_mech() const { return 2 * n_p1 + n_elem; }
  int n_th() const { return n_p1; }

  int xi_dof(int comp, int node) const {  // comp in {0,1}
    const int d = node_dof[node];
    return d < 0 ? -1 : comp * n_p1 + d;
  }
  int xi3_dof(int elem) const { return 2 * n_p1 + elem; }
  int th_dof(int node) const { return node_dof[node]; }

  static DofMap2D build(const Mesh2D& mesh, bool apply_dirichlet = true) {
    DofMap2D d;
    d.dirichlet = apply_dirichlet;
    d.node_dof.assign(mesh.num_nodes(), -1);
    for (int i = 0; i < mesh.num_nodes(); ++i)
      if (!apply_dirichlet || !mesh.boundary[i]) d.node_dof[i] = d.n_p1++;
    d.n_elem = mesh.num_elements();
    return d;
  }
};

/// All three displacement components and the temperature are continuous
/// P1 on the prism mesh, zero on the lateral face gamma x [-1,1].
/// Mechanical layout: [u1 | u2 | u3].
struct DofMap3D {
  std::vector<int> node_dof;  // free node index, -1 on the lateral face
  int n_free = 0;
  bool dirichlet = true;

  int n_mech() const { return 3 * n_free; }
  int n_th() const { return n_free; }

  int u_dof(int comp, int node) const {
    const int d = node_dof[node];
    return d < 0 ? -1 : comp * n_free + d;
  }
  int th_dof(int node) const { return node_dof[node]; }

  static DofMap3D build(const Mesh3D& mesh, bool apply_dirichlet = true) {
    DofMap3D d;
    d.dirichlet = apply_dirichlet;
    d.node_dof.assign(mesh.num_nodes(), -1);
    for (int i = 0; i < mesh.num_nodes(); ++i)
      if (!apply_dirichlet || !mesh.on_lateral(i)) d.node_dof[i] = d.n_free++;
    return d;
  }
};

}  // namespace shellthermo
