#pragma once

#include <array>
#include <cmath>

#include <Eigen/Dense>

#include "shellthermo/geometry.hpp"
#include "shellthermo/materials.hpp"

namespace shellthermo {

/// Dense fourth-order tensor with D in {2,3} index range; value semantics,
/// components stored contravariantly.
template <int D>
struct Tensor4 {
  std::array<double, D * D * D * D> c{};

  double& operator()(int i, int j, int k, int l) {
    return c[((i * D + j) * D + k) * D + l];
  }
  double operator()(int i, int j, int k, int l) const {
    return c[((i * D + j) * D + k) * D + l];
  }

  double max_abs() const {
    double m = 0.0;
    for (double v : c) m = std::max(m, std::abs(v));
    return m;
  }

  Tensor4<D> operator-(const Tensor4<D>& o) const {
    Tensor4<D> r;
    for (std::size_t i = 0; i < c.size(); ++i) r.c[i] = c[i] - o.c[i];
    return r;
  }
};

using Tensor4_2D = Tensor4<2>;
using Tensor4_3D = Tensor4<3>;

/// Two-dimensional membrane elasticity tensor
///   a^{abst} = 4 lambda mu / (lambda + 2 mu) a^{ab} a^{st}
///            + 2 mu (a^{as} a^{bt} + a^{at} a^{bs}).
inline Tensor4_2D membrane_tensor(const Mat2& a_upper, const MaterialParams& m) {
  const double c1 = 4.0 * m.lambda * m.mu / (m.lambda + 2.0 * m.mu);
  Tensor4_2D t;
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int s = 0; s < 2; ++s)
        for (int tau = 0; tau < 2; ++tau)
          t(a, b, s, tau) = c1 * a_upper(a, b) * a_upper(s, tau) +
                            2.0 * m.mu * (a_upper(a, s) * a_upper(b, tau) +
                                          a_upper(a, tau) * a_upper(b, s));
  return t;
}

inline Tensor4_2D membrane_tensor(const GeometryFrame& f, const MaterialParams& m) {
  return membrane_tensor(f.a_upper, m);
}

/// A^{ijkl} = lambda g^{ij} g^{kl} + mu (g^{ik} g^{jl} + g^{il} g^{jk})
/// for any 3x3 contravariant metric; used for both A(eps) and A(0).
inline Tensor4_3D elasticity_tensor3d(const Mat3& g_upper, const MaterialParams& m) {
  Tensor4_3D t;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l)
          t(i, j, k, l) = m.lambda * g_upper(i, j) * g_upper(k, l) +
                          m.mu * (g_upper(i, k) * g_upper(j, l) +
                                  g_upper(i, l) * g_upper(j, k));
  return t;
}

/// eps -> 0 limit of the scaled elasticity tensor: the metric degenerates
/// to diag(a^{ab}, 1), which reproduces the closed forms
/// A^{abst}(0), A^{ab33}(0) = lambda a^{ab}, A^{a3s3}(0) = mu a^{as},
/// A^{3333}(0) = lambda + 2 mu and the null families.
inline Tensor4_3D limit_tensor3d(const GeometryFrame& f, const MaterialParams& m) {
  Mat3 g0 = Mat3::Zero();
  g0.topLeftCorner<2, 2>() = f.a_upper;
  g0(2, 2) = 1.0;
  return elasticity_tensor3d(g0, m);
}

/// Symmetry classes expected of the elasticity tensors; violation beyond
/// tol aborts the eigenvalue estimate.
template <int D>
inline void check_tensor_symmetries(const Tensor4<D>& t, double tol = 1e-10) {
  const double scale = std::max(1.0, t.max_abs());
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j)
      for (int k = 0; k < D; ++k)
        for (int l = 0; l < D; ++l) {
          const double v = t(i, j, k, l);
          if (std::abs(v - t(j, i, k, l)) > tol * scale ||
              std::abs(v - t(i, j, l, k)) > tol * scale ||
              std::abs(v - t(k, l, i, j)) > tol * scale)
            fail(ErrorKind::SymmetryViolation, "fourth-order tensor breaks minor/major symmetry");
        }
}

namespace detail {

// Orthonormal basis of Sym(D) under the Frobenius product: unit diagonal
// matrices then (E_ij + E_ji)/sqrt(2) off-diagonal pairs.
template <int D>
inline constexpr int sym_dim() { return D * (D + 1) / 2; }

template <int D>
inline std::array<std::pair<int, int>, sym_dim<D>()> sym_index_pairs() {
  std::array<std::pair<int, int>, sym_dim<D>()> p{};
  int n = 0;
  for (int i = 0; i < D; ++i) p[n++] = {i, i};
  for (int i = 0; i < D; ++i)
    for (int j = i + 1; j < D; ++j) p[n++] = {i, j};
  return p;
}

}  // namespace detail

/// Matrix of the tensor viewed as a linear operator on symmetric DxD
/// matrices, expressed in the orthonormal (sqrt-2 scaled) Voigt basis.
/// Its eigenvalues equal the operator eigenvalues; the smallest one is the
/// reciprocal of the paper-style ellipticity constant at that point.
template <int D>
inline Eigen::Matrix<double, detail::sym_dim<D>(), detail::sym_dim<D>()> voigt_matrix(
    const Tensor4<D>& t) {
  constexpr int N = detail::sym_dim<D>();
  const auto pairs = detail::sym_index_pairs<D>();
  Eigen::Matrix<double, N, N> M;
  const double s2 = std::sqrt(2.0);
  for (int I = 0; I < N; ++I)
    for (int J = 0; J < N; ++J) {
      const auto [i, j] = pairs[I];
      const auto [k, l] = pairs[J];
      double v = t(i, j, k, l);
      if (i != j) v *= s2;
      if (k != l) v *= s2;
      M(I, J) = v;
    }
  return M;
}

template <int D>
inline double ellipticity_estimate(const Tensor4<D>& t) {
  check_tensor_symmetries(t);
  const auto M = voigt_matrix(t);
  Eigen::SelfAdjointEigenSolver<std::decay_t<decltype(M)>> es(M);
  return es.eigenvalues().minCoeff();
}

}  // namespace shellthermo
