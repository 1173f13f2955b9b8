#pragma once

#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseLU>

#include "shellthermo/errors.hpp"

namespace shellthermo {

using SpMat = Eigen::SparseMatrix<double>;
using VecX = Eigen::VectorXd;

enum class Scheme { Midpoint, Damped };

inline Scheme scheme_from_string(const std::string& s) {
  if (s == "midpoint") return Scheme::Midpoint;
  if (s == "damped") return Scheme::Damped;
  fail(ErrorKind::ValidationError, "unknown scheme '" + s + "' (expected midpoint or damped)");
}

/// Assembled Galerkin operators of the coupled problem
///   M xi'' + K xi - Ct zeta = F(t)
///   M_th zeta' + K_th zeta + C xi' = Q(t)
/// shared by the 2D membrane and the scaled 3D problem. Ct and C are the
/// same bilinear form assembled into the two equations; the energy
/// identity needs them to be exact transposes. Immutable after assembly.
struct SemiDiscreteSystem {
  int n_mech = 0;
  int n_th = 0;
  SpMat M, K;      // n_mech x n_mech, symmetric
  SpMat Ct;        // n_mech x n_th   (mechanical equation, sign -Ct zeta)
  SpMat C;         // n_th x n_mech   (thermal equation, sign +C xi')
  SpMat M_th, K_th;  // n_th x n_th, symmetric
  SpMat K_th_z;    // transverse-only part of K_th (3D diagnostics; empty in 2D)

  // Separable loads: F(t) = sum_k time_k(t) * vec_k, same for Q.
  std::vector<std::pair<std::function<double(double)>, VecX>> mech_loads;
  std::vector<std::pair<std::function<double(double)>, VecX>> th_loads;

  VecX eval_F(double t) const {
    VecX F = VecX::Zero(n_mech);
    for (const auto& [tf, v] : mech_loads) F += tf(t) * v;
    return F;
  }
  VecX eval_Q(double t) const {
    VecX Q = VecX::Zero(n_th);
    for (const auto& [tf, v] : th_loads) Q += tf(t) * v;
    return Q;
  }
};

struct State {
  VecX xi;    // displacement dofs
  VecX v;     // velocity dofs
  VecX zeta;  // temperature dofs
  double t = 0.0;

  static State zero(const SemiDiscreteSystem& sys) {
    State s;
    s.xi = VecX::Zero(sys.n_mech);
    s.v = VecX::Zero(sys.n_mech);
    s.zeta = VecX::Zero(sys.n_th);
    return s;
  }
};

/// Discrete bookkeeping mirroring the a priori energy identity: kinetic,
/// elastic and thermal energy at time t plus the accumulated thermal
/// dissipation balance the accumulated load work. dissipated_z tracks the
/// transverse (1/eps^2) conduction channel of the 3D problem separately.
struct EnergyLedger {
  double kinetic = 0.0;
  double elastic = 0.0;
  double thermal = 0.0;
  double dissipated = 0.0;
  double work = 0.0;
  double dissipated_z = 0.0;

  double residual() const { return kinetic + elastic + thermal + dissipated - work; }
  double total_energy() const { return kinetic + elastic + thermal; }
};

/// Running time integrals accumulated by the stepper.
struct LedgerAccumulator {
  double dissipated = 0.0;
  double work = 0.0;
  double dissipated_z = 0.0;
};

inline EnergyLedger ledger_at(const SemiDiscreteSystem& sys, const State& s,
                              const LedgerAccumulator& acc = {}) {
  EnergyLedger e;
  e.kinetic = 0.5 * s.v.dot(sys.M * s.v);
  e.elastic = 0.5 * s.xi.dot(sys.K * s.xi);
  e.thermal = 0.5 * s.zeta.dot(sys.M_th * s.zeta);
  e.dissipated = acc.dissipated;
  e.work = acc.work;
  e.dissipated_z = acc.dissipated_z;
  return e;
}

/// Monolithic implicit one-step integrator. The midpoint scheme solves
/// for the midpoint velocity w and temperature th:
///   [(2/dt) M + (dt/2) K] w        - Ct th = (2/dt) M v_n - K xi_n + F(t+dt/2)
///   C w + [(2/dt) M_th + K_th] th          = (2/dt) M_th z_n + Q(t+dt/2)
/// then xi_{n+1} = xi_n + dt w, v_{n+1} = 2w - v_n, z_{n+1} = 2 th - z_n,
/// which reproduces the continuous energy identity exactly up to solver
/// roundoff. The damped scheme is backward Euler on both fields.
class TimeStepper {
public:
  TimeStepper(const SemiDiscreteSystem& sys, double dt, Scheme scheme)
      : sys_(sys), dt_(dt), scheme_(scheme) {
    if (!(dt > 0.0)) fail(ErrorKind::ValidationError, "time step must be > 0");
    const int n = sys.n_mech + sys.n_th;
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(sys.M.nonZeros() + sys.K.nonZeros() + 2 * sys.C.nonZeros() +
                 sys.M_th.nonZeros() + sys.K_th.nonZeros());
    const double am = scheme == Scheme::Midpoint ? 2.0 / dt : 1.0 / dt;
    const double ak = scheme == Scheme::Midpoint ? dt / 2.0 : dt;
    const double at = scheme == Scheme::Midpoint ? 2.0 / dt : 1.0 / dt;
    append(trip, sys.M, 0, 0, am);
    append(trip, sys.K, 0, 0, ak);
    append(trip, sys.Ct, 0, sys.n_mech, -1.0);
    append(trip, sys.C, sys.n_mech, 0, 1.0);
    append(trip, sys.M_th, sys.n_mech, sys.n_mech, at);
    append(trip, sys.K_th, sys.n_mech, sys.n_mech, 1.0);
    SpMat A(n, n);
    A.setFromTriplets(trip.begin(), trip.end());
    A.makeCompressed();
    lu_.compute(A);
    if (lu_.info() != Eigen::Success)
      fail(ErrorKind::SolveFailure, "time-step operator factorization failed (singular system)");
  }

  double dt() const { return dt_; }
  Scheme scheme() const { return scheme_; }

  /// Advance one step in place; accumulates dissipation and work.
  void step(State& s, LedgerAccumulator& acc) const {
    const int nm = sys_.n_mech, nt = sys_.n_th;
    VecX rhs(nm + nt);
    if (scheme_ == Scheme::Midpoint) {
      const double tm = s.t + 0.5 * dt_;
      const VecX F = sys_.eval_F(tm);
      const VecX Q = sys_.eval_Q(tm);
      rhs.head(nm) = (2.0 / dt_) * (sys_.M * s.v) - sys_.K * s.xi + F;
      rhs.tail(nt) = (2.0 / dt_) * (sys_.M_th * s.zeta) + Q;
      const VecX sol = solve(rhs);
      const VecX w = sol.head(nm);
      const VecX th = sol.tail(nt);
      s.xi += dt_ * w;
      s.v = 2.0 * w - s.v;
      s.zeta = 2.0 * th - s.zeta;
      acc.dissipated += dt_ * th.dot(sys_.K_th * th);
      acc.work += dt_ * (F.dot(w) + Q.dot(th));
      if (sys_.K_th_z.nonZeros() > 0) acc.dissipated_z += dt_ * th.dot(sys_.K_th_z * th);
    } else {
      const double te = s.t + dt_;
      const VecX F = sys_.eval_F(te);
      const VecX Q = sys_.eval_Q(te);
      rhs.head(nm) = (1.0 / dt_) * (sys_.M * s.v) - sys_.K * s.xi + F;
      rhs.tail(nt) = (1.0 / dt_) * (sys_.M_th * s.zeta) + Q;
      const VecX sol = solve(rhs);
      const VecX v1 = sol.head(nm);
      const VecX th1 = sol.tail(nt);
      s.xi += dt_ * v1;
      s.v = v1;
      s.zeta = th1;
      acc.dissipated += dt_ * th1.dot(sys_.K_th * th1);
      acc.work += dt_ * (F.dot(v1) + Q.dot(th1));
      if (sys_.K_th_z.nonZeros() > 0) acc.dissipated_z += dt_ * th1.dot(sys_.K_th_z * th1);
    }
    s.t += dt_;
  }

private:
  VecX solve(const VecX& rhs) const {
    VecX sol = lu_.solve(rhs);
    if (lu_.info() != Eigen::Success)
      fail(ErrorKind::SolveFailure, "time-step linear solve failed");
    return sol;
  }

  static void append(std::vector<Eigen::Triplet<double>>& trip, const SpMat& m, int r0, int c0,
                     double scale) {
    for (int k = 0; k < m.outerSize(); ++k)
      for (SpMat::InnerIterator it(m, k); it; ++it)
        if (it.value() != 0.0) trip.emplace_back(r0 + int(it.row()), c0 + int(it.col()),
                                                 scale * it.value());
  }

  const SemiDiscreteSystem& sys_;
  double dt_;
  Scheme scheme_;
  Eigen::SparseLU<SpMat> lu_;
};

struct TrajectorySample {
  State state;
  EnergyLedger ledger;
};

struct Trajectory {
  std::vector<TrajectorySample> samples;  // includes the initial state
  double dt = 0.0;
  int stride = 1;

  const TrajectorySample& at_time(double t) const {
    if (samples.empty()) fail(ErrorKind::InsufficientData, "trajectory is empty");
    std::size_t best = 0;
    double err = std::abs(samples[0].state.t - t);
    for (std::size_t i = 1; i < samples.size(); ++i) {
      const double e = std::abs(samples[i].state.t - t);
      if (e < err) {
        err = e;
        best = i;
      }
    }
    return samples[best];
  }
};

/// March the system from the homogeneous initial state, recording every
/// stride-th step (and the final one).
inline Trajectory simulate(const SemiDiscreteSystem& sys, double T, double dt, Scheme scheme,
                           int stride = 1) {
  if (!(T > 0.0) || !(dt > 0.0) || !(dt < T))
    fail(ErrorKind::ValidationError, "simulate: need 0 < dt < T");
  if (stride < 1) stride = 1;
  const int n_steps = static_cast<int>(std::llround(T / dt));
  TimeStepper stepper(sys, dt, scheme);
  State s = State::zero(sys);
  LedgerAccumulator acc;

  Trajectory traj;
  traj.dt = dt;
  traj.stride = stride;
  traj.samples.push_back({s, ledger_at(sys, s, acc)});
  for (int n = 0; n < n_steps; ++n) {
    stepper.step(s, acc);
    if ((n + 1) % stride == 0 || n + 1 == n_steps)
      traj.samples.push_back({s, ledger_at(sys, s, acc)});
  }
  return traj;
}

/// Dense classical RK4 reference integrator; test oracle only. Converts
/// the semi-discrete system to explicit first-order form with dense
/// factorizations of M and M_th.
inline Trajectory oracle_solve(const SemiDiscreteSystem& sys, double T, double dt_fine,
                               int stride = 1) {
  const int nm = sys.n_mech, nt = sys.n_th;
  if (nm + nt > 400)
    fail(ErrorKind::SizeExceeded, "oracle_solve: dense oracle limited to 400 dofs, got " +
                                      std::to_string(nm + nt));
  if (!(T > 0.0) || !(dt_fine > 0.0))
    fail(ErrorKind::ValidationError, "oracle_solve: need positive T and dt");
  const Eigen::MatrixXd Md = Eigen::MatrixXd(sys.M);
  const Eigen::MatrixXd Kd = Eigen::MatrixXd(sys.K);
  const Eigen::MatrixXd Ctd = Eigen::MatrixXd(sys.Ct);
  const Eigen::MatrixXd Cd = Eigen::MatrixXd(sys.C);
  const Eigen::MatrixXd Mtd = Eigen::MatrixXd(sys.M_th);
  const Eigen::MatrixXd Ktd = Eigen::MatrixXd(sys.K_th);
  const Eigen::LLT<Eigen::MatrixXd> Mllt(Md);
  const Eigen::LLT<Eigen::MatrixXd> Mtllt(Mtd);
  if (Mllt.info() != Eigen::Success || Mtllt.info() != Eigen::Success)
    fail(ErrorKind::SolveFailure, "oracle_solve: mass matrices not SPD");

  const auto deriv = [&](double t, const VecX& v, const VecX& xi, const VecX& z, VecX& dv,
                         VecX& dxi, VecX& dz) {
    dv = Mllt.solve(-(Kd * xi) + Ctd * z + sys.eval_F(t));
    dxi = v;
    dz = Mtllt.solve(-(Ktd * z) - Cd * v + sys.eval_Q(t));
  };

  const int n_steps = static_cast<int>(std::llround(T / dt_fine));
  State s = State::zero(sys);
  Trajectory traj;
  traj.dt = dt_fine;
  traj.stride = stride;
  traj.samples.push_back({s, ledger_at(sys, s)});

  VecX k1v(nm), k1x(nm), k1z(nt), k2v(nm), k2x(nm), k2z(nt);
  VecX k3v(nm), k3x(nm), k3z(nt), k4v(nm), k4x(nm), k4z(nt);
  for (int n = 0; n < n_steps; ++n) {
    const double t = s.t;
    const double h = dt_fine;
    deriv(t, s.v, s.xi, s.zeta, k1v, k1x, k1z);
    deriv(t + 0.5 * h, s.v + 0.5 * h * k1v, s.xi + 0.5 * h * k1x, s.zeta + 0.5 * h * k1z, k2v,
          k2x, k2z);
    deriv(t + 0.5 * h, s.v + 0.5 * h * k2v, s.xi + 0.5 * h * k2x, s.zeta + 0.5 * h * k2z, k3v,
          k3x, k3z);
    deriv(t + h, s.v + h * k3v, s.xi + h * k3x, s.zeta + h * k3z, k4v, k4x, k4z);
    s.v += (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    s.xi += (h / 6.0) * (k1x + 2.0 * k2x + 2.0 * k3x + k4x);
    s.zeta += (h / 6.0) * (k1z + 2.0 * k2z + 2.0 * k3z + k4z);
    s.t = t + h;
    if ((n + 1) % stride == 0 || n + 1 == n_steps)
      traj.samples.push_back({s, ledger_at(sys, s)});
  }
  return traj;
}

}  // namespace shellthermo
