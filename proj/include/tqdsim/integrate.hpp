// Master-equation time integration. The density matrix is stacked column-major
// and propagated with an embedded Dormand-Prince 5(4) pair; for a constant
// generator the Liouvillian is built once and each stage is a single gemv.
// No trace renormalization anywhere: trace drift is a quality metric, and the
// generator annihilates the trace exactly so drift stays at rounding level.
#pragma once

#include <functional>
#include <limits>

#include "tqdsim/lindblad.hpp"

namespace tqdsim {

struct IntegrationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegratorOptions {
  double tol = 1e-9;    // local error per unit norm, used as atol and rtol
  double h_init = 0.0;  // 0 picks a starting step automatically
  double h_max = 0.0;   // 0 means unrestricted; pair with a huge tol for fixed-step studies
  long max_steps = 50000000;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<MatrixC> states;
  Eigen::MatrixXd populations;   // one row per sample, one column per basis state
  std::vector<double> fidelity;  // vs a fixed target state; empty when none given

  // quality metrics over all recorded samples
  double max_trace_drift = 0.0;  // max |tr rho - 1|
  double max_herm_drift = 0.0;   // max |rho - rho†|
  double min_eigenvalue = 0.0;   // most negative eigenvalue seen
  long n_steps = 0;
  long n_rejected = 0;
};

inline double state_fidelity(const MatrixC& rho_id, const MatrixC& rho_re) {
  if (rho_id.rows() != rho_re.rows() || rho_id.cols() != rho_re.cols())
    throw std::invalid_argument("state_fidelity: dimension mismatch");
  return std::real((rho_id * rho_re).trace());
}

inline double trace_distance(const MatrixC& a, const MatrixC& b) {
  Eigen::SelfAdjointEigenSolver<MatrixC> es((a - b).eval());
  return 0.5 * es.eigenvalues().cwiseAbs().sum();
}

inline void require_density_matrix(const MatrixC& rho, const char* what) {
  require_hermitian(rho, what, 1e-10);
  if (std::abs(std::real(rho.trace()) - 1.0) > 1e-8 ||
      std::abs(std::imag(rho.trace())) > 1e-10)
    throw ContractViolation(std::string(what) + ": trace is not 1");
  Eigen::SelfAdjointEigenSolver<MatrixC> es(rho, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-8)
    throw ContractViolation(std::string(what) + ": negative eigenvalue");
}

namespace detail {

// Dormand-Prince 5(4) tableau, FSAL
inline constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84}};
inline constexpr double kB5[7] = {35.0 / 384,     0.0,          500.0 / 1113, 125.0 / 192,
                                  -2187.0 / 6784, 11.0 / 84,    0.0};
inline constexpr double kB4[7] = {5179.0 / 57600,    0.0,         7571.0 / 16695, 393.0 / 640,
                                  -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace detail

using RhsFn = std::function<void(double t, const VectorC& y, VectorC& dy)>;

// Core stepper over an ascending sample grid. rho is recorded (with populations,
// quality metrics, and optionally fidelity vs *target) at every grid time; the
// adaptive step is clamped so each sample lands exactly.
inline Trajectory integrate_rhs(const MatrixC& rho0, const RhsFn& rhs,
                                const std::vector<double>& t_grid,
                                const IntegratorOptions& opt = {},
                                const MatrixC* target = nullptr) {
  require_density_matrix(rho0, "integrate");
  if (t_grid.size() < 2) throw std::invalid_argument("integrate: need at least two sample times");
  for (std::size_t i = 1; i < t_grid.size(); ++i)
    if (!(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("integrate: sample times must be strictly increasing");

  const Eigen::Index n = rho0.rows();
  const Eigen::Index nn = n * n;
  const double t_end = t_grid.back();
  const double t_span = t_end - t_grid.front();

  Trajectory traj;
  traj.times.reserve(t_grid.size());
  traj.states.reserve(t_grid.size());
  traj.populations.resize(static_cast<Eigen::Index>(t_grid.size()), n);
  if (target) traj.fidelity.reserve(t_grid.size());
  traj.min_eigenvalue = std::numeric_limits<double>::infinity();

  auto record = [&](double t, const VectorC& y) {
    MatrixC rho = Eigen::Map<const MatrixC>(y.data(), n, n);
    const Eigen::Index row = static_cast<Eigen::Index>(traj.times.size());
    for (Eigen::Index i = 0; i < n; ++i) traj.populations(row, i) = std::real(rho(i, i));
    traj.max_trace_drift = std::max(traj.max_trace_drift, std::abs(rho.trace() - cxd(1.0, 0.0)));
    traj.max_herm_drift = std::max(traj.max_herm_drift, max_abs(rho - rho.adjoint()));
    Eigen::SelfAdjointEigenSolver<MatrixC> es(((rho + rho.adjoint()) / 2.0).eval(),
                                              Eigen::EigenvaluesOnly);
    traj.min_eigenvalue = std::min(traj.min_eigenvalue, es.eigenvalues().minCoeff());
    if (target) traj.fidelity.push_back(state_fidelity(*target, rho));
    traj.times.push_back(t);
    traj.states.push_back(std::move(rho));
  };

  VectorC y = Eigen::Map<const VectorC>(rho0.data(), nn);
  double t = t_grid.front();
  record(t, y);

  VectorC k[7], y5(nn), yerr(nn), ytmp(nn);
  for (auto& ki : k) ki.resize(nn);
  rhs(t, y, k[0]);

  // starting step: either user-supplied or from the initial slope
  double h;
  if (opt.h_init > 0.0) {
    h = opt.h_init;
  } else {
    const double d0 = y.norm();
    const double d1 = k[0].norm();
    h = (d1 > 1e-300) ? 0.01 * std::max(d0, 1.0) / d1 : 1e-6 * t_span;
    h = std::min(h, 0.1 * t_span);
  }
  if (opt.h_max > 0.0) h = std::min(h, opt.h_max);

  std::size_t next = 1;
  bool fsal_valid = true;
  while (next < t_grid.size()) {
    if (traj.n_steps >= opt.max_steps)
      throw IntegrationError("integrate: step limit exceeded at t=" + std::to_string(t));
    const double t_sample = t_grid[next];
    double h_step = std::min(h, t_sample - t);
    const bool hits_sample = (h_step >= t_sample - t - 1e-14 * std::max(1.0, std::abs(t_sample)));
    if (hits_sample) h_step = t_sample - t;
    if (h_step <= 16.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t), t_span))
      throw IntegrationError("integrate: step size underflow at t=" + std::to_string(t) +
                             " after " + std::to_string(traj.n_steps) + " steps");

    if (!fsal_valid) rhs(t, y, k[0]);
    for (int s = 1; s < 7; ++s) {
      ytmp = y;
      for (int j = 0; j < s; ++j)
        if (detail::kA[s][j] != 0.0) ytmp += (h_step * detail::kA[s][j]) * k[j];
      rhs(t + detail::kC[s] * h_step, ytmp, k[s]);
    }
    y5 = y;
    yerr.setZero();
    for (int s = 0; s < 7; ++s) {
      if (detail::kB5[s] != 0.0) y5 += (h_step * detail::kB5[s]) * k[s];
      const double db = detail::kB5[s] - detail::kB4[s];
      if (db != 0.0) yerr += (h_step * db) * k[s];
    }

    double err = 0.0;
    for (Eigen::Index i = 0; i < nn; ++i) {
      const double sc = opt.tol * (1.0 + std::abs(y5(i)));
      const double e = std::abs(yerr(i)) / sc;
      err += e * e;
    }
    err = std::sqrt(err / static_cast<double>(nn));

    if (err <= 1.0) {
      t += h_step;
      y.swap(y5);
      k[0].swap(k[6]);  // FSAL
      fsal_valid = true;
      ++traj.n_steps;
      if (hits_sample) {
        t = t_sample;
        record(t, y);
        ++next;
      }
    } else {
      ++traj.n_rejected;
      fsal_valid = true;  // k[0] still belongs to (t, y)
    }
    const double grow = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
    h = h_step * std::min(5.0, std::max(0.2, grow));
    if (opt.h_max > 0.0) h = std::min(h, opt.h_max);
  }
  return traj;
}

// Constant Hamiltonian: prebuilt Liouvillian, one gemv per stage.
inline Trajectory integrate(const MatrixC& rho0, const MatrixC& h,
                            const std::vector<LindbladChannel>& channels,
                            const std::vector<double>& t_grid,
                            const IntegratorOptions& opt = {},
                            const MatrixC* target = nullptr) {
  require_hermitian(h, "integrate: Hamiltonian", 1e-12);
  const MatrixC sup = liouvillian(h, channels);
  RhsFn rhs = [&sup](double, const VectorC& y, VectorC& dy) { dy.noalias() = sup * y; };
  return integrate_rhs(rho0, rhs, t_grid, opt, target);
}

// Time-dependent Hamiltonian via generator callback; the dissipative part is
// still prebuilt, the commutator part is rebuilt per evaluation.
inline Trajectory integrate(const MatrixC& rho0, const std::function<MatrixC(double)>& h_of_t,
                            const std::vector<LindbladChannel>& channels,
                            const std::vector<double>& t_grid,
                            const IntegratorOptions& opt = {},
                            const MatrixC* target = nullptr) {
  const Eigen::Index n = rho0.rows();
  const MatrixC sup_d = liouvillian(MatrixC::Zero(n, n), channels);
  const MatrixC id = MatrixC::Identity(n, n);
  RhsFn rhs = [&](double t, const VectorC& y, VectorC& dy) {
    const MatrixC ht = h_of_t(t);
    const MatrixC sup =
        sup_d + cxd(0.0, -1.0) * (kron(id, ht) - kron(ht.transpose().eval(), id));
    dy.noalias() = sup * y;
  };
  return integrate_rhs(rho0, rhs, t_grid, opt, target);
}

inline std::vector<double> uniform_grid(double t0, double t1, int samples) {
  if (samples < 2) throw std::invalid_argument("uniform_grid: need at least two samples");
  std::vector<double> g(static_cast<std::size_t>(samples));
  for (int i = 0; i < samples; ++i)
    g[static_cast<std::size_t>(i)] = t0 + (t1 - t0) * static_cast<double>(i) / (samples - 1);
  g.back() = t1;
  return g;
}

}  // namespace tqdsim
