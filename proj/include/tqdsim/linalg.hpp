// Dense complex linear algebra helpers on top of Eigen: Kronecker products,
// Hermitian eigendecomposition with a fixed eigenvector phase convention, and
// unitary propagators by spectral decomposition. Sized for dim <= 16 systems;
// nothing here tries to be clever about large matrices.
#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include "tqdsim/units.hpp"

namespace tqdsim {

using cxd = std::complex<double>;

template <class Scalar>
using DenseMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;
template <class Scalar>
using DenseVector = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using MatrixC = DenseMatrix<double>;
using VectorC = DenseVector<double>;

// thrown when a caller hands in something that breaks a documented precondition
// (non-Hermitian "Hamiltonian", invalid density matrix, ...)
struct ContractViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <class D>
double max_abs(const Eigen::MatrixBase<D>& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

template <class DA, class DB>
auto kron(const Eigen::MatrixBase<DA>& a, const Eigen::MatrixBase<DB>& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

// ordered Kronecker product of a factor list (associative, grouping irrelevant)
inline MatrixC tensor(const std::vector<MatrixC>& ops) {
  if (ops.empty()) throw std::invalid_argument("tensor: empty factor list");
  MatrixC out = ops.front();
  for (std::size_t i = 1; i < ops.size(); ++i) out = kron(out, ops[i]);
  return out;
}

template <class D>
bool is_hermitian(const Eigen::MatrixBase<D>& a, double tol_rel = 1e-12) {
  const double scale = std::max(max_abs(a), 1e-300);
  return max_abs(a - a.adjoint()) <= tol_rel * scale;
}

template <class D>
void require_hermitian(const Eigen::MatrixBase<D>& a, const char* what,
                       double tol_rel = 1e-12) {
  if (!is_hermitian(a, tol_rel))
    throw ContractViolation(std::string(what) + ": matrix is not Hermitian");
}

template <class D>
bool is_unitary(const Eigen::MatrixBase<D>& u, double tol = 1e-10) {
  const Eigen::Index n = u.rows();
  return max_abs((u.adjoint() * u - MatrixC::Identity(n, n)).eval()) <= tol;
}

template <class D>
void require_unitary(const Eigen::MatrixBase<D>& u, const char* what,
                     double tol = 1e-10) {
  if (!is_unitary(u, tol))
    throw ContractViolation(std::string(what) + ": matrix is not unitary");
}

// Rotate each column so its largest-modulus entry is real and positive.
// Moduli within relative 1e-9 count as tied and the lowest index wins, so the
// numeric and closed-form eigenvector paths pick the same representative at
// symmetric points (exact ties land on different entries only through rounding).
inline void fix_eigenvector_phases(MatrixC& v) {
  for (Eigen::Index c = 0; c < v.cols(); ++c) {
    Eigen::Index best = 0;
    double best_mod = std::abs(v(0, c));
    for (Eigen::Index r = 1; r < v.rows(); ++r) {
      const double m = std::abs(v(r, c));
      if (m > best_mod * (1.0 + 1e-9)) {
        best = r;
        best_mod = m;
      }
    }
    if (best_mod == 0.0) continue;
    const cxd phase = v(best, c) / best_mod;
    v.col(c) *= std::conj(phase);
  }
}

struct Eigensystem {
  Eigen::VectorXd values;  // ascending
  MatrixC vectors;         // columns, phases fixed as above
};

inline Eigensystem eig_hermitian(const MatrixC& h) {
  require_hermitian(h, "eig_hermitian");
  Eigen::SelfAdjointEigenSolver<MatrixC> es(h);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("eig_hermitian: eigensolver did not converge");
  Eigensystem out{es.eigenvalues(), es.eigenvectors()};
  fix_eigenvector_phases(out.vectors);
  const double lmax = std::max(out.values.cwiseAbs().maxCoeff(), 1e-300);
  const MatrixC resid =
      h * out.vectors - out.vectors * out.values.cast<cxd>().asDiagonal();
  if (max_abs(resid) > 1e-10 * lmax)
    throw ContractViolation("eig_hermitian: eigenpair residual exceeds 1e-10");
  return out;
}

// exp(-i H t) through the spectral decomposition; exact up to the eigensolver
inline MatrixC expm_unitary(const MatrixC& h, double t) {
  const Eigensystem es = eig_hermitian(h);
  VectorC phases(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i)
    phases(i) = std::exp(cxd(0.0, -es.values(i) * t));
  MatrixC u = es.vectors * phases.asDiagonal() * es.vectors.adjoint();
  require_unitary(u, "expm_unitary");
  return u;
}

}  // namespace tqdsim
