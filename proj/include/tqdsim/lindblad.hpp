// Lindblad generator building blocks. Dissipator normalization:
//   D[L] rho = L rho L† - (L†L rho + rho L†L)/2
// and channels enter the master equation as rate * D[L], rate >= 0 in rad/s.
// Any conventional 1/2 prefactor (dephasing written as (Gamma/2) D[sigma_z])
// is carried inside the stored rate, never inside the operator.
#pragma once

#include <vector>

#include "tqdsim/linalg.hpp"

namespace tqdsim {

struct LindbladChannel {
  MatrixC op;
  double rate = 0.0;  // rad/s

  LindbladChannel() = default;
  LindbladChannel(MatrixC l, double r) : op(std::move(l)), rate(r) {
    if (rate < 0.0) throw ContractViolation("LindbladChannel: negative rate");
  }
};

template <class DL, class DR>
MatrixC dissipator(const Eigen::MatrixBase<DL>& l, const Eigen::MatrixBase<DR>& rho) {
  const MatrixC ldl = (l.adjoint() * l).eval();
  return (l * rho * l.adjoint() - 0.5 * (ldl * rho + rho * ldl)).eval();
}

inline MatrixC lindblad_rhs(const MatrixC& rho, const MatrixC& h,
                            const std::vector<LindbladChannel>& channels) {
  MatrixC out = cxd(0.0, -1.0) * (h * rho - rho * h);
  for (const auto& c : channels) {
    if (c.rate == 0.0) continue;
    out += c.rate * dissipator(c.op, rho);
  }
  return out;
}

// Superoperator on column-major-stacked rho, using vec(A X B) = (B^T kron A) vec(X).
// Dimension (n^2)x(n^2); fine for n <= 16.
inline MatrixC liouvillian(const MatrixC& h, const std::vector<LindbladChannel>& channels) {
  const Eigen::Index n = h.rows();
  const MatrixC id = MatrixC::Identity(n, n);
  MatrixC sup = cxd(0.0, -1.0) * (kron(id, h) - kron(h.transpose().eval(), id));
  for (const auto& c : channels) {
    if (c.rate == 0.0) continue;
    if (c.rate < 0.0) throw ContractViolation("liouvillian: negative rate");
    const MatrixC ldl = (c.op.adjoint() * c.op).eval();
    sup += c.rate * (kron(c.op.conjugate().eval(), c.op)
                     - 0.5 * kron(id, ldl)
                     - 0.5 * kron(ldl.transpose().eval(), id));
  }
  return sup;
}

}  // namespace tqdsim
