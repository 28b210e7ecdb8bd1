#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unsupported/Eigen/KroneckerProduct>

#include "tqdsim/circuit.hpp"
#include "tqdsim/dispersive.hpp"
#include "tqdsim/units.hpp"

using namespace tqdsim;

namespace {

CircuitGeometry reference_geometry(double f_res_hz) {
  CircuitGeometry g;
  g.omega_r = angular(f_res_hz);
  g.z0 = 1000.0;
  g.chi0 = 0.28;
  g.s = 1.0;
  g.w = 0.5;
  return g;
}

HybridSystem reference_system(double delta_over_g) {
  HybridSystem sys;
  sys.omega_r = angular(1.7e9);
  sys.g[0] = sys.g[1] = angular(66e6);
  sys.omega[0] = sys.omega[1] = sys.omega_r + delta_over_g * sys.g[0];
  sys.n_max = 2;
  return sys;
}

double commutator_norm(const MatrixC& a, const MatrixC& b) {
  return max_abs(MatrixC(a * b - b * a));
}

}  // namespace

TEST_CASE("vacuum Rabi coupling hits the reference numbers") {
  // half-gap dot spacing, 28% field participation, 1 kOhm line
  CHECK(in_hz(vacuum_rabi_g0(reference_geometry(1.5e9))) ==
        doctest::Approx(58.45e6).epsilon(1e-3));
  CHECK(in_hz(vacuum_rabi_g0(reference_geometry(1.7e9))) ==
        doctest::Approx(66.25e6).epsilon(1e-3));
  CHECK(in_hz(vacuum_rabi_g0(reference_geometry(6.5e9))) ==
        doctest::Approx(253.3e6).epsilon(1e-3));
}

TEST_CASE("coupling scales linearly in frequency and as sqrt(Z0)") {
  const double base = vacuum_rabi_g0(reference_geometry(2e9));
  CircuitGeometry g2 = reference_geometry(4e9);
  CHECK(vacuum_rabi_g0(g2) == doctest::Approx(2.0 * base).epsilon(1e-12));
  CircuitGeometry g4z = reference_geometry(2e9);
  g4z.z0 *= 4.0;
  CHECK(vacuum_rabi_g0(g4z) == doctest::Approx(2.0 * base).epsilon(1e-12));
  CHECK(effective_coupling(base, 0.3) == doctest::Approx(base * std::cos(0.3)));
}

TEST_CASE("geometry validation") {
  CircuitGeometry g = reference_geometry(2e9);
  g.chi0 = 1.0;
  CHECK_THROWS_AS(vacuum_rabi_g0(g), std::invalid_argument);
  g = reference_geometry(2e9);
  g.z0 = 0.0;
  CHECK_THROWS_AS(vacuum_rabi_g0(g), std::invalid_argument);
  g = reference_geometry(-2e9);
  CHECK_THROWS_AS(vacuum_rabi_g0(g), std::invalid_argument);
}

TEST_CASE("full hybrid Hamiltonian matches an independently built Kronecker form") {
  HybridSystem sys = reference_system(7.0);
  sys.g[1] *= 1.3;
  sys.omega[1] *= 1.01;
  const int nl = sys.levels();

  MatrixC sz(2, 2), sx(2, 2), id2 = MatrixC::Identity(2, 2);
  sz << 1, 0, 0, -1;
  sx << 0, 1, 1, 0;
  MatrixC a = MatrixC::Zero(nl, nl);
  for (int n = 0; n < sys.n_max; ++n) a(n, n + 1) = std::sqrt(n + 1.0);
  const MatrixC ido = MatrixC::Identity(nl, nl);
  const MatrixC x = a + a.adjoint();

  MatrixC ref = Eigen::kroneckerProduct(id2, Eigen::kroneckerProduct(id2, (a.adjoint() * a).eval())).eval();
  ref *= sys.omega_r;
  ref -= 0.5 * sys.omega[0] * Eigen::kroneckerProduct(sz, Eigen::kroneckerProduct(id2, ido)).eval();
  ref -= 0.5 * sys.omega[1] * Eigen::kroneckerProduct(id2, Eigen::kroneckerProduct(sz, ido)).eval();
  ref += sys.g[0] * Eigen::kroneckerProduct(sx, Eigen::kroneckerProduct(id2, x)).eval();
  ref += sys.g[1] * Eigen::kroneckerProduct(id2, Eigen::kroneckerProduct(sx, x)).eval();

  CHECK(max_abs(MatrixC(tavis_cummings_hamiltonian(sys) - ref)) < 1e-12 * sys.omega_r);
}

TEST_CASE("basis indexing and labels") {
  const HybridSystem sys = reference_system(5.0);
  CHECK(basis_index(sys, 0, 0, 0) == 0);
  CHECK(basis_index(sys, 0, 1, 0) == 3);
  CHECK(basis_index(sys, 1, 0, 1) == 7);
  CHECK(basis_label(sys, 0) == "gg0");
  CHECK(basis_label(sys, 7) == "eg1");
  CHECK(basis_label(sys, 11) == "ee2");
}

TEST_CASE("number conservation separates the rotating-wave and full forms") {
  const HybridSystem sys = reference_system(6.0);
  const MatrixC n_op = excitation_number(sys);
  CHECK(commutator_norm(rwa_hamiltonian(sys), n_op) < 1e-3);  // rad/s scale ~1e9
  CHECK(commutator_norm(rwa_interaction(sys), n_op) < 1e-3);
  CHECK(commutator_norm(dispersive_frame_hamiltonian(sys), n_op) < 1e-3);
  CHECK(commutator_norm(tavis_cummings_hamiltonian(sys), n_op) > angular(1e6));
}

TEST_CASE("restricted interaction keeps only the first ladder rung") {
  const HybridSystem sys = reference_system(4.0);
  const MatrixC h = rwa_interaction(sys);
  CHECK(std::abs(h(basis_index(sys, 1, 0, 0), basis_index(sys, 0, 0, 1))) ==
        doctest::Approx(sys.g[0]));
  CHECK(std::abs(h(basis_index(sys, 0, 1, 0), basis_index(sys, 0, 0, 1))) ==
        doctest::Approx(sys.g[1]));
  // no coupling out of the n = 1 manifold
  CHECK(std::abs(h(basis_index(sys, 1, 0, 1), basis_index(sys, 0, 0, 2))) == 0.0);
  CHECK(std::abs(h(basis_index(sys, 1, 1, 1), basis_index(sys, 1, 0, 2))) == 0.0);
}

TEST_CASE("anharmonic ladder energies and alpha = 0 limit") {
  HybridSystem sys = reference_system(5.0);
  sys.n_max = 3;
  sys.alpha = angular(200e6);
  const MatrixC h = transmon_hamiltonian(sys, Ladder::bosonic);
  const int g_row = basis_index(sys, 0, 0, 0);
  std::vector<double> level;
  for (int n = 0; n <= 3; ++n)
    level.push_back(std::real(h(basis_index(sys, 0, 0, n), basis_index(sys, 0, 0, n))) -
                    std::real(h(g_row, g_row)));
  CHECK(level[1] == doctest::Approx(sys.omega_r));
  CHECK(level[2] == doctest::Approx(2.0 * sys.omega_r - sys.alpha));
  CHECK(level[3] == doctest::Approx(3.0 * sys.omega_r - 3.0 * sys.alpha));
  // successive splittings shrink by exactly alpha
  CHECK((level[1] - level[0]) - (level[2] - level[1]) == doctest::Approx(sys.alpha));

  sys.alpha = 0.0;
  CHECK(max_abs(MatrixC(transmon_hamiltonian(sys, Ladder::bosonic) -
                        tavis_cummings_hamiltonian(sys))) < 1e-12 * sys.omega_r);
}

TEST_CASE("uniform ladder swaps the sqrt(n) matrix elements for unit ones") {
  const MatrixC a_b = osc_annihilation(3, Ladder::bosonic);
  const MatrixC a_u = osc_annihilation(3, Ladder::uniform);
  CHECK(std::abs(a_b(1, 2)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(std::abs(a_u(1, 2)) == doctest::Approx(1.0));
  CHECK(std::abs(a_u(2, 3)) == doctest::Approx(1.0));
  CHECK(std::abs(a_u(0, 1)) == doctest::Approx(1.0));
}

TEST_CASE("dispersive reduction reproduces the closed-form shift and exchange") {
  SUBCASE("equal couplings and detunings") {
    const HybridSystem sys = reference_system(10.0);
    const DispersiveModel m = schrieffer_wolff_reduce(sys);
    const double delta = sys.delta(0);
    CHECK(m.chi == doctest::Approx(sys.g[0] * sys.g[0] / delta).epsilon(1e-12));
    CHECK(m.lamb_shift[0] == doctest::Approx(sys.g[0] * sys.g[0] / delta));
    CHECK(m.omega_tilde[0] == doctest::Approx(-sys.omega[0] + sys.g[0] * sys.g[0] / delta));
    CHECK(m.omega_tilde[0] == doctest::Approx(m.omega_tilde[1]));
    CHECK_FALSE(m.dispersive_warning);
    CHECK(m.gate_time() == doctest::Approx(kPi / (2.0 * m.chi)));
    // reduced matrix structure in {gg, ge, eg, ee}
    CHECK(std::real(m.h_reduced(1, 2)) == doctest::Approx(-m.chi));
    CHECK(std::abs(m.h_reduced(0, 3)) == 0.0);
    CHECK(std::real(m.h_reduced(0, 0)) ==
          doctest::Approx(0.5 * (m.omega_tilde[0] + m.omega_tilde[1])));
  }
  SUBCASE("asymmetric parameters") {
    HybridSystem sys = reference_system(8.0);
    sys.g[1] *= 0.7;
    sys.omega[1] = sys.omega_r + 12.0 * sys.g[0];
    const DispersiveModel m = schrieffer_wolff_reduce(sys);
    const double d0 = sys.delta(0), d1 = sys.delta(1);
    CHECK(m.chi ==
          doctest::Approx(sys.g[0] * sys.g[1] * (d0 + d1) / (2.0 * d0 * d1)).epsilon(1e-12));
    // swapping the qubit labels keeps the exchange rate
    HybridSystem swapped = sys;
    std::swap(swapped.g[0], swapped.g[1]);
    std::swap(swapped.omega[0], swapped.omega[1]);
    const DispersiveModel ms = schrieffer_wolff_reduce(swapped);
    CHECK(ms.chi == doctest::Approx(m.chi).epsilon(1e-14));
    CHECK(ms.omega_tilde[0] == doctest::Approx(m.omega_tilde[1]).epsilon(1e-14));
  }
  SUBCASE("degenerate detuning is rejected, shallow detuning warns") {
    HybridSystem sys = reference_system(3.0);
    CHECK(schrieffer_wolff_reduce(sys).dispersive_warning);
    sys.omega[0] = sys.omega[1] = sys.omega_r;
    CHECK_THROWS_AS(schrieffer_wolff_reduce(sys), ContractViolation);
  }
}

TEST_CASE("generator commutator reproduces the exchange element at zero photons") {
  const HybridSystem sys = reference_system(10.0);
  const DispersiveModel m = schrieffer_wolff_reduce(sys);
  const MatrixC s = sw_generator(sys);
  // interaction part of the number-conserving Hamiltonian
  const MatrixC v = dispersive_frame_hamiltonian(sys) -
                    (sys.delta(0) * embed_qubit(sys, qubit_excited(), 0) +
                     sys.delta(1) * embed_qubit(sys, qubit_excited(), 1));
  const MatrixC c = 0.5 * (s * v - v * s);
  const int eg0 = basis_index(sys, 1, 0, 0);
  const int ge0 = basis_index(sys, 0, 1, 0);
  CHECK(std::real(c(eg0, ge0)) == doctest::Approx(-m.chi).epsilon(1e-10));
  CHECK(std::abs(std::imag(c(eg0, ge0))) < 1e-6);
  // this generator direction flips the diagonal shift sign relative to the
  // stored level repulsion magnitude
  CHECK(std::real(c(eg0, eg0)) == doctest::Approx(-m.lamb_shift[0]).epsilon(1e-10));
}

TEST_CASE("ideal swap propagator properties") {
  const double chi = angular(1e6);
  const double t_half = kPi / (2.0 * chi);
  const MatrixC u = ideal_iswap(chi, t_half);
  require_unitary(u, "ideal_iswap");
  CHECK(std::abs(u(1, 1)) < 1e-12);
  CHECK(std::abs(u(1, 2) - cxd(0.0, 1.0)) < 1e-12);
  CHECK(std::abs(u(0, 0) - cxd(1.0, 0.0)) < 1e-12);
  CHECK(std::abs(u(3, 3) - cxd(1.0, 0.0)) < 1e-12);
  CHECK(max_abs(MatrixC(ideal_iswap(chi, 0.0) - MatrixC::Identity(4, 4))) < 1e-15);
  CHECK(max_abs(MatrixC(exchange_hamiltonian(chi) * cxd(-1.0, 0.0) / chi -
                        (MatrixC(4, 4) << 0, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0)
                            .finished())) < 1e-15);
}

TEST_CASE("hybrid system validation") {
  HybridSystem sys = reference_system(5.0);
  sys.n_max = 1;
  CHECK_THROWS_AS(sys.validate(), std::invalid_argument);
  sys = reference_system(5.0);
  sys.g[0] = -1.0;
  CHECK_THROWS_AS(sys.validate(), std::invalid_argument);
  sys = reference_system(5.0);
  sys.alpha = angular(100e6);
  CHECK_THROWS_AS(sys.validate(true), std::invalid_argument);  // needs n_max >= 3
  sys.n_max = 3;
  CHECK_NOTHROW(sys.validate(true));
}
