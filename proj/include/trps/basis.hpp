#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "trps/system_params.hpp"

namespace trps {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

// Photon-number truncation of the cavity mode. The ordered basis is
// {|g,0>, |g,1>, |e,0>, |e,1>} for n <= 1 and appends {|g,2>, |e,2>}
// for n <= 2.
enum class Truncation { n1, n2 };

Truncation parse_truncation(const std::string& label);
std::string truncation_label(Truncation t);

// Hilbert-space dimension for a truncation.
int basis_dim(Truncation t);

// Index of the basis state with TLS level e (0 = ground, 1 = excited)
// and photon number n.
int basis_index(int tls_excited, int n_photon, Truncation t);

// Annihilation operator of the cavity mode on the truncated basis.
Matrix op_a(Truncation t);
// TLS lowering operator sigma_minus = |g><e| (x) identity.
Matrix op_sigma_minus(Truncation t);
Matrix op_sigma_plus(Truncation t);
Matrix op_a_dag(Truncation t);
Matrix op_n_cav(Truncation t);      // a^dag a
Matrix op_n_tls(Truncation t);      // sigma_+ sigma_-
Matrix op_sigma_plus_a(Truncation t);
Matrix op_sigma_z(Truncation t);

// System Hamiltonian (1/2) w21 sigma_z + wc a^dag a + (g s+ a + g* a^dag s-).
Matrix hamiltonian(const SystemParams& p, Truncation t);

// Density matrix of the initially excited emitter |e,0><e,0|.
Matrix initial_state_excited(Truncation t);

// Normalized diagonal density matrix from per-state weights (basis order).
Matrix initial_state_diagonal(const std::vector<double>& weights, Truncation t);

}  // namespace trps
