#include "trps/basis.hpp"

#include <cmath>

#include "trps/errors.hpp"

namespace trps {

Truncation parse_truncation(const std::string& label) {
    if (label == "n1") return Truncation::n1;
    if (label == "n2") return Truncation::n2;
    throw ConfigError("unknown truncation '" + label + "' (expected n1 or n2)");
}

std::string truncation_label(Truncation t) {
    return t == Truncation::n1 ? "n1" : "n2";
}

int basis_dim(Truncation t) {
    return t == Truncation::n1 ? 4 : 6;
}

namespace {

// Ordered basis: |g,0>, |g,1>, |e,0>, |e,1> [, |g,2>, |e,2>].
int idx(int e, int n) {
    if (n <= 1) return e * 2 + n;
    return 4 + e;
}

}  // namespace

int basis_index(int tls_excited, int n_photon, Truncation t) {
    const int n_max = t == Truncation::n1 ? 1 : 2;
    if (tls_excited < 0 || tls_excited > 1 || n_photon < 0 || n_photon > n_max) {
        throw Error("basis index out of range");
    }
    return idx(tls_excited, n_photon);
}

Matrix op_a(Truncation t) {
    const int d = basis_dim(t);
    Matrix a = Matrix::Zero(d, d);
    const int n_max = t == Truncation::n1 ? 1 : 2;
    for (int e = 0; e <= 1; ++e) {
        for (int n = 1; n <= n_max; ++n) {
            a(idx(e, n - 1), idx(e, n)) = std::sqrt(static_cast<double>(n));
        }
    }
    return a;
}

Matrix op_sigma_minus(Truncation t) {
    const int d = basis_dim(t);
    Matrix s = Matrix::Zero(d, d);
    const int n_max = t == Truncation::n1 ? 1 : 2;
    for (int n = 0; n <= n_max; ++n) {
        s(idx(0, n), idx(1, n)) = 1.0;
    }
    return s;
}

Matrix op_sigma_plus(Truncation t) {
    return op_sigma_minus(t).adjoint();
}

Matrix op_a_dag(Truncation t) {
    return op_a(t).adjoint();
}

Matrix op_n_cav(Truncation t) {
    const Matrix a = op_a(t);
    return a.adjoint() * a;
}

Matrix op_n_tls(Truncation t) {
    const Matrix s = op_sigma_minus(t);
    return s.adjoint() * s;
}

Matrix op_sigma_plus_a(Truncation t) {
    return op_sigma_plus(t) * op_a(t);
}

Matrix op_sigma_z(Truncation t) {
    const int d = basis_dim(t);
    return 2.0 * op_n_tls(t) - Matrix::Identity(d, d);
}

Matrix hamiltonian(const SystemParams& p, Truncation t) {
    const cplx g = p.g();
    Matrix h = 0.5 * p.omega_21 * op_sigma_z(t) + p.omega_c * op_n_cav(t);
    h += g * op_sigma_plus_a(t);
    h += std::conj(g) * op_a(t).adjoint() * op_sigma_minus(t);
    return h;
}

Matrix initial_state_excited(Truncation t) {
    const int d = basis_dim(t);
    Matrix rho = Matrix::Zero(d, d);
    rho(idx(1, 0), idx(1, 0)) = 1.0;
    return rho;
}

Matrix initial_state_diagonal(const std::vector<double>& weights, Truncation t) {
    const int d = basis_dim(t);
    if (static_cast<int>(weights.size()) != d) {
        throw Error("diagonal initial state needs " + std::to_string(d) +
                    " weights, got " + std::to_string(weights.size()));
    }
    double sum = 0.0;
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw Error("diagonal initial state weights must be finite and nonnegative");
        }
        sum += w;
    }
    if (sum <= 0.0) throw Error("diagonal initial state weights must not all vanish");
    Matrix rho = Matrix::Zero(d, d);
    for (int k = 0; k < d; ++k) rho(k, k) = weights[static_cast<size_t>(k)] / sum;
    return rho;
}

}  // namespace trps
