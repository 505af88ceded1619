#include "trps/liouvillian.hpp"

#include <unsupported/Eigen/KroneckerProduct>

#include "trps/errors.hpp"

namespace trps {

FanoOrdering parse_fano_ordering(const std::string& label) {
    if (label == "as_written") return FanoOrdering::as_written;
    if (label == "excitation_conserving") return FanoOrdering::excitation_conserving;
    throw ConfigError("unknown fano_ordering '" + label +
                      "' (expected as_written or excitation_conserving)");
}

std::string fano_ordering_label(FanoOrdering o) {
    return o == FanoOrdering::as_written ? "as_written" : "excitation_conserving";
}

namespace {

// Superoperator of rho -> 2 Y rho X - X Y rho - rho X Y in column-major
// vectorization, vec(A rho B) = (B^T (x) A) vec(rho).
Matrix dissipator(const Matrix& x, const Matrix& y) {
    const int d = static_cast<int>(x.rows());
    const Matrix id = Matrix::Identity(d, d);
    const Matrix xy = x * y;
    Matrix out = 2.0 * Eigen::kroneckerProduct(x.transpose(), y).eval();
    out -= Eigen::kroneckerProduct(id, xy).eval();
    out -= Eigen::kroneckerProduct(xy.transpose(), id).eval();
    return out;
}

}  // namespace

LiouvillianMatrix build_liouvillian(const SystemParams& p, Truncation t,
                                    FanoOrdering ordering) {
    const int d = basis_dim(t);
    const Matrix id = Matrix::Identity(d, d);
    const Matrix h = hamiltonian(p, t);
    const Matrix a = op_a(t);
    const Matrix ad = op_a_dag(t);
    const Matrix sm = op_sigma_minus(t);
    const Matrix sp = op_sigma_plus(t);
    const Matrix n_tls = op_n_tls(t);

    const cplx i(0.0, 1.0);
    Matrix l = -i * (Eigen::kroneckerProduct(id, h).eval() -
                     Eigen::kroneckerProduct(h.transpose(), id).eval());
    l += 0.5 * p.gamma * dissipator(sp, sm);
    l += 0.5 * p.kappa * dissipator(ad, a);
    l += p.gamma_ph * dissipator(n_tls, n_tls);

    const cplx gf = p.gamma_f();
    if (std::abs(gf) > 0.0) {
        if (ordering == FanoOrdering::excitation_conserving) {
            l += 0.5 * gf * dissipator(sp, a);
            l += 0.5 * std::conj(gf) * dissipator(ad, sm);
        } else {
            l += 0.5 * gf * dissipator(a, sp);
            l += 0.5 * std::conj(gf) * dissipator(sm, ad);
        }
    }

    LiouvillianMatrix out;
    out.l = l;
    out.l_adj = l.adjoint();
    out.truncation = t;
    return out;
}

Vector vectorize(const Matrix& m) {
    return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix unvectorize(const Vector& v, int dim) {
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw Error("vector length does not match matrix dimension");
    }
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

}  // namespace trps
