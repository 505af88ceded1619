#include "trps/coefficients.hpp"

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "trps/errors.hpp"
#include "trps/units.hpp"

namespace trps {

namespace {

// Degeneracy is judged relative to the magnitude of the rates themselves;
// below this the difference quotient loses too many digits and the
// confluent form takes over.
bool near_degenerate(const RateEigenvalues& r) {
    const double scale = std::max({1.0, std::abs(r.gamma_plus), std::abs(r.gamma_minus)});
    return std::abs(r.difference()) < 1e-7 * scale;
}

}  // namespace

CoefficientSet::CoefficientSet(const SystemParams& p, DegeneratePolicy policy) {
    p.validate();
    rates_ = rate_eigenvalues(p);
    degenerate_ = near_degenerate(rates_);
    if (degenerate_ && policy == DegeneratePolicy::reject) {
        throw DegenerateRates(
            "rate eigenvalues are degenerate; construct with the confluent "
            "limit policy to evaluate at an exceptional point");
    }
    const cplx i(0.0, 1.0);
    const cplx anchor = degenerate_
                            ? 0.5 * (rates_.gamma_plus + rates_.gamma_minus)
                            : rates_.gamma_plus;
    qs_ = anchor + i * p.omega_c + 0.5 * p.kappa;
    qa_ = anchor + i * p.omega_21 + 0.5 * p.gamma + p.gamma_ph;
    gp_ = std::conj(p.g_plus());
    gm_ = p.g_minus();
    dg_ = rates_.difference();
}

CoefficientValues CoefficientSet::at_natural(double tau_nat) const {
    CoefficientValues v;
    const cplx i(0.0, 1.0);
    if (degenerate_) {
        const cplx gbar = 0.5 * (rates_.gamma_plus + rates_.gamma_minus);
        const cplx eb = std::exp(gbar * tau_nat);
        v.c_sigma_1 = eb * (1.0 + qs_ * tau_nat);
        v.c_a_2 = eb * (1.0 + qa_ * tau_nat);
        v.c_sigma_2 = -i * gm_ * tau_nat * eb;
        v.c_a_1 = -i * gp_ * tau_nat * eb;
        return v;
    }
    const cplx ep = std::exp(rates_.gamma_plus * tau_nat);
    const cplx em = std::exp(rates_.gamma_minus * tau_nat);
    v.c_sigma_1 = (qs_ * ep - (qs_ - dg_) * em) / dg_;
    v.c_a_2 = (qa_ * ep - (qa_ - dg_) * em) / dg_;
    v.c_sigma_2 = -i * gm_ * (ep - em) / dg_;
    v.c_a_1 = -i * gp_ * (ep - em) / dg_;
    return v;
}

CoefficientValues CoefficientSet::at_ps(double tau_ps) const {
    return at_natural(ps_to_natural(tau_ps));
}

cplx CoefficientSet::c_sigma_1(double tau_nat) const { return at_natural(tau_nat).c_sigma_1; }
cplx CoefficientSet::c_a_2(double tau_nat) const { return at_natural(tau_nat).c_a_2; }
cplx CoefficientSet::c_sigma_2(double tau_nat) const { return at_natural(tau_nat).c_sigma_2; }
cplx CoefficientSet::c_a_1(double tau_nat) const { return at_natural(tau_nat).c_a_1; }

CoefficientSet coefficient_set(const SystemParams& p, DegeneratePolicy policy) {
    return CoefficientSet(p, policy);
}

CoefficientSamples coefficient_oracle(const SystemParams& p,
                                      const std::vector<double>& tau_grid_ps,
                                      Truncation t, FanoOrdering ordering) {
    const LiouvillianMatrix liou = build_liouvillian(p, t, ordering);
    const int d = basis_dim(t);
    const int i_g0 = basis_index(0, 0, t);
    const int i_g1 = basis_index(0, 1, t);
    const int i_e0 = basis_index(1, 0, t);

    const Vector v_sp = vectorize(op_sigma_plus(t));
    const Vector v_ad = vectorize(op_a_dag(t));

    CoefficientSamples out;
    out.tau_ps = tau_grid_ps;
    out.values.reserve(tau_grid_ps.size());
    for (double tau_ps : tau_grid_ps) {
        if (tau_ps < 0.0) throw Error("oracle lag must be non-negative");
        const Matrix u = (liou.l_adj * ps_to_natural(tau_ps)).exp();
        const Matrix x_sigma = unvectorize(u * v_sp, d);
        const Matrix x_a = unvectorize(u * v_ad, d);
        CoefficientValues v;
        v.c_sigma_1 = std::conj(x_sigma(i_e0, i_g0));
        v.c_sigma_2 = std::conj(x_sigma(i_g1, i_g0));
        v.c_a_1 = std::conj(x_a(i_e0, i_g0));
        v.c_a_2 = std::conj(x_a(i_g1, i_g0));
        out.values.push_back(v);
    }
    return out;
}

}  // namespace trps
