#include "trps/kernels.hpp"

#include <cmath>

#include "trps/detail/phi.hpp"
#include "trps/errors.hpp"

namespace trps {

namespace {

bool near_degenerate(const RateEigenvalues& r) {
    const double scale = std::max({1.0, std::abs(r.gamma_plus), std::abs(r.gamma_minus)});
    return std::abs(r.difference()) < 1e-7 * scale;
}

}  // namespace

SpectralKernelSet::SpectralKernelSet(const SystemParams& p,
                                     const SpectrometerParams& spm,
                                     DegeneratePolicy policy) {
    p.validate();
    spm.validate();
    rates_ = rate_eigenvalues(p);
    degenerate_ = near_degenerate(rates_);
    if (degenerate_ && policy == DegeneratePolicy::reject) {
        throw DegenerateRates(
            "rate eigenvalues are degenerate; construct with the confluent "
            "limit policy to evaluate at an exceptional point");
    }
    gamma_s_ = spm.gamma_s;
    gbar_ = 0.5 * (rates_.gamma_plus + rates_.gamma_minus);
    const cplx anchor = degenerate_ ? gbar_ : rates_.gamma_plus;
    const cplx i(0.0, 1.0);
    qs_ = anchor + i * p.omega_c + 0.5 * p.kappa;
    qa_ = anchor + i * p.omega_21 + 0.5 * p.gamma + p.gamma_ph;
    gm_ = p.g_minus();
    gpc_ = std::conj(p.g_plus());
    dg_ = rates_.difference();
}

cplx SpectralKernelSet::primitive_scaled(const cplx& pole, double nu,
                                         double spp_nat) const {
    const cplx x = cplx(0.0, nu) + pole + 0.5 * gamma_s_;
    return gamma_s_ * spp_nat * detail::phi1(x * spp_nat);
}

cplx SpectralKernelSet::derivative_scaled(double nu, double spp_nat) const {
    const cplx x = cplx(0.0, nu) + gbar_ + 0.5 * gamma_s_;
    return gamma_s_ * spp_nat * spp_nat * detail::dphi1(x * spp_nat);
}

cplx SpectralKernelSet::c_plus_scaled(double nu, double spp_nat) const {
    return primitive_scaled(degenerate_ ? gbar_ : rates_.gamma_plus, nu, spp_nat);
}

cplx SpectralKernelSet::c_minus_scaled(double nu, double spp_nat) const {
    return primitive_scaled(degenerate_ ? gbar_ : rates_.gamma_minus, nu, spp_nat);
}

cplx SpectralKernelSet::c_plus(double nu, double spp_nat) const {
    return std::exp(-gamma_s_ * spp_nat) * c_plus_scaled(nu, spp_nat);
}

cplx SpectralKernelSet::c_minus(double nu, double spp_nat) const {
    return std::exp(-gamma_s_ * spp_nat) * c_minus_scaled(nu, spp_nat);
}

cplx SpectralKernelSet::wp(KernelIndex k) const {
    if (degenerate_) throw DegenerateRates("pole weights undefined at degenerate rates");
    const cplx i(0.0, 1.0);
    switch (k) {
        case KernelIndex::sigma_1: return qs_ / dg_;
        case KernelIndex::a_2: return qa_ / dg_;
        case KernelIndex::sigma_2: return -i * gm_ / dg_;
        case KernelIndex::a_1: return -i * gpc_ / dg_;
    }
    throw Error("unknown kernel index");
}

cplx SpectralKernelSet::wm(KernelIndex k) const {
    if (degenerate_) throw DegenerateRates("pole weights undefined at degenerate rates");
    const cplx i(0.0, 1.0);
    switch (k) {
        case KernelIndex::sigma_1: return -(qs_ - dg_) / dg_;
        case KernelIndex::a_2: return -(qa_ - dg_) / dg_;
        case KernelIndex::sigma_2: return i * gm_ / dg_;
        case KernelIndex::a_1: return i * gpc_ / dg_;
    }
    throw Error("unknown kernel index");
}

cplx SpectralKernelSet::eval_scaled(KernelIndex k, double nu, double spp_nat) const {
    const cplx i(0.0, 1.0);
    if (degenerate_) {
        const cplx base = primitive_scaled(gbar_, nu, spp_nat);
        const cplx deriv = derivative_scaled(nu, spp_nat);
        switch (k) {
            case KernelIndex::sigma_1: return base + qs_ * deriv;
            case KernelIndex::a_2: return base + qa_ * deriv;
            case KernelIndex::sigma_2: return -i * gm_ * deriv;
            case KernelIndex::a_1: return -i * gpc_ * deriv;
        }
        throw Error("unknown kernel index");
    }
    return wp(k) * primitive_scaled(rates_.gamma_plus, nu, spp_nat) +
           wm(k) * primitive_scaled(rates_.gamma_minus, nu, spp_nat);
}

cplx SpectralKernelSet::eval(KernelIndex k, double nu, double spp_nat) const {
    return std::exp(-gamma_s_ * spp_nat) * eval_scaled(k, nu, spp_nat);
}

SpectralKernelSet spectral_kernels(const SystemParams& p,
                                   const SpectrometerParams& spm,
                                   DegeneratePolicy policy) {
    return SpectralKernelSet(p, spm, policy);
}

}  // namespace trps
