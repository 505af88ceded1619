#pragma once

#include "trps/coefficients.hpp"
#include "trps/rates.hpp"
#include "trps/system_params.hpp"

namespace trps {

// Which regression coefficient a kernel filters.
enum class KernelIndex { sigma_1, a_2, sigma_2, a_1 };

// Closed-form spectral kernels: the lag integral of a regression
// coefficient against the spectrometer window,
//   K_{mu,i}(nu, s'') = Gs e^{-Gs s''} int_0^{s''} C_{mu,i}(tau) e^{(i nu + Gs/2) tau} dtau,
// assembled from the two-pole primitives
//   P_pm(nu, s'') = Gs e^{-Gs s''} s'' phi1(x_pm s''),  x_pm = i nu + gamma_pm + Gs/2.
// nu in ueV, s'' in natural time units. The `scaled` variants drop the
// common e^{-Gs s''} prefactor, which keeps comparisons against direct
// quadrature well conditioned at large Gs s''.
class SpectralKernelSet {
  public:
    SpectralKernelSet(const SystemParams& p, const SpectrometerParams& spm,
                      DegeneratePolicy policy = DegeneratePolicy::reject);

    cplx c_plus(double nu, double spp_nat) const;
    cplx c_minus(double nu, double spp_nat) const;
    cplx c_plus_scaled(double nu, double spp_nat) const;
    cplx c_minus_scaled(double nu, double spp_nat) const;

    cplx eval(KernelIndex k, double nu, double spp_nat) const;
    cplx eval_scaled(KernelIndex k, double nu, double spp_nat) const;

    // Pole decomposition weights: eval(k) = wp(k) P_+ + wm(k) P_- in the
    // non-degenerate case.
    cplx wp(KernelIndex k) const;
    cplx wm(KernelIndex k) const;

    bool degenerate() const { return degenerate_; }
    const RateEigenvalues& rates() const { return rates_; }
    double gamma_s() const { return gamma_s_; }

  private:
    RateEigenvalues rates_;
    bool degenerate_ = false;
    double gamma_s_ = 0.0;
    cplx qs_, qa_;      // channel residues (see coefficients)
    cplx gm_, gpc_;     // g_minus and conj(g_plus) couplings
    cplx dg_;           // gamma_+ - gamma_-
    cplx gbar_;         // mean rate, used by the confluent limit

    cplx primitive_scaled(const cplx& pole, double nu, double spp_nat) const;
    cplx derivative_scaled(double nu, double spp_nat) const;
};

SpectralKernelSet spectral_kernels(const SystemParams& p,
                                   const SpectrometerParams& spm,
                                   DegeneratePolicy policy = DegeneratePolicy::reject);

}  // namespace trps
