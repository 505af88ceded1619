#pragma once

#include <vector>

#include "trps/liouvillian.hpp"
#include "trps/rates.hpp"
#include "trps/system_params.hpp"

namespace trps {

// What to do when the rate eigenvalues collide (exceptional point).
enum class DegeneratePolicy { reject, limit_form };

// Values of the four regression coefficients at one lag.
struct CoefficientValues {
    cplx c_sigma_1;   // sigma channel onto A1 = sigma_-
    cplx c_a_2;       // a channel onto A2 = a
    cplx c_sigma_2;   // sigma channel onto A2
    cplx c_a_1;       // a channel onto A1
};

// Closed-form regression coefficients C_{mu,i}(tau). The evaluators
// expand the correlation at the *earlier* time:
//   <O_mu^dag(u) O_mu'(u+tau)> = sum_i C_{mu',i}(tau) <O_mu^dag A_i>_u .
// Near-degenerate rates switch to the confluent limit when constructed
// with DegeneratePolicy::limit_form.
class CoefficientSet {
  public:
    CoefficientSet(const SystemParams& p,
                   DegeneratePolicy policy = DegeneratePolicy::reject);

    CoefficientValues at_natural(double tau_nat) const;
    CoefficientValues at_ps(double tau_ps) const;

    cplx c_sigma_1(double tau_nat) const;
    cplx c_a_2(double tau_nat) const;
    cplx c_sigma_2(double tau_nat) const;
    cplx c_a_1(double tau_nat) const;

    const RateEigenvalues& rates() const { return rates_; }
    bool degenerate() const { return degenerate_; }

  private:
    RateEigenvalues rates_;
    bool degenerate_ = false;
    cplx qs_;          // gamma_+ + i wc + kappa/2 (sigma channel residue)
    cplx qa_;          // gamma_+ + i w21 + gamma/2 + gamma_ph (a channel)
    cplx gp_, gm_;     // g_plus conj / g_minus couplings in the off terms
    cplx dg_;          // gamma_+ - gamma_-
};

CoefficientSet coefficient_set(const SystemParams& p,
                               DegeneratePolicy policy = DegeneratePolicy::reject);

// Numerically sampled coefficients from the adjoint superoperator
// exponential, for cross-checking the closed forms.
struct CoefficientSamples {
    std::vector<double> tau_ps;
    std::vector<CoefficientValues> values;
};

CoefficientSamples coefficient_oracle(const SystemParams& p,
                                      const std::vector<double>& tau_grid_ps,
                                      Truncation t = Truncation::n1,
                                      FanoOrdering ordering = kDefaultFanoOrdering);

}  // namespace trps
