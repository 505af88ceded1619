#include "trps/fano.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

#include "trps/errors.hpp"

namespace trps {

cplx fano_closed_form(double g_mag, double gamma_s, double phi, double nu) {
    const cplx i(0.0, 1.0);
    const cplx e_plus = std::exp(i * phi);
    return 0.5 * (e_plus / (0.5 * gamma_s - i * (nu + g_mag)) +
                  std::conj(e_plus) / (0.5 * gamma_s - i * (nu - g_mag)));
}

cplx fano_lorentzian_form(double g_mag, double gamma_s, double phi, double nu) {
    const cplx i(0.0, 1.0);
    const cplx e_plus = std::exp(i * phi);
    const double dp = nu + g_mag;
    const double dm = nu - g_mag;
    return e_plus * gamma_s / (dp * dp + gamma_s * gamma_s) +
           std::conj(e_plus) * gamma_s / (dm * dm + gamma_s * gamma_s);
}

FanoProbeResult fano_probe(double g_mag, double gamma_s, double phi,
                           const std::vector<double>& nu_grid) {
    if (!(gamma_s > 0.0)) throw ConfigError("fano probe needs gamma_s > 0");
    if (g_mag < 0.0) throw ConfigError("fano probe needs |g| >= 0");
    FanoProbeResult out;
    out.g_mag = g_mag;
    out.gamma_s = gamma_s;
    out.phi = phi;
    out.nu_grid = nu_grid;
    out.f.reserve(nu_grid.size());
    out.abs2.reserve(nu_grid.size());

    using quad = boost::math::quadrature::gauss_kronrod<double, 61>;
    const double tau_max = 2.0 * std::log(1e16) / gamma_s;
    for (double nu : nu_grid) {
        auto re = [&](double tau) {
            return std::cos(g_mag * tau + phi) * std::exp(-0.5 * gamma_s * tau) *
                   std::cos(nu * tau);
        };
        auto im = [&](double tau) {
            return std::cos(g_mag * tau + phi) * std::exp(-0.5 * gamma_s * tau) *
                   std::sin(nu * tau);
        };
        const double fr = quad::integrate(re, 0.0, tau_max, 15, 1e-13);
        const double fi = quad::integrate(im, 0.0, tau_max, 15, 1e-13);
        out.f.emplace_back(fr, fi);
        out.abs2.push_back(fr * fr + fi * fi);
    }
    return out;
}

}  // namespace trps
