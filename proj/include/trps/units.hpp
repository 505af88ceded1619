#pragma once

namespace trps {

// hbar in ueV*ps; energies/rates are kept in ueV (angular-frequency units)
// and times in ps at the API boundary, while internal formulas use natural
// units (hbar = 1) where a time is t_ps / kHbarUevPs.
inline constexpr double kHbarUevPs = 658.2119569;

inline constexpr double ps_to_natural(double t_ps) { return t_ps / kHbarUevPs; }
inline constexpr double natural_to_ps(double t_nat) { return t_nat * kHbarUevPs; }

}  // namespace trps
