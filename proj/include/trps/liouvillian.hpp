#pragma once

#include <string>

#include "trps/basis.hpp"
#include "trps/system_params.hpp"

namespace trps {

// Ordering of the two cross-emission dissipator terms. `as_written`
// uses D_{a,sigma+} and D_{sigma-,a^dag}; `excitation_conserving`
// swaps the subscript order to D_{sigma+,a} and D_{a^dag,sigma-}, which
// keeps the generator inside the single-excitation sector. The default
// is the ordering that reproduces the analytic regression coefficients
// (see tests); the other remains selectable for comparison.
enum class FanoOrdering { as_written, excitation_conserving };

FanoOrdering parse_fano_ordering(const std::string& label);
std::string fano_ordering_label(FanoOrdering o);

inline constexpr FanoOrdering kDefaultFanoOrdering =
    FanoOrdering::excitation_conserving;

// Generator of the master equation in column-major vectorization,
// d vec(rho)/dt = L vec(rho), plus its Hilbert-Schmidt adjoint.
// Entries are in natural angular-frequency units (ueV).
struct LiouvillianMatrix {
    Matrix l;
    Matrix l_adj;
    Truncation truncation = Truncation::n1;
};

LiouvillianMatrix build_liouvillian(const SystemParams& p, Truncation t,
                                    FanoOrdering ordering = kDefaultFanoOrdering);

// Column-major vectorization helpers.
Vector vectorize(const Matrix& m);
Matrix unvectorize(const Vector& v, int dim);

}  // namespace trps
