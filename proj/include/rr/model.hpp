#pragma once
#include <complex>

namespace rr {

using cplx = std::complex<double>;

// Gaussian IFC-GF: Y_c = h_c1 X1 + h_c2 X2 + N_c with unit noise. Direct and cooperation
// gains are real; the cross gains h32, h41 may carry a phase.
struct GaussianScenario {
    double h31 = 0, h42 = 0, h21 = 0, h12 = 0;
    cplx h32{0, 0}, h41{0, 0};
    double P1 = 0, P2 = 0;
};

// V_u = alpha_u Q + X_u0c, U_u = V_u + X_u0n, T_u = X_u = U_u + X_uun.
struct PowerSplit {
    cplx alpha1{0, 0}, alpha2{0, 0};
    double var_10c = 0, var_10n = 0, var_11n = 0;
    double var_20c = 0, var_20n = 0, var_22n = 0;

    double power1() const { return std::norm(alpha1) + var_10c + var_10n + var_11n; }
    double power2() const { return std::norm(alpha2) + var_20c + var_20n + var_22n; }
};

}  // namespace rr
