#pragma once

#include <complex>
#include <vector>

#include "cantorfour/measure.hpp"

namespace cantorfour {

struct FourierCoefficient {
    std::complex<double> value;
    Frequency frequency;
};

// mu_hat(n) = (1/2) * integral of e^{i pi n x} d mu(x), by closed form.
// Each uniform part contributes (w/2) e^{i pi n c} sinc(pi n h) with the
// phase n*c reduced exactly before any trigonometry; atoms contribute
// (m/2) e^{i pi n p}.  Accurate to a few ulp relative to ‖μ‖ at any
// frequency, including |n| far beyond 10^12.
FourierCoefficient coefficient(const Measure& mu, const Frequency& n);

// Element-wise coefficient(), evaluated as a parallel map; output order and
// bit patterns match the serial loop exactly.
std::vector<FourierCoefficient> coefficients_batch(const Measure& mu,
                                                   const std::vector<Frequency>& ns);
std::vector<FourierCoefficient> coefficients_batch_serial(const Measure& mu,
                                                          const std::vector<Frequency>& ns);

// Independent cross-check: adaptive composite Gauss-Legendre quadrature of
// the defining integral, with anchor phases evaluated through arbitrary-
// precision trigonometry rather than rational reduction.  Absolute error at
// most tol on success.  Throws OracleInfeasible ("frequency too large for
// oracle") when the subdivision budget is exhausted, i.e. for |n| * length
// beyond roughly 2^22 panels per piece.
std::complex<double> coefficient_oracle(const Measure& mu, const Frequency& n, double tol);

// sin(pi u)/(pi u) with exact reduction of u mod 2; even in u; 1 at 0.
double sinc_pi(const Rational& u);

}  // namespace cantorfour
