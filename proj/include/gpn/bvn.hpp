#pragma once

namespace gpn {

/// Standard bivariate normal CDF P(S <= a, T <= b) with correlation rho.
///
/// Gauss-Legendre quadrature over the tetrachoric (arcsine-path)
/// representation, following Drezner & Wesolowsky (1990) as refined by
/// Genz (2004, "Numerical computation of rectangular bivariate and
/// trivariate normal and t probabilities"). Absolute error below 5e-16
/// for |rho| <= 1 - 1e-10; the degenerate comonotone/countermonotone
/// limits min(Phi(a),Phi(b)) and max(Phi(a)+Phi(b)-1, 0) are used beyond
/// that. a and b may be +-inf; rho outside [-1,1] or NaN inputs throw
/// std::domain_error.
double bvn_cdf(double a, double b, double rho);

}  // namespace gpn
