#pragma once

namespace cvac {

/// Standard normal CDF, Phi(x) = erfc(-x / sqrt 2) / 2. Using erfc rather than
/// 1 + erf keeps full relative accuracy in the lower tail.
double norm_cdf(double x);

double norm_pdf(double x);

/// Inverse standard normal CDF for p in (0, 1): Acklam's rational
/// approximation (relative error ~1e-9) followed by one Halley step against
/// norm_cdf, which brings it to near machine precision.
double norm_inv_cdf(double p);

} // namespace cvac
