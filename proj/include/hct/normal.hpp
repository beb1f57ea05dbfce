#pragma once

namespace hct {

// Standard normal CDF via erfc; absolute error well below 1e-14.
double normal_cdf(double x);

// Standard normal quantile (Wichura's PPND16 rational approximations),
// absolute error below 1e-15 for p in (0,1). Returns +/-infinity at 1/0.
double normal_quantile(double p);

} // namespace hct
