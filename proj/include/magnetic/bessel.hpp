#pragma once

// Modified Bessel functions I_{m+1/2} of half-integer order on balls.

#include "magnetic/ball.hpp"

namespace magnetic {

/// I_{m+1/2}(x) for a ball x with positive midpoint. Picks the elementary
/// closed form for x >= 2m + 2 and the power series below that.
Ball bessel_i_half(int m, const Ball& x);

/// Closed form (2 pi x)^(-1/2) [e^x P(-1/x) + (-1)^(m+1) e^(-x) P(1/x)].
Ball bessel_i_half_closed(int m, const Ball& x);

/// Defining power series sum (x/2)^(nu+2j) / (j! Gamma(nu+j+1)).
Ball bessel_i_half_series(int m, const Ball& x);

/// Upper bound (y/2)^nu e^y / Gamma(nu+1) on I_nu over the whole ball y,
/// returned as an exact ball at its upper endpoint.
Ball bessel_upper_bound(int m, const Ball& y);

/// Gamma(m + 3/2) = (2m+1)!! sqrt(pi) / 2^(m+1).
Ball gamma_half_integer_plus_one(int m, mpfr_prec_t prec);

}  // namespace magnetic
