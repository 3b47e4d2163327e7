#pragma once

namespace oracle {

struct ShootingResult {
    double amplitude = 0.0;  // nu ~ amplitude * Ai(2^{-2/3} |y|) at the start point
    double nu_at_zero = 0.0;
    double dnu_at_zero = 0.0;
};

/// Hastings-McLeod solution of 4 nu'' + y nu - nu^3 = 0 by shooting upward
/// from y_start with Airy initial data, bisecting on the amplitude between
/// the blow-up and the turn-over branches.
ShootingResult hastings_mcleod_shooting(double y_start = -12.0);

}  // namespace oracle
