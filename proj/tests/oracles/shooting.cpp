#include "shooting.hpp"

#include <array>
#include <cmath>

#include <boost/math/special_functions/airy.hpp>
#include <boost/numeric/odeint.hpp>

namespace oracle {

namespace {

using State = std::array<double, 2>;
namespace odeint = boost::numeric::odeint;

void rhs(const State& x, State& dx, double y) {
    dx[0] = x[1];
    dx[1] = 0.25 * (x[0] * x[0] * x[0] - y * x[0]);
}

State initial(double k, double y0) {
    const double c = std::pow(2.0, -2.0 / 3.0);
    const double z = -c * y0;
    return {k * boost::math::airy_ai(z), -c * k * boost::math::airy_ai_prime(z)};
}

// +1: blows up above the sqrt(y) branch, -1: turns over, 0: undecided.
int classify(double k, double y0) {
    auto stepper = odeint::make_dense_output(1e-13, 1e-13, odeint::runge_kutta_dopri5<State>());
    stepper.initialize(initial(k, y0), y0, 1e-3);
    while (stepper.current_time() < 12.0) {
        stepper.do_step(rhs);
        const double y = stepper.current_time();
        const State& x = stepper.current_state();
        if (x[1] < 0.0) return -1;
        if (x[0] > std::sqrt(std::max(y, 0.0)) + 1.0) return +1;
    }
    const State& x = stepper.current_state();
    return x[0] > std::sqrt(stepper.current_time()) ? +1 : -1;
}

}  // namespace

ShootingResult hastings_mcleod_shooting(double y_start) {
    double lo = 0.5, hi = 3.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        if (classify(mid, y_start) > 0)
            hi = mid;
        else
            lo = mid;
    }
    ShootingResult r;
    r.amplitude = 0.5 * (lo + hi);
    State x = initial(r.amplitude, y_start);
    odeint::integrate_adaptive(odeint::make_controlled(1e-14, 1e-14, odeint::runge_kutta_dopri5<State>()), rhs, x,
                               y_start, 0.0, 1e-3);
    r.nu_at_zero = x[0];
    r.dnu_at_zero = x[1];
    return r;
}

}  // namespace oracle
