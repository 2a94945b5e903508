#pragma once

namespace vswt::integrate {

/// Classical fourth-order Runge-Kutta step for dx/dt = f(t, x). State needs
/// x + x and x * double.
template <typename State, typename F>
State rk4_step(const F& f, double t, const State& x, double dt) {
    const State k1 = f(t, x);
    const State k2 = f(t + 0.5 * dt, x + k1 * (0.5 * dt));
    const State k3 = f(t + 0.5 * dt, x + k2 * (0.5 * dt));
    const State k4 = f(t + dt, x + k3 * dt);
    return x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (dt / 6.0);
}

template <typename State, typename F>
State euler_step(const F& f, double t, const State& x, double dt) {
    return x + f(t, x) * dt;
}

}  // namespace vswt::integrate
