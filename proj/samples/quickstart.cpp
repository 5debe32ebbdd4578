// quickstart.cpp: Library walk-through on a small truncation: sweep the
// detuning, switch the drive off and look at the current.

#include <cstdio>

#include "bhdimer/analytics.hpp"
#include "bhdimer/liouville.hpp"
#include "bhdimer/observables.hpp"
#include "bhdimer/protocol.hpp"

using namespace bhdimer;

int main() {
    const double J = 0.5, U = 0.25, gamma = 0.002, Omega = 1.0 / std::sqrt(2.0);
    const double T = tunneling_period(J);
    const FockBasis basis(8);

    // Short sweep to a small final detuning keeps the state inside n_max = 8.
    auto sched = switch_off(sweep_schedule(-1.5, 0.0, 10.0, J, U, gamma, Omega), 10 * T);
    validate(sched);
    const double t_sw = sched.segments.back().t_start;

    auto sweep = evolve(basis, DensityMatrix::vacuum(basis), sched, 0.0, t_sw, {T / 200, T});
    const auto rho = spdm(sweep.final_state, basis);
    const auto psi = condensate_amplitudes(rho);
    std::printf("after sweep: N = %.3f  psi1 = %.3f  psi2 = %.3f%+.3fi\n",
                mean_number(sweep.final_state, basis), psi(0).real(), psi(1).real(), psi(1).imag());

    const Operator j = current_operator(basis);
    std::printf("    t/T   current\n");
    evolve(basis, sweep.final_state, sched, t_sw, sched.t_end(), {T / 200, T / 4},
           [&](double t, const DensityMatrix& R) {
               std::printf("%7.2f  %+.5f\n", (t - t_sw) / T, mean_current(R, j));
           });
    return 0;
}
