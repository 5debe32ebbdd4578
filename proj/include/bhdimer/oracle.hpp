// oracle.hpp: Exact propagation through the vectorized Liouvillian, used to
// certify the RK4 integrator on small truncations.

#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>
#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "bhdimer/fock.hpp"
#include "bhdimer/liouville.hpp"
#include "bhdimer/protocol.hpp"

namespace bhdimer {

// Largest truncation the dense dim^2 x dim^2 oracle accepts.
inline constexpr int kOracleMaxNmax = 4;

// Column-stacking vectorization: vec(A X B) = (B^T kron A) vec(X).
//   L = -i (1 kron H - H^T kron 1)
//       + gamma (conj(a2) kron a2 - 1/2 (1 kron n2) - 1/2 (n2^T kron 1))
inline Matrix vectorized_liouvillian(const FockBasis& basis, const Operator& H, double gamma) {
    const int d = basis.dim();
    const Operator a2 = annihilation(basis, 2);
    const Operator n2 = a2.adjoint() * a2;
    const Matrix I = Matrix::Identity(d, d);
    const Complex i(0.0, 1.0);
    Matrix L = -i * (Matrix(Eigen::kroneckerProduct(I, H)) -
                     Matrix(Eigen::kroneckerProduct(H.transpose(), I)));
    L += gamma * (Matrix(Eigen::kroneckerProduct(a2.conjugate(), a2)) -
                  0.5 * Matrix(Eigen::kroneckerProduct(I, n2)) -
                  0.5 * Matrix(Eigen::kroneckerProduct(n2.transpose(), I)));
    return L;
}

class ExactPropagator {
public:
    ExactPropagator(const FockBasis& basis, const HamiltonianParams& p, double gamma)
        : d_(basis.dim()) {
        if (basis.n_max() > kOracleMaxNmax) {
            throw std::invalid_argument("ExactPropagator: n_max too large for the dense oracle");
        }
        L_ = vectorized_liouvillian(basis, hamiltonian(basis, p), gamma);
    }

    Matrix propagate(const Matrix& R0, double t) const {
        const Matrix E = (L_ * t).exp();
        const Eigen::VectorXcd v = E * Eigen::Map<const Eigen::VectorXcd>(R0.data(), R0.size());
        return Eigen::Map<const Matrix>(v.data(), d_, d_);
    }

    const Matrix& liouvillian() const { return L_; }

private:
    int d_;
    Matrix L_;
};

struct OracleReport {
    int n_max{0};
    double t_end{0.0};
    double dt{0.0};
    double max_error{0.0};        // max Frobenius distance over the time grid
    double error_at_end{0.0};
    double coarse_error_at_end{0.0}; // with a coarser step
    double convergence_order{0.0};   // log2(coarse / fine) for a halving
    double max_purity_drift{0.0};    // |Tr R^2 - Tr R0^2|, meaningful for gamma = 0
};

// Constant-parameter RK4 trajectory against exp(L t) on a grid of `points`
// equally spaced times in (0, t_end]. The convergence order is measured
// with steps order_dt and 2 * order_dt; order_dt = 0 means 4 * dt, coarse
// enough that the RK4 error dominates round-off.
inline OracleReport oracle_compare(int n_max, const HamiltonianParams& p, double gamma,
                                   const DensityMatrix& R0, double t_end, double dt,
                                   int points = 10, double order_dt = 0.0) {
    const FockBasis basis(n_max);
    if (R0.dim() != basis.dim()) throw std::invalid_argument("oracle_compare: state dimension");
    const ExactPropagator exact(basis, p, gamma);

    // ParameterSchedule with a sign of +1: the HamiltonianParams detuning is
    // used as the bare coefficient of N on both routes.
    ParameterSchedule sched;
    sched.hopping = p.hopping;
    sched.interaction = p.interaction;
    sched.gamma = gamma;
    sched.detuning_sign = 1.0;
    sched.segments.push_back({0.0, t_end, p.detuning, p.detuning, p.drive});

    OracleReport rep;
    rep.n_max = n_max;
    rep.t_end = t_end;
    rep.dt = dt;
    const double purity0 = (R0.matrix() * R0.matrix()).trace().real();
    auto observer = [&](double t, const DensityMatrix& R) {
        if (t == 0.0) return;
        const double err = (R.matrix() - exact.propagate(R0.matrix(), t)).norm();
        rep.max_error = std::max(rep.max_error, err);
        const double purity = (R.matrix() * R.matrix()).trace().real();
        rep.max_purity_drift = std::max(rep.max_purity_drift, std::abs(purity - purity0));
    };
    const auto fine = evolve(basis, R0, sched, 0.0, t_end, {dt, t_end / points}, observer);
    const Matrix exact_end = exact.propagate(R0.matrix(), t_end);
    rep.error_at_end = (fine.final_state.matrix() - exact_end).norm();

    if (order_dt <= 0.0) order_dt = 4.0 * dt;
    const auto a = evolve(basis, R0, sched, 0.0, t_end, {order_dt, t_end});
    const auto b = evolve(basis, R0, sched, 0.0, t_end, {2.0 * order_dt, t_end});
    const double ea = (a.final_state.matrix() - exact_end).norm();
    const double eb = (b.final_state.matrix() - exact_end).norm();
    rep.coarse_error_at_end = eb;
    rep.convergence_order = (ea > 0.0 && eb > 0.0) ? std::log2(eb / ea) : 0.0;
    return rep;
}

} // namespace bhdimer
