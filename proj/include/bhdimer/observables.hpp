// observables.hpp: Quantities extracted from a density matrix: single-particle
// density matrix, condensate amplitudes, current, number histogram, N-blocks

#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bhdimer/fock.hpp"
#include "bhdimer/liouville.hpp"

namespace bhdimer {

// rho(l, m) = Tr[a_l^+ a_m R], l, m in {0, 1} for modes 1, 2.
struct SingleParticleDM {
    Eigen::Matrix2cd entries{Eigen::Matrix2cd::Zero()};

    double occupation(int mode) const { return entries(mode - 1, mode - 1).real(); }
    double trace() const { return entries.trace().real(); }
};

struct SpdmEigen {
    double lambda1{0.0}; // largest
    double lambda2{0.0};
    Eigen::Vector2cd v1{Eigen::Vector2cd::Zero()};
    Eigen::Vector2cd v2{Eigen::Vector2cd::Zero()};
};

struct NumberHistogram {
    std::vector<double> p; // p[N], N = 0..n_max

    double sum() const {
        double s = 0.0;
        for (double x : p) s += x;
        return s;
    }
    double mean() const {
        double m = 0.0;
        for (std::size_t N = 0; N < p.size(); ++N) m += static_cast<double>(N) * p[N];
        return m;
    }
    double variance() const {
        const double m = mean();
        double v = 0.0;
        for (std::size_t N = 0; N < p.size(); ++N) {
            const double dN = static_cast<double>(N) - m;
            v += dN * dN * p[N];
        }
        return v;
    }
};

namespace detail {
inline void check_dims(const DensityMatrix& R, const FockBasis& basis, const char* who) {
    if (R.dim() != basis.dim()) {
        throw std::invalid_argument(std::string(who) + ": dimension mismatch (state " +
                                    std::to_string(R.dim()) + ", basis " +
                                    std::to_string(basis.dim()) + ")");
    }
}
} // namespace detail

inline SingleParticleDM spdm(const DensityMatrix& R, const FockBasis& basis) {
    detail::check_dims(R, basis, "spdm");
    double n1 = 0.0, n2 = 0.0;
    Complex r12 = 0.0;
    for (int j = 0; j < basis.dim(); ++j) {
        const auto [a, b] = basis.state(j);
        const double w = R(j, j).real();
        n1 += a * w;
        n2 += b * w;
        // a1^+ a2 |a,b> = sqrt((a+1) b) |a+1,b-1>; Tr[X R] = sum X(i,j) R(j,i)
        if (b > 0) {
            const int i = basis.index(a + 1, b - 1);
            r12 += std::sqrt((a + 1.0) * b) * R(j, i);
        }
    }
    SingleParticleDM out;
    out.entries << n1, r12, std::conj(r12), n2;
    return out;
}

// Closed-form eigenpairs of the 2x2 Hermitian matrix, descending.
inline SpdmEigen spdm_eigs(const SingleParticleDM& rho) {
    const double a = rho.entries(0, 0).real();
    const double d = rho.entries(1, 1).real();
    const Complex b = 0.5 * (rho.entries(0, 1) + std::conj(rho.entries(1, 0)));
    const double mid = 0.5 * (a + d);
    const double half = 0.5 * (a - d);
    const double rad = std::hypot(half, std::abs(b));
    SpdmEigen e;
    e.lambda1 = mid + rad;
    e.lambda2 = mid - rad;
    if (rad == 0.0) {
        e.v1 << 1.0, 0.0;
        e.v2 << 0.0, 1.0;
        return e;
    }
    // (rho - lambda1) v = 0. Use the row with the larger norm for stability.
    Eigen::Vector2cd v;
    if (half >= 0.0) {
        v << Complex(half + rad), std::conj(b);
    } else {
        v << b, Complex(rad - half);
    }
    e.v1 = v.normalized();
    e.v2 << -std::conj(e.v1(1)), std::conj(e.v1(0));
    return e;
}

// Psi = sqrt(lambda1) v1, global phase chosen so psi_1 is real and >= 0.
// Because rho(l, m) = <a_l^+ a_m>, a coherent state <a> = phi gives
// Psi = conj(phi); moduli and the relative phase magnitude are unaffected.
inline Eigen::Vector2cd condensate_amplitudes(const SingleParticleDM& rho) {
    const SpdmEigen e = spdm_eigs(rho);
    if (!(e.lambda1 > 0.0)) {
        throw std::invalid_argument("condensate_amplitudes: largest eigenvalue is not positive");
    }
    Eigen::Vector2cd psi = std::sqrt(e.lambda1) * e.v1;
    const double mag = std::abs(psi(0));
    if (mag > 0.0) psi *= std::conj(psi(0)) / mag;
    return psi;
}

// Tr[j R]; throws if the imaginary residue exceeds imag_tol.
inline double mean_current(const DensityMatrix& R, const Operator& j_op, double imag_tol = 1e-10) {
    if (R.dim() != j_op.rows()) throw std::invalid_argument("mean_current: dimension mismatch");
    const Complex v = (j_op.cwiseProduct(R.matrix().transpose())).sum();
    if (std::abs(v.imag()) > imag_tol) {
        throw NumericalError("mean_current: imaginary residue " + std::to_string(v.imag()));
    }
    return v.real();
}

inline NumberHistogram number_histogram(const DensityMatrix& R, const FockBasis& basis) {
    detail::check_dims(R, basis, "number_histogram");
    NumberHistogram h;
    h.p.assign(static_cast<std::size_t>(basis.n_max()) + 1, 0.0);
    for (int i = 0; i < basis.dim(); ++i) h.p[basis.state(i).total()] += R(i, i).real();
    return h;
}

inline double mean_number(const DensityMatrix& R, const FockBasis& basis) {
    return number_histogram(R, basis).mean();
}

inline double number_variance(const DensityMatrix& R, const FockBasis& basis) {
    return number_histogram(R, basis).variance();
}

// The (N, M) block of R: rows from sector N, columns from sector M.
inline Matrix block_extract(const DensityMatrix& R, const FockBasis& basis, int N, int M) {
    detail::check_dims(R, basis, "block_extract");
    if (N < 0 || M < 0 || N > basis.n_max() || M > basis.n_max()) {
        throw std::out_of_range("block_extract: sector index outside 0.." +
                                std::to_string(basis.n_max()));
    }
    return R.matrix().block(FockBasis::block_offset(N), FockBasis::block_offset(M),
                            FockBasis::block_size(N), FockBasis::block_size(M));
}

// Frobenius norm of everything outside the diagonal N-blocks.
inline double off_block_norm(const DensityMatrix& R, const FockBasis& basis) {
    detail::check_dims(R, basis, "off_block_norm");
    double s = 0.0;
    for (int j = 0; j < basis.dim(); ++j) {
        for (int i = 0; i < basis.dim(); ++i) {
            if (basis.state(i).total() != basis.state(j).total()) s += std::norm(R(i, j));
        }
    }
    return std::sqrt(s);
}

} // namespace bhdimer
