// fock.hpp: Truncated two-mode Fock space and the dimer operators

#pragma once

#include <cmath>
#include <complex>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bhdimer {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

// Dense complex operator over a FockBasis. Hamiltonians use hbar = 1.
using Operator = Eigen::MatrixXcd;

struct Occupation {
    int n1{0};
    int n2{0};

    int total() const { return n1 + n2; }
    bool operator==(const Occupation&) const = default;
};

// Two-mode states |n1,n2> with n1 + n2 <= n_max.
//
// Ordering: total N ascending, then n1 descending. Each N forms a contiguous
// block of N + 1 states starting at N(N+1)/2, so the index of |n1,n2> is
// N(N+1)/2 + n2.
class FockBasis {
public:
    explicit FockBasis(int n_max) : n_max_(n_max) {
        if (n_max < 0) {
            throw std::invalid_argument("FockBasis: n_max must be non-negative, got " +
                                        std::to_string(n_max));
        }
        states_.reserve(static_cast<std::size_t>(dim_for(n_max)));
        for (int N = 0; N <= n_max; ++N) {
            for (int n1 = N; n1 >= 0; --n1) states_.push_back({n1, N - n1});
        }
    }

    static int dim_for(int n_max) { return (n_max + 1) * (n_max + 2) / 2; }

    int n_max() const { return n_max_; }
    int dim() const { return static_cast<int>(states_.size()); }

    const Occupation& state(int i) const { return states_[static_cast<std::size_t>(i)]; }
    std::span<const Occupation> states() const { return states_; }

    // Index of |n1,n2>, or -1 when the pair lies outside the truncated space.
    int index(int n1, int n2) const {
        if (n1 < 0 || n2 < 0 || n1 + n2 > n_max_) return -1;
        const int N = n1 + n2;
        return block_offset(N) + n2;
    }

    static int block_offset(int N) { return N * (N + 1) / 2; }
    static int block_size(int N) { return N + 1; }

    // Offsets where each N-block begins, plus dim() as the final sentinel.
    std::vector<int> block_boundaries() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(n_max_ + 2));
        for (int N = 0; N <= n_max_ + 1; ++N) out.push_back(block_offset(N));
        return out;
    }

private:
    int n_max_;
    std::vector<Occupation> states_;
};

inline FockBasis build_basis(int n_max) { return FockBasis(n_max); }

namespace detail {

inline void check_mode(int mode) {
    if (mode != 1 && mode != 2) {
        throw std::invalid_argument("mode index must be 1 or 2, got " + std::to_string(mode));
    }
}

inline int occupation_of(const Occupation& s, int mode) { return mode == 1 ? s.n1 : s.n2; }

} // namespace detail

// a_mode with <.., n-1, ..|a|.., n, ..> = sqrt(n).
inline Operator annihilation(const FockBasis& basis, int mode) {
    detail::check_mode(mode);
    Operator a = Operator::Zero(basis.dim(), basis.dim());
    for (int j = 0; j < basis.dim(); ++j) {
        const Occupation s = basis.state(j);
        const int n = detail::occupation_of(s, mode);
        if (n == 0) continue;
        const int i = mode == 1 ? basis.index(s.n1 - 1, s.n2) : basis.index(s.n1, s.n2 - 1);
        a(i, j) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

// States pushed past n_max are dropped (mapped to zero).
inline Operator creation(const FockBasis& basis, int mode) {
    return annihilation(basis, mode).adjoint();
}

inline Operator number_operator(const FockBasis& basis, int mode) {
    detail::check_mode(mode);
    Operator n = Operator::Zero(basis.dim(), basis.dim());
    for (int i = 0; i < basis.dim(); ++i) n(i, i) = detail::occupation_of(basis.state(i), mode);
    return n;
}

inline Operator total_number(const FockBasis& basis) {
    Operator n = Operator::Zero(basis.dim(), basis.dim());
    for (int i = 0; i < basis.dim(); ++i) n(i, i) = basis.state(i).total();
    return n;
}

struct HamiltonianParams {
    double detuning{0.0};    // Delta
    double hopping{0.0};     // J
    double interaction{0.0}; // U
    double drive{0.0};       // Omega (Rabi frequency on mode 1)
};

// H = Delta (n1 + n2) - (J/2)(a2^+ a1 + h.c.) + (U/2) sum n(n-1) + (Omega/2)(a1^+ + a1)
//
// Built entry by entry from the ladder rules so the matrix is exactly
// symmetric; every element is real.
inline Operator hamiltonian(const FockBasis& basis, const HamiltonianParams& p) {
    if (p.interaction < 0.0) {
        throw std::invalid_argument("hamiltonian: interaction U must be >= 0");
    }
    const int d = basis.dim();
    Operator H = Operator::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        const auto [n1, n2] = basis.state(j);
        H(j, j) = p.detuning * (n1 + n2) +
                  0.5 * p.interaction * (n1 * (n1 - 1.0) + n2 * (n2 - 1.0));
        // a2^+ a1 |n1,n2> = sqrt(n1 (n2+1)) |n1-1,n2+1>, same N block
        if (n1 > 0) {
            const int i = basis.index(n1 - 1, n2 + 1);
            const double v = -0.5 * p.hopping * std::sqrt(n1 * (n2 + 1.0));
            H(i, j) += v;
            H(j, i) += v;
        }
        // a1^+ |n1,n2> = sqrt(n1+1) |n1+1,n2>, dropped at the truncation edge
        const int up = basis.index(n1 + 1, n2);
        if (up >= 0) {
            const double v = 0.5 * p.drive * std::sqrt(n1 + 1.0);
            H(up, j) += v;
            H(j, up) += v;
        }
    }
    return H;
}

// j = (1/2i)(a2^+ a1 - a1^+ a2): Hermitian, purely off-diagonal, number conserving.
inline Operator current_operator(const FockBasis& basis) {
    const int d = basis.dim();
    const Complex c = 1.0 / Complex(0.0, 2.0);
    Operator j_op = Operator::Zero(d, d);
    for (int col = 0; col < d; ++col) {
        const auto [n1, n2] = basis.state(col);
        if (n1 > 0) {
            const int row = basis.index(n1 - 1, n2 + 1);
            const double amp = std::sqrt(n1 * (n2 + 1.0));
            j_op(row, col) += c * amp;             // a2^+ a1
            j_op(col, row) -= c * amp;             // -a1^+ a2
        }
    }
    return j_op;
}

} // namespace bhdimer
