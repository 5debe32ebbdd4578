// liouville.hpp: Lindblad generator with loss on mode 2, and fixed-step RK4 evolution

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "bhdimer/errors.hpp"
#include "bhdimer/fock.hpp"
#include "bhdimer/protocol.hpp"

namespace bhdimer {

struct StateTolerances {
    double hermiticity{1e-12};
    double trace{1e-9};
    double min_eigenvalue{-1e-8};
};

// Density matrix over a FockBasis. Construction only checks shape and
// finiteness; physical invariants are checked on request.
class DensityMatrix {
public:
    DensityMatrix() = default;

    explicit DensityMatrix(Matrix m) : m_(std::move(m)) {
        if (m_.rows() != m_.cols()) {
            throw std::invalid_argument("DensityMatrix: matrix must be square");
        }
        if (!m_.allFinite()) throw NumericalError("DensityMatrix: non-finite entries");
    }

    static DensityMatrix vacuum(const FockBasis& basis) { return fock(basis, 0, 0); }

    static DensityMatrix fock(const FockBasis& basis, int n1, int n2) {
        const int i = basis.index(n1, n2);
        if (i < 0) throw std::invalid_argument("DensityMatrix::fock: state outside basis");
        Matrix m = Matrix::Zero(basis.dim(), basis.dim());
        m(i, i) = 1.0;
        return DensityMatrix(std::move(m));
    }

    // |psi><psi| / <psi|psi>
    static DensityMatrix pure(const Eigen::VectorXcd& psi) {
        const double nrm = psi.squaredNorm();
        if (!(nrm > 0.0)) throw std::invalid_argument("DensityMatrix::pure: zero vector");
        return DensityMatrix(psi * psi.adjoint() / nrm);
    }

    static DensityMatrix maximally_mixed(int dim) {
        return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
    }

    int dim() const { return static_cast<int>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    Complex operator()(int i, int j) const { return m_(i, j); }

    Complex trace() const { return m_.trace(); }

    double hermiticity_residue() const { return (m_ - m_.adjoint()).cwiseAbs().maxCoeff(); }

    double min_eigenvalue() const {
        Eigen::SelfAdjointEigenSolver<Matrix> es(m_, Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }

    void check(const StateTolerances& tol = {}) const {
        const double h = hermiticity_residue();
        if (h > tol.hermiticity) {
            throw NumericalError("density matrix not Hermitian: residue " + std::to_string(h));
        }
        const double tr = std::abs(trace() - 1.0);
        if (tr > tol.trace) {
            throw NumericalError("density matrix trace deviates from 1 by " + std::to_string(tr));
        }
        const double e = min_eigenvalue();
        if (e < tol.min_eigenvalue) {
            throw NumericalError("density matrix has negative eigenvalue " + std::to_string(e));
        }
    }

private:
    Matrix m_;
};

// Reference right-hand side, built with dense products:
//   dR/dt = -i[H, R] - (gamma/2)(a2^+ a2 R - 2 a2 R a2^+ + R a2^+ a2)
inline Matrix lindblad_rhs(const Matrix& R, const Operator& H, double gamma,
                           const FockBasis& basis) {
    const int d = basis.dim();
    if (R.rows() != d || R.cols() != d || H.rows() != d || H.cols() != d) {
        throw std::invalid_argument("lindblad_rhs: dimension mismatch");
    }
    const Operator a2 = annihilation(basis, 2);
    const Operator n2 = a2.adjoint() * a2;
    const Complex i(0.0, 1.0);
    return -i * (H * R - R * H) -
           0.5 * gamma * (n2 * R - 2.0 * a2 * R * a2.adjoint() + R * n2);
}

// Population in the top `top_shells` N-blocks.
inline double leakage(const DensityMatrix& R, const FockBasis& basis, int top_shells) {
    if (top_shells < 1) throw std::invalid_argument("leakage: top_shells must be >= 1");
    if (R.dim() != basis.dim()) throw std::invalid_argument("leakage: dimension mismatch");
    const int first_N = std::max(0, basis.n_max() - top_shells + 1);
    double p = 0.0;
    for (int i = FockBasis::block_offset(first_N); i < basis.dim(); ++i) p += R(i, i).real();
    return p;
}

// Applies the Lindblad generator to Hermitian matrices without forming dense
// operator products. With K = -iH - (gamma/2) n2 and R Hermitian,
//   L(R) = B^+ + B + gamma a2 R a2^+,  B = R K^+,
// and every column of B is a short sum of scaled columns of R: H couples a
// state only to its hopping neighbours (index +-1 inside an N-block) and to
// the drive partners in the adjacent blocks.
class LindbladGenerator {
public:
    LindbladGenerator(const FockBasis& basis, double J, double U, double gamma)
        : basis_(basis), J_(J), U_(U), gamma_(gamma) {
        if (gamma < 0.0) throw std::invalid_argument("LindbladGenerator: gamma must be >= 0");
        if (U < 0.0) throw std::invalid_argument("LindbladGenerator: U must be >= 0");
        const int d = basis.dim();
        number_.resize(d);
        interaction_.resize(d);
        n2_.resize(d);
        jump_src_.assign(static_cast<std::size_t>(d), -1);
        jump_amp_ = Eigen::VectorXd::Zero(d);
        col_ptr_.assign(static_cast<std::size_t>(d) + 1, 0);

        std::vector<std::vector<Entry>> cols(static_cast<std::size_t>(d));
        for (int j = 0; j < d; ++j) {
            const auto [n1, n2] = basis.state(j);
            number_[j] = n1 + n2;
            interaction_[j] = 0.5 * U * (n1 * (n1 - 1.0) + n2 * (n2 - 1.0));
            n2_[j] = n2;
            // (a2 R a2^+)_{ij} = sqrt(n2_i+1) sqrt(n2_j+1) R(up(i), up(j))
            const int up = basis.index(n1, n2 + 1);
            if (up >= 0) {
                jump_src_[j] = up;
                jump_amp_[j] = std::sqrt(n2 + 1.0);
            }
            if (n1 > 0) {
                const int i = basis.index(n1 - 1, n2 + 1);
                const double v = -0.5 * J * std::sqrt(n1 * (n2 + 1.0));
                cols[i].push_back({j, v, 0.0});
                cols[j].push_back({i, v, 0.0});
            }
            const int up1 = basis.index(n1 + 1, n2);
            if (up1 >= 0) {
                const double v = 0.5 * std::sqrt(n1 + 1.0);
                cols[up1].push_back({j, 0.0, v});
                cols[j].push_back({up1, 0.0, v});
            }
        }
        for (int c = 0; c < d; ++c) {
            auto& r = cols[c];
            std::sort(r.begin(), r.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
            col_ptr_[c + 1] = col_ptr_[c] + static_cast<int>(r.size());
            entries_.insert(entries_.end(), r.begin(), r.end());
        }
    }

    const FockBasis& basis() const { return basis_; }
    double hopping() const { return J_; }
    double interaction() const { return U_; }
    double gamma() const { return gamma_; }

    Operator hamiltonian(DriveState s) const {
        return bhdimer::hamiltonian(basis_, {s.detuning, J_, U_, s.drive});
    }

    // out = L(R) for Hermitian R; the result is Hermitian.
    void apply(const Matrix& R, DriveState s, Matrix& out) {
        const int d = basis_.dim();
        work_.resize(d, d);
        acc_.resize(d);
        // B(:, c) = sum_k R(:, k) K^+(k, c), K^+ = iH - (gamma/2) n2 (H real symmetric).
        // Accumulate x = sum_k H(k, c) R(:, k) with real weights, then B = i x - g R(:, c);
        // complex-scalar axpys are several times slower without AVX.
        Complex* x = acc_.data();
        for (int c = 0; c < d; ++c) {
            const double a = s.detuning * number_[c] + interaction_[c];
            const double g = 0.5 * gamma_ * n2_[c];
            const Complex* rc = R.col(c).data();
            for (int i = 0; i < d; ++i) x[i] = a * rc[i];
            for (int k = col_ptr_[c]; k < col_ptr_[c + 1]; ++k) {
                const Entry& e = entries_[static_cast<std::size_t>(k)];
                const double w = e.hop + s.drive * e.drive;
                const Complex* rk = R.col(e.row).data();
                for (int i = 0; i < d; ++i) x[i] += w * rk[i];
            }
            Complex* bc = work_.col(c).data();
            for (int i = 0; i < d; ++i) {
                bc[i] = Complex(-x[i].imag() - g * rc[i].real(), x[i].real() - g * rc[i].imag());
            }
        }
        out.resize(d, d);
        out.noalias() = work_ + work_.adjoint();
        if (gamma_ == 0.0) return;
        // Jump term: rows/columns with a partner one n2-quantum up, i.e. every
        // state outside the top N-block. Partners of block N start at
        // offset(N+1) + 1.
        const int n_max = basis_.n_max();
        for (int c = 0; c < d; ++c) {
            const int uc = jump_src_[c];
            if (uc < 0) continue;
            const double ac = gamma_ * jump_amp_[c];
            for (int N = 0; N < n_max; ++N) {
                const int off = FockBasis::block_offset(N);
                const int len = N + 1;
                out.col(c).segment(off, len).array() +=
                    ac * jump_amp_.segment(off, len).array() *
                    R.col(uc).segment(FockBasis::block_offset(N + 1) + 1, len).array();
            }
        }
    }

private:
    struct Entry {
        int row;
        double hop;
        double drive;
    };

    FockBasis basis_;
    double J_, U_, gamma_;
    Eigen::VectorXd number_, interaction_, n2_;
    std::vector<int> jump_src_;
    Eigen::VectorXd jump_amp_;
    std::vector<int> col_ptr_;
    std::vector<Entry> entries_;
    Matrix work_;
    Eigen::VectorXcd acc_;
};

struct EvolveOptions {
    double dt_max{0.0};          // required; steps are shortened to land on sample times
    double sample_interval{0.0}; // required
    double trace_abort{1e-6};
    bool monitor_positivity{false};
};

struct InvariantStats {
    double max_trace_error{0.0};          // max |tr R - 1| over samples
    double max_hermiticity_residue{0.0};  // raw RK4 output, before re-symmetrization
    double min_eigenvalue{std::numeric_limits<double>::infinity()};
    long steps{0};
    double dt_min{std::numeric_limits<double>::infinity()};
    double dt_max{0.0};

    void merge(const InvariantStats& o) {
        max_trace_error = std::max(max_trace_error, o.max_trace_error);
        max_hermiticity_residue = std::max(max_hermiticity_residue, o.max_hermiticity_residue);
        min_eigenvalue = std::min(min_eigenvalue, o.min_eigenvalue);
        steps += o.steps;
        dt_min = std::min(dt_min, o.dt_min);
        dt_max = std::max(dt_max, o.dt_max);
    }
};

struct EvolveResult {
    DensityMatrix final_state;
    InvariantStats stats;
};

using SampleObserver = std::function<void(double t, const DensityMatrix& R)>;

// Sample times t0 + k*interval for k < ceil((t1-t0)/interval), then t1.
inline std::vector<double> sample_times(double t0, double t1, double interval) {
    const double span = t1 - t0;
    const long n = static_cast<long>(std::ceil(span / interval - 1e-9));
    std::vector<double> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (long k = 0; k < n; ++k) out.push_back(t0 + static_cast<double>(k) * interval);
    out.push_back(t1);
    return out;
}

// Classical fixed-step RK4 over [t0, t1]. Every interval between consecutive
// breakpoints (sample times and schedule segment boundaries) is split into
// the fewest equal steps not exceeding dt_max, so Delta(t) is evaluated
// inside a single affine segment at every stage.
inline EvolveResult evolve(const FockBasis& basis, const DensityMatrix& R0,
                           const ParameterSchedule& schedule, double t0, double t1,
                           const EvolveOptions& opt, const SampleObserver& observer = {}) {
    if (!(opt.dt_max > 0.0)) throw std::invalid_argument("evolve: dt must be > 0");
    if (!(opt.sample_interval > 0.0)) throw std::invalid_argument("evolve: sample interval must be > 0");
    if (!(t1 > t0)) throw std::invalid_argument("evolve: requires t1 > t0");
    if (R0.dim() != basis.dim()) throw std::invalid_argument("evolve: state/basis dimension mismatch");

    const std::vector<double> samples = sample_times(t0, t1, opt.sample_interval);
    std::vector<double> breaks = samples;
    for (const Segment& s : schedule.segments) {
        for (double b : {s.t_start, s.t_end}) {
            if (b > t0 && b < t1) breaks.push_back(b);
        }
    }
    std::sort(breaks.begin(), breaks.end());
    breaks.erase(std::unique(breaks.begin(), breaks.end(),
                             [](double a, double b) { return std::abs(a - b) < 1e-12 * (1.0 + std::abs(a)); }),
                 breaks.end());

    LindbladGenerator gen(basis, schedule.hopping, schedule.interaction, schedule.gamma);
    const int d = basis.dim();
    Matrix R = R0.matrix();
    Matrix k1(d, d), k2(d, d), k3(d, d), k4(d, d), tmp(d, d);
    InvariantStats stats;

    std::size_t next_sample = 0;
    auto record = [&](double t) {
        const double tr_err = std::abs(R.trace() - 1.0);
        stats.max_trace_error = std::max(stats.max_trace_error, tr_err);
        if (!(tr_err <= opt.trace_abort)) {
            std::ostringstream msg;
            msg << "trace drift " << tr_err << " at t = " << t << " exceeds " << opt.trace_abort;
            throw NumericalError(msg.str());
        }
        DensityMatrix snapshot(R);
        if (opt.monitor_positivity) {
            stats.min_eigenvalue = std::min(stats.min_eigenvalue, snapshot.min_eigenvalue());
        }
        if (observer) observer(t, snapshot);
    };

    auto is_sample = [&](double t) {
        return next_sample < samples.size() &&
               std::abs(t - samples[next_sample]) < 1e-12 * (1.0 + std::abs(t));
    };

    if (is_sample(breaks.front())) {
        record(breaks.front());
        ++next_sample;
    }
    for (std::size_t b = 0; b + 1 < breaks.size(); ++b) {
        const double ta = breaks[b];
        const double tb = breaks[b + 1];
        const Segment& seg = schedule.segment_at(0.5 * (ta + tb));
        const long n = std::max(1L, static_cast<long>(std::ceil((tb - ta) / opt.dt_max - 1e-9)));
        const double h = (tb - ta) / static_cast<double>(n);
        stats.dt_min = std::min(stats.dt_min, h);
        stats.dt_max = std::max(stats.dt_max, h);
        for (long s = 0; s < n; ++s) {
            const double t = ta + static_cast<double>(s) * h;
            const DriveState d0 = schedule.state_in(seg, t);
            const DriveState dm = schedule.state_in(seg, t + 0.5 * h);
            const DriveState d1 = schedule.state_in(seg, t + h);
            gen.apply(R, d0, k1);
            tmp = R + (0.5 * h) * k1;
            gen.apply(tmp, dm, k2);
            tmp = R + (0.5 * h) * k2;
            gen.apply(tmp, dm, k3);
            tmp = R + h * k3;
            gen.apply(tmp, d1, k4);
            R += (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            stats.max_hermiticity_residue =
                std::max(stats.max_hermiticity_residue, std::sqrt((R - R.adjoint()).cwiseAbs2().maxCoeff()));
            tmp = 0.5 * (R + R.adjoint());
            R = tmp;
            ++stats.steps;
        }
        if (!R.allFinite()) {
            throw NumericalError("evolve: non-finite entries at t = " + std::to_string(tb));
        }
        if (is_sample(tb)) {
            record(tb);
            ++next_sample;
        }
    }
    return {DensityMatrix(std::move(R)), stats};
}

} // namespace bhdimer
