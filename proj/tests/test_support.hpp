#pragma once

#include <complex>
#include <random>
#include <set>
#include <vector>

#include "xylab/linalg.hpp"

// Deterministic generators and independent oracles shared by the test
// suites. Every random test takes an explicit seed and logs it, so failures
// reproduce exactly.

namespace xytest {

using xylab::cdouble;
using xylab::ComplexMatrix;
using xylab::PureState;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline PureState random_pure_state(int n, std::mt19937_64& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cdouble> amp(std::size_t{1} << n);
    for (auto& a : amp) a = cdouble{gauss(gen), gauss(gen)};
    return PureState::normalized(n, std::move(amp));
}

inline PureState random_product_state(int n, std::mt19937_64& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cdouble> amp{1.0};
    for (int q = 0; q < n; ++q) {
        const cdouble a{gauss(gen), gauss(gen)};
        const cdouble b{gauss(gen), gauss(gen)};
        const double nrm = std::sqrt(std::norm(a) + std::norm(b));
        std::vector<cdouble> next(amp.size() * 2);
        for (std::size_t i = 0; i < amp.size(); ++i) {
            next[2 * i] = amp[i] * a / nrm;
            next[2 * i + 1] = amp[i] * b / nrm;
        }
        amp = std::move(next);
    }
    return PureState(n, std::move(amp));
}

// Ginibre-induced random density matrix of the given rank.
inline ComplexMatrix random_density_matrix(std::size_t dim, std::size_t rank,
                                           std::mt19937_64& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix g(dim, rank);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < rank; ++j) g(i, j) = cdouble{gauss(gen), gauss(gen)};
    ComplexMatrix rho = g * g.adjoint();
    rho *= cdouble{1.0 / rho.trace().real(), 0.0};
    return rho;
}

inline ComplexMatrix random_hermitian(std::size_t dim, std::mt19937_64& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = gauss(gen);
        for (std::size_t j = i + 1; j < dim; ++j) {
            const cdouble x{gauss(gen), gauss(gen)};
            m(i, j) = x;
            m(j, i) = std::conj(x);
        }
    }
    return m;
}

// Haar-ish unitary from Gaussian + modified Gram-Schmidt.
inline ComplexMatrix random_unitary(std::size_t dim, std::mt19937_64& gen) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix u(dim, dim);
    for (auto& x : u.data()) x = cdouble{gauss(gen), gauss(gen)};
    for (std::size_t c = 0; c < dim; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            cdouble proj{0.0, 0.0};
            for (std::size_t r = 0; r < dim; ++r) proj += std::conj(u(r, p)) * u(r, c);
            for (std::size_t r = 0; r < dim; ++r) u(r, c) -= proj * u(r, p);
        }
        double n2 = 0.0;
        for (std::size_t r = 0; r < dim; ++r) n2 += std::norm(u(r, c));
        const double inv = 1.0 / std::sqrt(n2);
        for (std::size_t r = 0; r < dim; ++r) u(r, c) *= inv;
    }
    return u;
}

inline double frob_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    return (a - b).frobenius_norm();
}

// Reference partial trace written as a plain sum over full-register matrix
// elements, independent of the production index arithmetic.
inline ComplexMatrix oracle_partial_trace(const ComplexMatrix& rho, int n,
                                          const std::set<int>& keep) {
    std::vector<int> kept(keep.begin(), keep.end());
    const std::size_t dk = std::size_t{1} << kept.size();
    ComplexMatrix out(dk, dk);
    const std::size_t dim = rho.rows();
    auto bit = [n](std::size_t idx, int qubit) { return (idx >> (n - qubit)) & 1u; };
    for (std::size_t i = 0; i < dim; ++i) {
        for (std::size_t j = 0; j < dim; ++j) {
            bool diagonal_on_traced = true;
            for (int q = 1; q <= n && diagonal_on_traced; ++q) {
                if (!keep.count(q) && bit(i, q) != bit(j, q)) diagonal_on_traced = false;
            }
            if (!diagonal_on_traced) continue;
            std::size_t r = 0, c = 0;
            for (std::size_t k = 0; k < kept.size(); ++k) {
                r = (r << 1) | bit(i, kept[k]);
                c = (c << 1) | bit(j, kept[k]);
            }
            out(r, c) += rho(i, j);
        }
    }
    return out;
}

// Singular values through the eigenvalues of m^dagger m.
inline std::vector<double> oracle_singular_values(const ComplexMatrix& m) {
    const ComplexMatrix gram = m.adjoint() * m;
    auto spec = xylab::hermitian_eig(gram);
    std::vector<double> sv;
    for (auto it = spec.eigenvalues.rbegin(); it != spec.eigenvalues.rend(); ++it) {
        sv.push_back(std::sqrt(std::max(*it, 0.0)));
    }
    return sv;
}

inline double eigen_residual(const ComplexMatrix& h, const PureState& state, double energy) {
    const std::vector<cdouble> hv = h.apply(state.amplitudes());
    double acc = 0.0;
    for (std::size_t i = 0; i < hv.size(); ++i) acc += std::norm(hv[i] - energy * state[i]);
    return std::sqrt(acc);
}

}  // namespace xytest
