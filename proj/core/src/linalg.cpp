#include "xylab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace xylab {

namespace {

void check_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw std::invalid_argument(std::string("ComplexMatrix: shape mismatch in ") + op);
    }
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, cdouble{0.0, 0.0}) {
    if (rows == 0 || cols == 0) {
        throw std::invalid_argument("ComplexMatrix: dimensions must be positive");
    }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols,
                             std::initializer_list<cdouble> entries)
    : ComplexMatrix(rows, cols) {
    if (entries.size() != rows * cols) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match shape");
    }
    std::copy(entries.begin(), entries.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::zero(std::size_t rows, std::size_t cols) {
    return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::operator+(const ComplexMatrix& other) const {
    check_same_shape(*this, other, "operator+");
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] += other.data_[i];
    return out;
}

ComplexMatrix ComplexMatrix::operator-(const ComplexMatrix& other) const {
    check_same_shape(*this, other, "operator-");
    ComplexMatrix out = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] -= other.data_[i];
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    check_same_shape(*this, other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    check_same_shape(*this, other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cdouble scalar) {
    for (auto& x : data_) x *= scalar;
    return *this;
}

ComplexMatrix ComplexMatrix::operator*(const ComplexMatrix& other) const {
    if (cols_ != other.rows_) {
        throw std::invalid_argument("ComplexMatrix: inner dimension mismatch in operator*");
    }
    ComplexMatrix out(rows_, other.cols_);
    // (i,k,j) loop order keeps the inner loop contiguous in both operands.
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t k = 0; k < cols_; ++k) {
            const cdouble aik = data_[i * cols_ + k];
            if (aik == cdouble{0.0, 0.0}) continue;
            const cdouble* brow = &other.data_[k * other.cols_];
            cdouble* orow = &out.data_[i * other.cols_];
            for (std::size_t j = 0; j < other.cols_; ++j) orow[j] += aik * brow[j];
        }
    }
    return out;
}

ComplexMatrix ComplexMatrix::operator*(cdouble scalar) const {
    ComplexMatrix out = *this;
    out *= scalar;
    return out;
}

std::vector<cdouble> ComplexMatrix::apply(const std::vector<cdouble>& v) const {
    if (v.size() != cols_) {
        throw std::invalid_argument("ComplexMatrix: vector length mismatch in apply");
    }
    std::vector<cdouble> out(rows_, cdouble{0.0, 0.0});
    for (std::size_t i = 0; i < rows_; ++i) {
        cdouble acc{0.0, 0.0};
        const cdouble* row = &data_[i * cols_];
        for (std::size_t j = 0; j < cols_; ++j) acc += row[j] * v[j];
        out[i] = acc;
    }
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
    return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out = *this;
    for (auto& x : out.data_) x = std::conj(x);
    return out;
}

cdouble ComplexMatrix::trace() const {
    if (!is_square()) throw std::invalid_argument("ComplexMatrix: trace of non-square matrix");
    cdouble t{0.0, 0.0};
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const auto& x : data_) s += std::norm(x);
    return std::sqrt(s);
}

double ComplexMatrix::hermiticity_defect() const {
    if (!is_square()) return std::numeric_limits<double>::infinity();
    double s = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j)
            s += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
    return std::sqrt(s);
}

PureState::PureState(int n_qubits, std::vector<cdouble> amplitudes)
    : n_qubits_(n_qubits), amplitudes_(std::move(amplitudes)) {
    if (n_qubits < 1) throw std::invalid_argument("PureState: need at least one qubit");
    if (amplitudes_.size() != (std::size_t{1} << n_qubits)) {
        throw std::invalid_argument("PureState: amplitude count must be 2^n");
    }
    const double nrm = norm();
    if (std::abs(nrm - 1.0) > 1e-12) {
        throw std::invalid_argument("PureState: vector is not normalized (use PureState::normalized)");
    }
}

PureState PureState::normalized(int n_qubits, std::vector<cdouble> amplitudes) {
    double s = 0.0;
    for (const auto& a : amplitudes) s += std::norm(a);
    if (s <= 0.0) throw std::invalid_argument("PureState: cannot normalize the zero vector");
    const double inv = 1.0 / std::sqrt(s);
    for (auto& a : amplitudes) a *= inv;
    return PureState(n_qubits, std::move(amplitudes));
}

PureState PureState::basis_state(int n_qubits, std::size_t index) {
    std::vector<cdouble> amp(std::size_t{1} << n_qubits, cdouble{0.0, 0.0});
    amp.at(index) = 1.0;
    return PureState(n_qubits, std::move(amp));
}

double PureState::norm() const {
    double s = 0.0;
    for (const auto& a : amplitudes_) s += std::norm(a);
    return std::sqrt(s);
}

ComplexMatrix PureState::projector() const {
    const std::size_t d = dim();
    ComplexMatrix rho(d, d);
    for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j) rho(i, j) = amplitudes_[i] * std::conj(amplitudes_[j]);
    return rho;
}

cdouble inner_product(const PureState& a, const PureState& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("inner_product: dimension mismatch");
    cdouble acc{0.0, 0.0};
    for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

std::vector<cdouble> SpectralDecomposition::eigenvector(std::size_t k) const {
    std::vector<cdouble> v(eigenvectors.rows());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = eigenvectors(i, k);
    return v;
}

const ComplexMatrix& pauli_x() {
    static const ComplexMatrix m(2, 2, {0.0, 1.0, 1.0, 0.0});
    return m;
}

const ComplexMatrix& pauli_y() {
    static const ComplexMatrix m(2, 2, {0.0, cdouble{0.0, -1.0}, cdouble{0.0, 1.0}, 0.0});
    return m;
}

const ComplexMatrix& pauli_z() {
    static const ComplexMatrix m(2, 2, {1.0, 0.0, 0.0, -1.0});
    return m;
}

const ComplexMatrix& identity2() {
    static const ComplexMatrix m = ComplexMatrix::identity(2);
    return m;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const std::size_t r = a.rows() * b.rows();
    const std::size_t c = a.cols() * b.cols();
    if (r > kDimensionCap || c > kDimensionCap) {
        throw std::length_error("kron: result exceeds dimension cap 2^12");
    }
    ComplexMatrix out(r, c);
    for (std::size_t ia = 0; ia < a.rows(); ++ia)
        for (std::size_t ja = 0; ja < a.cols(); ++ja) {
            const cdouble f = a(ia, ja);
            if (f == cdouble{0.0, 0.0}) continue;
            for (std::size_t ib = 0; ib < b.rows(); ++ib)
                for (std::size_t jb = 0; jb < b.cols(); ++jb)
                    out(ia * b.rows() + ib, ja * b.cols() + jb) = f * b(ib, jb);
        }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::set<int>& keep) {
    if (!rho.is_square()) throw std::invalid_argument("partial_trace: density matrix must be square");
    const std::size_t dim = rho.rows();
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    if ((std::size_t{1} << n) != dim) {
        throw std::invalid_argument("partial_trace: dimension is not a power of two");
    }
    if (keep.empty() || static_cast<int>(keep.size()) >= n) {
        throw std::domain_error("partial_trace: keep must be a nonempty proper subset of qubits");
    }
    for (int q : keep) {
        if (q < 1 || q > n) throw std::domain_error("partial_trace: qubit index out of range");
    }

    std::vector<int> kept(keep.begin(), keep.end());  // ascending
    std::vector<int> traced;
    for (int q = 1; q <= n; ++q)
        if (!keep.count(q)) traced.push_back(q);

    // Bit position of qubit q (1-based, qubit 1 = MSB) inside an n-bit index.
    auto shift = [n](int q) { return n - q; };

    const std::size_t dk = std::size_t{1} << kept.size();
    const std::size_t dt = std::size_t{1} << traced.size();
    ComplexMatrix out(dk, dk);

    for (std::size_t r = 0; r < dk; ++r) {
        for (std::size_t c = 0; c < dk; ++c) {
            std::size_t base_i = 0, base_j = 0;
            for (std::size_t k = 0; k < kept.size(); ++k) {
                const std::size_t bit = kept.size() - 1 - k;  // MSB-first within the kept register
                base_i |= ((r >> bit) & 1u) << shift(kept[k]);
                base_j |= ((c >> bit) & 1u) << shift(kept[k]);
            }
            cdouble acc{0.0, 0.0};
            for (std::size_t t = 0; t < dt; ++t) {
                std::size_t mask = 0;
                for (std::size_t k = 0; k < traced.size(); ++k) {
                    mask |= ((t >> (traced.size() - 1 - k)) & 1u) << shift(traced[k]);
                }
                acc += rho(base_i | mask, base_j | mask);
            }
            out(r, c) = acc;
        }
    }
    return out;
}

namespace {

double sign_matched(double a, double b) { return b >= 0.0 ? std::abs(a) : -std::abs(a); }

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form, accumulating the unitary transformation in q.
void tridiagonalize(ComplexMatrix a, std::vector<double>& diag, std::vector<double>& sub,
                    ComplexMatrix& q) {
    const std::size_t n = a.rows();
    q = ComplexMatrix::identity(n);
    std::vector<cdouble> subdiag(n > 0 ? n - 1 : 0, cdouble{0.0, 0.0});

    // Flush entries more than ~250 decades below the matrix scale; they
    // carry no spectral information and their denormal arithmetic poisons
    // the reflectors.
    double amax = 0.0;
    for (const auto& x : a.data()) {
        amax = std::max(amax, std::abs(x.real()));
        amax = std::max(amax, std::abs(x.imag()));
    }
    const double flush = amax * 1e-250;
    for (auto& x : a.data()) {
        const double re = std::abs(x.real()) < flush ? 0.0 : x.real();
        const double im = std::abs(x.imag()) < flush ? 0.0 : x.imag();
        x = cdouble{re, im};
    }

    std::vector<cdouble> v(n), p(n), w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t len = n - k - 1;
        // Column entries can sit hundreds of decades below the matrix scale
        // (thermal weights), where sum-of-squares norms underflow; work in
        // units of the column maximum, which leaves the reflector unchanged.
        double cmax = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            cmax = std::max(cmax, std::abs(a(k + 1 + i, k).real()));
            cmax = std::max(cmax, std::abs(a(k + 1 + i, k).imag()));
        }
        if (cmax == 0.0) {
            subdiag[k] = 0.0;
            continue;
        }
        double xnorm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) {
            v[i] = a(k + 1 + i, k) / cmax;
            xnorm2 += std::norm(v[i]);
        }
        const double xnorm = std::sqrt(xnorm2);  // ||x|| / cmax
        const cdouble x0 = v[0];
        const cdouble phase = (x0 == cdouble{0.0, 0.0}) ? cdouble{1.0, 0.0} : x0 / std::abs(x0);

        // v = (x + phase*||x||*e1)/cmax; H = I - tau v v^dagger maps x to
        // -phase*||x||*e1.
        v[0] += phase * xnorm;
        double vnorm2 = 0.0;
        for (std::size_t i = 0; i < len; ++i) vnorm2 += std::norm(v[i]);
        if (vnorm2 == 0.0) {
            subdiag[k] = x0 * cmax;
            continue;
        }
        const double tau = 2.0 / vnorm2;

        // Hermitian rank-2 update of the trailing block: A <- A - q v^H - v q^H
        // with p = tau*A*v and q = p - (tau/2)(v^H p) v.
        for (std::size_t i = 0; i < len; ++i) {
            cdouble acc{0.0, 0.0};
            for (std::size_t j = 0; j < len; ++j) acc += a(k + 1 + i, k + 1 + j) * v[j];
            p[i] = tau * acc;
        }
        cdouble vhp{0.0, 0.0};
        for (std::size_t i = 0; i < len; ++i) vhp += std::conj(v[i]) * p[i];
        const cdouble kappa = 0.5 * tau * vhp;
        for (std::size_t i = 0; i < len; ++i) w[i] = p[i] - kappa * v[i];
        for (std::size_t i = 0; i < len; ++i)
            for (std::size_t j = 0; j < len; ++j)
                a(k + 1 + i, k + 1 + j) -= w[i] * std::conj(v[j]) + v[i] * std::conj(w[j]);

        subdiag[k] = -phase * xnorm * cmax;
        a(k + 1, k) = subdiag[k];
        for (std::size_t i = 1; i < len; ++i) a(k + 1 + i, k) = 0.0;

        // Accumulate Q <- Q H on columns k+1..n-1.
        for (std::size_t r = 0; r < n; ++r) {
            cdouble qv{0.0, 0.0};
            for (std::size_t j = 0; j < len; ++j) qv += q(r, k + 1 + j) * v[j];
            qv *= tau;
            for (std::size_t j = 0; j < len; ++j) q(r, k + 1 + j) -= qv * std::conj(v[j]);
        }
    }
    if (n >= 2) subdiag[n - 2] = a(n - 1, n - 2);

    // Diagonal phase similarity makes the subdiagonal real nonnegative.
    std::vector<cdouble> d(n, cdouble{1.0, 0.0});
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const double m = std::abs(subdiag[j]);
        d[j + 1] = (m == 0.0) ? d[j] : d[j] * (subdiag[j] / m);
    }
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t r = 0; r < n; ++r) q(r, c) *= d[c];

    diag.resize(n);
    sub.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) diag[i] = a(i, i).real();
    for (std::size_t i = 0; i + 1 < n; ++i) sub[i] = std::abs(subdiag[i]);
}

// Implicit-shift QL on a real symmetric tridiagonal matrix, rotations
// accumulated into the complex eigenvector matrix z. Deflation threshold is
// 1e-14 relative to neighboring diagonal magnitudes.
void tql_implicit(std::vector<double>& d, std::vector<double>& e, ComplexMatrix& z) {
    const std::size_t n = d.size();
    if (n == 0) return;
    constexpr double kDeflate = 1e-14;

    // e is indexed so that e[i] couples d[i] and d[i+1]; shift to the NR
    // convention where e[0] is spare. One extra slot: the in-place rotation
    // writes ework[m] with m up to n.
    std::vector<double> ework(n + 1, 0.0);
    for (std::size_t i = 0; i + 1 < n; ++i) ework[i + 1] = e[i];

    // Matrices whose entries span hundreds of decades (thermal weights)
    // stall the purely relative test on denormal sub-blocks; an absolute
    // floor at 1e-14 of the overall scale perturbs eigenvalues by no more
    // than that.
    double scale = 0.0;
    for (double v : d) scale = std::max(scale, std::abs(v));
    for (double v : ework) scale = std::max(scale, std::abs(v));

    for (std::size_t l = 1; l <= n; ++l) {
        int iter = 0;
        std::size_t m;
        do {
            for (m = l; m <= n - 1; ++m) {
                const double dd = std::abs(d[m - 1]) + std::abs(d[m]);
                if (std::abs(ework[m]) <= kDeflate * std::max(dd, scale)) break;
            }
            if (m != l) {
                if (iter++ == 60) throw std::runtime_error("hermitian_eig: QL failed to converge");
                double g = (d[l] - d[l - 1]) / (2.0 * ework[l]);
                double r = std::hypot(g, 1.0);
                g = d[m - 1] - d[l - 1] + ework[l] / (g + sign_matched(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (std::size_t i = m - 1; i >= l; --i) {
                    double f = s * ework[i];
                    const double b = c * ework[i];
                    r = std::hypot(f, g);
                    ework[i + 1] = r;
                    if (r == 0.0) {
                        d[i] -= p;
                        ework[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i] - p;
                    r = (d[i - 1] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i] = g + p;
                    g = c * r - b;
                    for (std::size_t k = 0; k < n; ++k) {
                        const cdouble zf = z(k, i);
                        z(k, i) = s * z(k, i - 1) + c * zf;
                        z(k, i - 1) = c * z(k, i - 1) - s * zf;
                    }
                    if (i == l) break;
                }
                if (r == 0.0 && m - 1 >= l) continue;
                d[l - 1] -= p;
                ework[l] = g;
                ework[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

SpectralDecomposition hermitian_eig(const ComplexMatrix& m) {
    if (!m.is_square()) throw std::invalid_argument("hermitian_eig: matrix must be square");
    const double scale = m.frobenius_norm();
    if (m.hermiticity_defect() > 1e-10 * std::max(scale, 1e-300)) {
        throw std::invalid_argument("hermitian_eig: matrix is not Hermitian");
    }
    const std::size_t n = m.rows();

    SpectralDecomposition out;
    if (n == 1) {
        out.eigenvalues = {m(0, 0).real()};
        out.eigenvectors = ComplexMatrix::identity(1);
        return out;
    }

    std::vector<double> d, e;
    ComplexMatrix z;
    tridiagonalize(m, d, e, z);
    tql_implicit(d, e, z);

    // Sort ascending, permuting eigenvector columns along.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&d](std::size_t a, std::size_t b) { return d[a] < d[b]; });
    out.eigenvalues.resize(n);
    out.eigenvectors = ComplexMatrix(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        out.eigenvalues[c] = d[order[c]];
        for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) = z(r, order[c]);
    }

    // Modified Gram-Schmidt inside near-degenerate clusters so that ties
    // still give an orthonormal basis of the eigenspace.
    const double cluster_tol = 1e-9 * std::max(1.0, scale);
    std::size_t start = 0;
    while (start < n) {
        std::size_t end = start + 1;
        while (end < n && out.eigenvalues[end] - out.eigenvalues[end - 1] <= cluster_tol) ++end;
        if (end - start > 1) {
            for (std::size_t c = start; c < end; ++c) {
                for (std::size_t prev = start; prev < c; ++prev) {
                    cdouble proj{0.0, 0.0};
                    for (std::size_t r = 0; r < n; ++r)
                        proj += std::conj(out.eigenvectors(r, prev)) * out.eigenvectors(r, c);
                    for (std::size_t r = 0; r < n; ++r)
                        out.eigenvectors(r, c) -= proj * out.eigenvectors(r, prev);
                }
                double nrm2 = 0.0;
                for (std::size_t r = 0; r < n; ++r) nrm2 += std::norm(out.eigenvectors(r, c));
                const double inv = 1.0 / std::sqrt(nrm2);
                for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) *= inv;
            }
        }
        start = end;
    }

    // Deterministic phase: largest-magnitude component real positive.
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t imax = 0;
        double best = -1.0;
        for (std::size_t r = 0; r < n; ++r) {
            const double a = std::norm(out.eigenvectors(r, c));
            if (a > best + 1e-15) {
                best = a;
                imax = r;
            }
        }
        const cdouble piv = out.eigenvectors(imax, c);
        const double mag = std::abs(piv);
        if (mag > 0.0) {
            const cdouble ph = std::conj(piv) / mag;
            for (std::size_t r = 0; r < n; ++r) out.eigenvectors(r, c) *= ph;
        }
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    // Work on a copy with at least as many rows as columns.
    ComplexMatrix a = (m.rows() >= m.cols()) ? m : m.adjoint();
    const std::size_t rows = a.rows(), cols = a.cols();

    constexpr double kTol = 1e-15;
    constexpr int kMaxSweeps = 60;

    std::vector<double> colnorm2(cols, 0.0);
    auto recompute_norm = [&](std::size_t c) {
        double s = 0.0;
        for (std::size_t r = 0; r < rows; ++r) s += std::norm(a(r, c));
        colnorm2[c] = s;
    };
    for (std::size_t c = 0; c < cols; ++c) recompute_norm(c);

    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        bool rotated = false;
        for (std::size_t p = 0; p + 1 < cols; ++p) {
            for (std::size_t q = p + 1; q < cols; ++q) {
                const double app = colnorm2[p], aqq = colnorm2[q];
                if (app == 0.0 || aqq == 0.0) continue;
                cdouble apq{0.0, 0.0};
                for (std::size_t r = 0; r < rows; ++r) apq += std::conj(a(r, p)) * a(r, q);
                const double mag = std::abs(apq);
                if (mag <= kTol * std::sqrt(app * aqq)) continue;

                rotated = true;
                const cdouble phase = apq / mag;
                const double zeta = (aqq - app) / (2.0 * mag);
                const double t = sign_matched(1.0, zeta) / (std::abs(zeta) + std::hypot(zeta, 1.0));
                const double c = 1.0 / std::hypot(t, 1.0);
                const double s = c * t;
                for (std::size_t r = 0; r < rows; ++r) {
                    const cdouble u = a(r, p), v = a(r, q);
                    a(r, p) = c * u - s * std::conj(phase) * v;
                    a(r, q) = s * phase * u + c * v;
                }
                recompute_norm(p);
                recompute_norm(q);
            }
        }
        if (!rotated) break;
    }

    std::vector<double> sv(cols);
    for (std::size_t c = 0; c < cols; ++c) sv[c] = std::sqrt(colnorm2[c]);
    std::sort(sv.begin(), sv.end(), std::greater<double>());
    return sv;
}

PureState conjugate_state(const PureState& psi) {
    std::vector<cdouble> amp = psi.amplitudes();
    for (auto& a : amp) a = std::conj(a);
    return PureState(psi.n_qubits(), std::move(amp));
}

}  // namespace xylab
