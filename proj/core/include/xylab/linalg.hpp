#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <string>
#include <vector>

namespace xylab {

using cdouble = std::complex<double>;

// Hard cap on matrix dimension (2^12). Large enough for the two-copy space
// of a six-qubit chain; anything bigger is outside this library's scope.
inline constexpr std::size_t kDimensionCap = std::size_t{1} << 12;

/// Dense complex matrix, row-major storage.
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::initializer_list<cdouble> entries);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zero(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cdouble& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const cdouble& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    const std::vector<cdouble>& data() const { return data_; }
    std::vector<cdouble>& data() { return data_; }

    ComplexMatrix operator+(const ComplexMatrix& other) const;
    ComplexMatrix operator-(const ComplexMatrix& other) const;
    ComplexMatrix operator*(const ComplexMatrix& other) const;
    ComplexMatrix operator*(cdouble scalar) const;
    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(cdouble scalar);

    std::vector<cdouble> apply(const std::vector<cdouble>& v) const;

    ComplexMatrix adjoint() const;
    ComplexMatrix transpose() const;
    ComplexMatrix conjugate() const;

    cdouble trace() const;
    double frobenius_norm() const;
    /// max |a_ij - conj(a_ji)| style Hermiticity defect, as a Frobenius norm.
    double hermiticity_defect() const;

    bool is_square() const { return rows_ == cols_; }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<cdouble> data_;
};

inline ComplexMatrix operator*(cdouble scalar, const ComplexMatrix& m) { return m * scalar; }

/// Normalized n-qubit state vector. Basis convention: qubit 1 is the most
/// significant bit of the basis index, so |0011> on four qubits is index 3.
class PureState {
public:
    PureState(int n_qubits, std::vector<cdouble> amplitudes);

    /// Normalizes the given amplitudes (throws on the zero vector).
    static PureState normalized(int n_qubits, std::vector<cdouble> amplitudes);
    /// Computational basis state |index>.
    static PureState basis_state(int n_qubits, std::size_t index);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amplitudes_.size(); }
    const std::vector<cdouble>& amplitudes() const { return amplitudes_; }
    const cdouble& operator[](std::size_t i) const { return amplitudes_[i]; }

    /// |psi><psi| as a density matrix.
    ComplexMatrix projector() const;

    double norm() const;

private:
    int n_qubits_;
    std::vector<cdouble> amplitudes_;
};

cdouble inner_product(const PureState& a, const PureState& b);

/// Eigenvalues in ascending order with column-orthonormal eigenvectors:
/// M = V diag(lambda) V^dagger.
struct SpectralDecomposition {
    std::vector<double> eigenvalues;
    ComplexMatrix eigenvectors;

    std::vector<cdouble> eigenvector(std::size_t k) const;
};

// Pauli matrices and the 2x2 identity under the same basis convention.
const ComplexMatrix& pauli_x();
const ComplexMatrix& pauli_y();
const ComplexMatrix& pauli_z();
const ComplexMatrix& identity2();

/// Kronecker product. Throws std::length_error if the result would exceed
/// the dimension cap.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Partial trace of a density matrix over the qubits NOT in `keep`.
/// Qubits are numbered 1..n, qubit 1 = most significant bit. `keep` must be
/// a nonempty proper subset; kept qubits retain their relative order.
ComplexMatrix partial_trace(const ComplexMatrix& rho, const std::set<int>& keep);

/// Spectral decomposition of a Hermitian matrix via Householder
/// tridiagonalization followed by implicit-shift QL. Input must satisfy
/// ||m - m^dagger||_F <= 1e-10 ||m||_F or std::invalid_argument is thrown.
/// Output is deterministic: eigenvalues ascending, near-degenerate clusters
/// re-orthonormalized, each eigenvector phase-fixed so its largest
/// component is real positive.
SpectralDecomposition hermitian_eig(const ComplexMatrix& m);

/// Singular values of an arbitrary rectangular complex matrix, descending.
/// One-sided Jacobi; values only.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Entrywise complex conjugation in the computational basis.
PureState conjugate_state(const PureState& psi);

}  // namespace xylab
