#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "xylab/linalg.hpp"

namespace xylab {

enum class ConcurrenceMethod {
    Wootters,
    PureClosed,
    PureTwoCopy,
    LowerBound,
    ApproxLower,
    SampledUpper,
};

std::string to_string(ConcurrenceMethod m);

struct ConcurrenceEstimate {
    double value = 0.0;
    ConcurrenceMethod method = ConcurrenceMethod::LowerBound;
};

/// Symmetric/antisymmetric projectors on the twofold copy of one qubit:
/// P+ = (Pi+_0 + Pi+_1 + Pi-_0)/2 (rank 3), P- = Pi-_1/2 (rank 1, the
/// singlet projector). P+ + P- = I_4.
std::pair<ComplexMatrix, ComplexMatrix> build_projectors();

/// Two-copy operator defining an MKB concurrence. Site j of each copy is
/// paired, so the operator is a sum of n-fold tensor products of the 4x4
/// P+/P- projectors with nonnegative weights p indexed by the strings of
/// signs carrying an even, nonzero number of minus signs.
///
/// The spectral form enumerates only those product eigenvectors (they are
/// symmetric under the copy swap, which keeps every tau matrix complex
/// symmetric); for kind Full the materialized matrix is the equivalent
/// operator 4(I - P+^{(x)n}), which agrees with the string sum on every
/// two-copy product state.
class AOperator {
public:
    enum class Kind { Full, Multipartite, Custom };

    /// A_n with all string weights equal to 4 (the C_n monotone).
    static AOperator full(int n_qubits);
    /// A^(n) = 2^n P-^{(x)n}, rank 1, even n only (C^(n) vanishes
    /// identically for odd n).
    static AOperator multipartite(int n_qubits);
    /// Custom weights keyed by the minus-position bitmask (bit n-j for
    /// site j); masks must have even nonzero popcount and weights >= 0.
    static AOperator custom(int n_qubits, const std::map<std::uint32_t, double>& weights);

    int n_qubits() const { return n_qubits_; }
    Kind kind() const { return kind_; }

    /// One subnormalized eigenvector chi~ = sqrt(w) u_{a_1} x ... x u_{a_n},
    /// where a_j indexes the per-site two-copy basis (0..2 triplet,
    /// 3 singlet).
    struct SpectralTerm {
        double weight = 0.0;  // eigenvalue
        std::vector<std::uint8_t> site_basis;
    };

    const std::vector<SpectralTerm>& spectral_terms() const { return terms_; }
    std::size_t rank() const { return terms_.size(); }

    /// Dense 4^n x 4^n matrix in site-paired ordering. Built on demand.
    ComplexMatrix materialize() const;

private:
    AOperator(int n_qubits, Kind kind, std::map<std::uint32_t, double> weights);

    int n_qubits_;
    Kind kind_;
    std::map<std::uint32_t, double> weights_;  // minus-mask -> p
    std::vector<SpectralTerm> terms_;
};

/// tau matrices T^alpha (one per spectral term of A, each r x r with
/// r = rank of rho after truncating eigenvalues below 1e-12) together with
/// the default coefficient vector z (unit norm). For rank-1 A, z = (1); for
/// higher rank z defaults to the quasi-pure choice built from the T^alpha_11
/// entries, falling back to a uniform vector when those all vanish.
struct TauSet {
    std::vector<ComplexMatrix> matrices;
    std::vector<cdouble> coefficients;
};

/// Wootters concurrence of a two-qubit density matrix,
/// max{lambda1 - lambda2 - lambda3 - lambda4, 0} over the square roots of
/// the eigenvalues of rho (sy x sy) rho* (sy x sy) in decreasing order.
ConcurrenceEstimate wootters(const ComplexMatrix& rho);

/// sqrt(<psi x psi| A |psi x psi>), evaluated through the factored spectral
/// form (the 4^n matrix is never assembled).
ConcurrenceEstimate pure_twocopy(const PureState& psi, const AOperator& a);

/// C_n via marginal purities: 2^{1-n/2} sqrt((2^n - 2) - sum_S tr rho_S^2)
/// over all proper nonempty qubit subsets S.
ConcurrenceEstimate pure_cn(const PureState& psi);

/// |<psi*| sy x ... x sy |psi>| for even n (the C^(n) closed form; equals
/// the Wootters concurrence at n = 2).
ConcurrenceEstimate pure_spinflip(const PureState& psi);

TauSet tau_matrices(const ComplexMatrix& rho, const AOperator& a);

/// Algebraic lower bound max{0, s1 - sum_{j>1} s_j} over the singular
/// values of tau = sum_alpha z_alpha T^alpha. Exact for rank-1 A. If z is
/// supplied it must be unit norm of matching length; otherwise the TauSet
/// default is used.
ConcurrenceEstimate lower_bound(const ComplexMatrix& rho, const AOperator& a,
                                std::optional<std::vector<cdouble>> z = std::nullopt);

/// Quasi-pure approximation: tau_ij ~ <p1 p1|A|p_i p_j> normalized by the
/// highest-weight expectation, then the same algebraic solution. Requires a
/// nondegenerate largest eigenvalue of rho and a nonzero A-expectation of
/// its eigenstate.
ConcurrenceEstimate approx_lower(const ComplexMatrix& rho, const AOperator& a);

/// Sampled convex-roof upper bound: minimum of sum_i sqrt(sum_alpha
/// |[V T^alpha V^T]_ii|^2) over random left-unitary V (complex Gaussian QR,
/// row count alternating between rank and 2 x rank) with pairwise
/// Givens-style coordinate descent on the best starts. Deterministic for a
/// given seed; always >= the lower bound up to solver noise.
ConcurrenceEstimate convex_roof_upper(const ComplexMatrix& rho, const AOperator& a, int trials,
                                      std::uint64_t seed);

}  // namespace xylab
