#include "xylab/concurrence.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace xylab {

std::string to_string(ConcurrenceMethod m) {
    switch (m) {
        case ConcurrenceMethod::Wootters: return "wootters";
        case ConcurrenceMethod::PureClosed: return "pure-closed";
        case ConcurrenceMethod::PureTwoCopy: return "pure-twocopy";
        case ConcurrenceMethod::LowerBound: return "lower-bound";
        case ConcurrenceMethod::ApproxLower: return "approx-lower";
        case ConcurrenceMethod::SampledUpper: return "sampled-upper";
    }
    return "lower-bound";
}

namespace {

constexpr double kRankTruncation = 1e-12;

// Per-site two-copy basis: three triplets then the singlet, each reshaped
// to a 2x2 matrix over (copy-1 bit, copy-2 bit).
const ComplexMatrix& site_basis_matrix(int a) {
    static const double s = 1.0 / std::sqrt(2.0);
    static const ComplexMatrix u0(2, 2, {1.0, 0.0, 0.0, 0.0});
    static const ComplexMatrix u1(2, 2, {0.0, s, s, 0.0});
    static const ComplexMatrix u2(2, 2, {0.0, 0.0, 0.0, 1.0});
    static const ComplexMatrix u3(2, 2, {0.0, s, -s, 0.0});
    switch (a) {
        case 0: return u0;
        case 1: return u1;
        case 2: return u2;
        default: return u3;
    }
}

// w = (U_{a_1} x ... x U_{a_n}) v on a 2^n vector, applied site by site.
void apply_site_product(const std::vector<std::uint8_t>& site_basis, std::vector<cdouble>& v) {
    const int n = static_cast<int>(site_basis.size());
    const std::size_t dim = v.size();
    for (int j = 0; j < n; ++j) {
        const ComplexMatrix& u = site_basis_matrix(site_basis[j]);
        const std::size_t stride = std::size_t{1} << (n - 1 - j);  // bit of site j+1
        for (std::size_t base = 0; base < dim; ++base) {
            if (base & stride) continue;
            const cdouble lo = v[base];
            const cdouble hi = v[base | stride];
            v[base] = u(0, 0) * lo + u(0, 1) * hi;
            v[base | stride] = u(1, 0) * lo + u(1, 1) * hi;
        }
    }
}

void check_density_matrix(const ComplexMatrix& rho, const char* who) {
    if (!rho.is_square()) {
        throw std::invalid_argument(std::string(who) + ": density matrix must be square");
    }
    const double scale = std::max(1.0, rho.frobenius_norm());
    if (rho.hermiticity_defect() > 1e-8 * scale) {
        throw std::invalid_argument(std::string(who) + ": density matrix is not Hermitian");
    }
    if (std::abs(rho.trace().real() - 1.0) > 1e-8 || std::abs(rho.trace().imag()) > 1e-8) {
        throw std::invalid_argument(std::string(who) + ": density matrix trace is not 1");
    }
}

int qubit_count_of_dim(std::size_t dim, const char* who) {
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    if ((std::size_t{1} << n) != dim) {
        throw std::invalid_argument(std::string(who) + ": dimension is not a power of two");
    }
    return n;
}

// Subnormalized eigenvectors of rho, descending eigenvalue, truncated at
// kRankTruncation; column k has norm^2 = eigenvalue_k.
ComplexMatrix subnormalized_eigenvectors(const ComplexMatrix& rho, const char* who,
                                         std::vector<double>* eigenvalues_out = nullptr) {
    check_density_matrix(rho, who);
    const SpectralDecomposition spec = hermitian_eig(rho);
    if (spec.eigenvalues.front() < -1e-8) {
        throw std::invalid_argument(std::string(who) + ": density matrix is not PSD");
    }
    std::vector<std::size_t> keep;
    for (std::size_t k = spec.eigenvalues.size(); k-- > 0;) {
        if (spec.eigenvalues[k] > kRankTruncation) keep.push_back(k);  // descending
    }
    if (keep.empty()) {
        throw std::invalid_argument(std::string(who) + ": density matrix has no spectral weight");
    }
    const std::size_t dim = rho.rows();
    ComplexMatrix phi(dim, keep.size());
    for (std::size_t c = 0; c < keep.size(); ++c) {
        const double root = std::sqrt(spec.eigenvalues[keep[c]]);
        for (std::size_t r = 0; r < dim; ++r) {
            phi(r, c) = root * spec.eigenvectors(r, keep[c]);
        }
        if (eigenvalues_out) eigenvalues_out->push_back(spec.eigenvalues[keep[c]]);
    }
    return phi;
}

ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& m) {
    const SpectralDecomposition spec = hermitian_eig(m);
    const std::size_t n = m.rows();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double lam = std::max(spec.eigenvalues[k], 0.0);
        const double root = std::sqrt(lam);
        if (root == 0.0) continue;
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                out(r, c) += root * spec.eigenvectors(r, k) * std::conj(spec.eigenvectors(c, k));
    }
    return out;
}

double algebraic_bound(const std::vector<double>& sv) {
    if (sv.empty()) return 0.0;
    double rest = 0.0;
    for (std::size_t i = 1; i < sv.size(); ++i) rest += sv[i];
    return std::max(0.0, sv.front() - rest);
}

}  // namespace

std::pair<ComplexMatrix, ComplexMatrix> build_projectors() {
    // Two-copy single-site basis |00>,|01>,|10>,|11>.
    auto dyad = [](std::initializer_list<cdouble> v) {
        ComplexMatrix m(4, 4);
        std::vector<cdouble> vec(v);
        for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c) m(r, c) = vec[r] * std::conj(vec[c]);
        return m;
    };
    const ComplexMatrix pi0p = dyad({1.0, 0.0, 0.0, 1.0});
    const ComplexMatrix pi0m = dyad({1.0, 0.0, 0.0, -1.0});
    const ComplexMatrix pi1p = dyad({0.0, 1.0, 1.0, 0.0});
    const ComplexMatrix pi1m = dyad({0.0, 1.0, -1.0, 0.0});
    ComplexMatrix pplus = (pi0p + pi1p + pi0m) * cdouble{0.5, 0.0};
    ComplexMatrix pminus = pi1m * cdouble{0.5, 0.0};
    return {std::move(pplus), std::move(pminus)};
}

AOperator::AOperator(int n_qubits, Kind kind, std::map<std::uint32_t, double> weights)
    : n_qubits_(n_qubits), kind_(kind), weights_(std::move(weights)) {
    if (n_qubits < 1 || n_qubits > 12) {
        throw std::domain_error("AOperator: qubit count out of range");
    }
    for (const auto& [mask, p] : weights_) {
        const int pops = std::popcount(mask);
        if (mask == 0 || pops % 2 != 0 || mask >= (1u << n_qubits)) {
            throw std::domain_error("AOperator: minus masks must be nonzero with even popcount");
        }
        if (p < 0.0) throw std::domain_error("AOperator: weights must be nonnegative");
    }

    // Spectral terms: for every weighted minus mask, singlets on the mask
    // sites and any triplet assignment elsewhere.
    for (const auto& [mask, p] : weights_) {
        if (p == 0.0) continue;
        std::vector<int> plus_sites;
        for (int j = 0; j < n_qubits; ++j) {
            if (!(mask & (1u << (n_qubits - 1 - j)))) plus_sites.push_back(j);
        }
        const std::size_t combos = [&] {
            std::size_t c = 1;
            for (std::size_t i = 0; i < plus_sites.size(); ++i) c *= 3;
            return c;
        }();
        for (std::size_t combo = 0; combo < combos; ++combo) {
            SpectralTerm term;
            term.weight = p;
            term.site_basis.assign(n_qubits, 3);  // singlet by default
            std::size_t rem = combo;
            for (int site : plus_sites) {
                term.site_basis[site] = static_cast<std::uint8_t>(rem % 3);
                rem /= 3;
            }
            terms_.push_back(std::move(term));
        }
    }
}

AOperator AOperator::full(int n_qubits) {
    std::map<std::uint32_t, double> w;
    for (std::uint32_t mask = 1; mask < (1u << n_qubits); ++mask) {
        if (std::popcount(mask) % 2 == 0) w[mask] = 4.0;
    }
    if (w.empty()) throw std::domain_error("AOperator::full: needs at least two qubits");
    return AOperator(n_qubits, Kind::Full, std::move(w));
}

AOperator AOperator::multipartite(int n_qubits) {
    if (n_qubits % 2 != 0) {
        throw std::domain_error(
            "AOperator::multipartite: C^(n) is identically zero for odd n; A^(n) is defined "
            "for even n only");
    }
    std::map<std::uint32_t, double> w;
    w[(1u << n_qubits) - 1u] = std::pow(2.0, n_qubits);
    return AOperator(n_qubits, Kind::Multipartite, std::move(w));
}

AOperator AOperator::custom(int n_qubits, const std::map<std::uint32_t, double>& weights) {
    if (weights.empty()) throw std::domain_error("AOperator::custom: no weights given");
    return AOperator(n_qubits, Kind::Custom, weights);
}

ComplexMatrix AOperator::materialize() const {
    const auto [pplus, pminus] = build_projectors();

    if (kind_ == Kind::Full) {
        // The equivalent closed form 4(I - P+ x ... x P+).
        ComplexMatrix prod = pplus;
        for (int j = 1; j < n_qubits_; ++j) prod = kron(prod, pplus);
        ComplexMatrix out = ComplexMatrix::identity(prod.rows());
        out -= prod;
        out *= 4.0;
        return out;
    }

    ComplexMatrix out;
    bool first = true;
    for (const auto& [mask, p] : weights_) {
        if (p == 0.0) continue;
        ComplexMatrix term = (mask & (1u << (n_qubits_ - 1))) ? pminus : pplus;
        for (int j = 1; j < n_qubits_; ++j) {
            term = kron(term, (mask & (1u << (n_qubits_ - 1 - j))) ? pminus : pplus);
        }
        term *= p;
        if (first) {
            out = std::move(term);
            first = false;
        } else {
            out += term;
        }
    }
    return out;
}

ConcurrenceEstimate wootters(const ComplexMatrix& rho) {
    check_density_matrix(rho, "wootters");
    if (rho.rows() != 4) {
        throw std::invalid_argument("wootters: expects a two-qubit (4x4) density matrix");
    }
    // The lambda_k are the square roots of the eigenvalues of
    // R = rho (sy x sy) rho* (sy x sy); evaluating them as the singular
    // values of sqrt(rho) (sy x sy) conj(sqrt(rho)) avoids squaring noise
    // on rank-deficient states.
    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    const ComplexMatrix root = matrix_sqrt_psd(rho);
    std::vector<double> lam = singular_values(root * yy * root.conjugate());
    const double c = lam[0] - lam[1] - lam[2] - lam[3];
    return {std::max(c, 0.0), ConcurrenceMethod::Wootters};
}

ConcurrenceEstimate pure_twocopy(const PureState& psi, const AOperator& a) {
    if (psi.n_qubits() != a.n_qubits()) {
        throw std::invalid_argument("pure_twocopy: state and operator size mismatch");
    }
    // <psi x psi|A|psi x psi> = sum_alpha w_alpha |psi^T (x_j U_{a_j}) psi|^2;
    // only the factored spectral form is touched.
    double total = 0.0;
    for (const auto& term : a.spectral_terms()) {
        std::vector<cdouble> v = psi.amplitudes();
        apply_site_product(term.site_basis, v);
        cdouble overlap{0.0, 0.0};
        for (std::size_t i = 0; i < v.size(); ++i) overlap += psi[i] * v[i];
        total += term.weight * std::norm(overlap);
    }
    return {std::sqrt(std::max(total, 0.0)), ConcurrenceMethod::PureTwoCopy};
}

ConcurrenceEstimate pure_cn(const PureState& psi) {
    // (2^n - 2) - sum_S tr rho_S^2 = sum_S (1 - tr rho_S^2), and each
    // purity deficit equals 2 sum_{i<j} s_i^2 s_j^2 over the Schmidt
    // values of the bipartition. Summing products keeps separable states
    // at zero instead of burying them under cancellation noise.
    const int n = psi.n_qubits();
    const std::uint32_t full = (1u << n) - 1u;
    double total = 0.0;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
        const int nr = std::popcount(mask);
        ComplexMatrix m(std::size_t{1} << nr, std::size_t{1} << (n - nr));
        for (std::size_t idx = 0; idx < psi.dim(); ++idx) {
            std::size_t r = 0, c = 0;
            for (int q = 1; q <= n; ++q) {
                const std::size_t bit = (idx >> (n - q)) & 1u;
                if (mask & (1u << (q - 1))) {
                    r = (r << 1) | bit;
                } else {
                    c = (c << 1) | bit;
                }
            }
            m(r, c) = psi[idx];
        }
        const auto sv = singular_values(m);
        for (std::size_t i = 0; i < sv.size(); ++i) {
            for (std::size_t j = i + 1; j < sv.size(); ++j) {
                total += 2.0 * sv[i] * sv[i] * sv[j] * sv[j];
            }
        }
    }
    const double value = std::pow(2.0, 1.0 - 0.5 * n) * std::sqrt(std::max(total, 0.0));
    return {value, ConcurrenceMethod::PureClosed};
}

ConcurrenceEstimate pure_spinflip(const PureState& psi) {
    const int n = psi.n_qubits();
    if (n % 2 != 0) {
        throw std::domain_error("pure_spinflip: defined for even qubit numbers only");
    }
    // sy^{(x)n}|b> = i^n (-1)^{|b|} |~b>; i^n = +-1 for even n.
    const std::size_t dim = psi.dim();
    const double in_phase = (n % 4 == 0) ? 1.0 : -1.0;
    cdouble acc{0.0, 0.0};
    for (std::size_t b = 0; b < dim; ++b) {
        const double sign = (std::popcount(b) % 2 == 0) ? 1.0 : -1.0;
        acc += psi[b] * sign * psi[(dim - 1) ^ b];
    }
    return {std::abs(in_phase * acc), ConcurrenceMethod::PureClosed};
}

TauSet tau_matrices(const ComplexMatrix& rho, const AOperator& a) {
    const int n = qubit_count_of_dim(rho.rows(), "tau_matrices");
    if (n != a.n_qubits()) {
        throw std::invalid_argument("tau_matrices: state and operator size mismatch");
    }
    const ComplexMatrix phi = subnormalized_eigenvectors(rho, "tau_matrices");
    const ComplexMatrix phi_conj = phi.conjugate();
    const std::size_t r = phi.cols();
    const std::size_t dim = phi.rows();

    TauSet tau;
    tau.matrices.reserve(a.rank());
    for (const auto& term : a.spectral_terms()) {
        const double root_w = std::sqrt(term.weight);
        // Y = (x_j U_{a_j}) conj(Phi), then T = sqrt(w) Phi^H Y.
        ComplexMatrix t(r, r);
        std::vector<cdouble> col(dim);
        std::vector<std::vector<cdouble>> ycols(r);
        for (std::size_t k = 0; k < r; ++k) {
            for (std::size_t i = 0; i < dim; ++i) col[i] = phi_conj(i, k);
            apply_site_product(term.site_basis, col);
            ycols[k] = col;
        }
        for (std::size_t j = 0; j < r; ++j) {
            for (std::size_t k = 0; k < r; ++k) {
                cdouble acc{0.0, 0.0};
                for (std::size_t i = 0; i < dim; ++i) acc += std::conj(phi(i, j)) * ycols[k][i];
                t(j, k) = root_w * acc;
            }
        }
        tau.matrices.push_back(std::move(t));
    }

    // Default z: exact for rank-1 A, quasi-pure otherwise.
    const std::size_t ra = tau.matrices.size();
    tau.coefficients.assign(ra, cdouble{0.0, 0.0});
    if (ra == 1) {
        tau.coefficients[0] = 1.0;
    } else {
        double denom2 = 0.0;
        for (const auto& t : tau.matrices) denom2 += std::norm(t(0, 0));
        if (denom2 > 1e-28) {
            const double inv = 1.0 / std::sqrt(denom2);
            for (std::size_t al = 0; al < ra; ++al) {
                tau.coefficients[al] = std::conj(tau.matrices[al](0, 0)) * inv;
            }
        } else {
            const double u = 1.0 / std::sqrt(static_cast<double>(ra));
            for (auto& z : tau.coefficients) z = u;
        }
    }
    return tau;
}

ConcurrenceEstimate lower_bound(const ComplexMatrix& rho, const AOperator& a,
                                std::optional<std::vector<cdouble>> z) {
    TauSet tau = tau_matrices(rho, a);
    if (z) {
        if (z->size() != tau.matrices.size()) {
            throw std::invalid_argument("lower_bound: z length must equal rank of A");
        }
        double n2 = 0.0;
        for (const auto& c : *z) n2 += std::norm(c);
        if (std::abs(n2 - 1.0) > 1e-10) {
            throw std::invalid_argument("lower_bound: z must have unit norm");
        }
        tau.coefficients = *z;
    }
    const std::size_t r = tau.matrices.front().rows();
    ComplexMatrix combined(r, r);
    for (std::size_t al = 0; al < tau.matrices.size(); ++al) {
        if (tau.coefficients[al] == cdouble{0.0, 0.0}) continue;
        combined += tau.matrices[al] * tau.coefficients[al];
    }
    return {algebraic_bound(singular_values(combined)), ConcurrenceMethod::LowerBound};
}

ConcurrenceEstimate approx_lower(const ComplexMatrix& rho, const AOperator& a) {
    std::vector<double> eigenvalues;
    const ComplexMatrix phi = subnormalized_eigenvectors(rho, "approx_lower", &eigenvalues);
    if (eigenvalues.size() > 1 && eigenvalues[0] - eigenvalues[1] <= 1e-10) {
        throw std::invalid_argument(
            "approx_lower: largest eigenvalue of rho is degenerate; the quasi-pure "
            "approximation is undefined");
    }

    // tau_ij = sum_alpha T^alpha_11 conj(T^alpha_ij) / sqrt(sum_alpha |T^alpha_11|^2),
    // assembled directly from two-copy matrix elements of A.
    const TauSet tau = tau_matrices(rho, a);
    const std::size_t r = tau.matrices.front().rows();
    double denom2 = 0.0;
    for (const auto& t : tau.matrices) denom2 += std::norm(t(0, 0));
    if (denom2 < 1e-28) {
        throw std::invalid_argument(
            "approx_lower: the highest-weight eigenstate has vanishing A-expectation; "
            "quasi-pure approximation is degenerate");
    }
    const double inv = 1.0 / std::sqrt(denom2);
    ComplexMatrix qp(r, r);
    for (const auto& t : tau.matrices) {
        const cdouble t11 = t(0, 0);
        if (t11 == cdouble{0.0, 0.0}) continue;
        for (std::size_t i = 0; i < r; ++i)
            for (std::size_t j = 0; j < r; ++j) qp(i, j) += t11 * std::conj(t(i, j)) * inv;
    }
    return {algebraic_bound(singular_values(qp)), ConcurrenceMethod::ApproxLower};
}

namespace {

// State of the sampled-roof objective for one left-unitary V (rows are
// decomposition members). diag[alpha][i] caches [V T^alpha V^T]_ii.
struct RoofWork {
    ComplexMatrix v;  // m x r
    std::vector<std::vector<cdouble>> diag;
    double objective = 0.0;
};

double row_contribution(const std::vector<std::vector<cdouble>>& diag, std::size_t i) {
    double s = 0.0;
    for (const auto& d : diag) s += std::norm(d[i]);
    return std::sqrt(s);
}

void recompute_diag(const std::vector<ComplexMatrix>& ts, RoofWork& w) {
    const std::size_t m = w.v.rows(), r = w.v.cols();
    w.diag.assign(ts.size(), std::vector<cdouble>(m, cdouble{0.0, 0.0}));
    for (std::size_t al = 0; al < ts.size(); ++al) {
        for (std::size_t i = 0; i < m; ++i) {
            cdouble acc{0.0, 0.0};
            for (std::size_t j = 0; j < r; ++j) {
                cdouble tv{0.0, 0.0};
                for (std::size_t k = 0; k < r; ++k) tv += ts[al](j, k) * w.v(i, k);
                acc += w.v(i, j) * tv;
            }
            w.diag[al][i] = acc;
        }
    }
    w.objective = 0.0;
    for (std::size_t i = 0; i < m; ++i) w.objective += row_contribution(w.diag, i);
}

ComplexMatrix random_left_unitary(std::size_t m, std::size_t r, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix v(m, r);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < r; ++j) v(i, j) = cdouble{gauss(rng), gauss(rng)};
    // Modified Gram-Schmidt on columns.
    for (std::size_t c = 0; c < r; ++c) {
        for (std::size_t p = 0; p < c; ++p) {
            cdouble proj{0.0, 0.0};
            for (std::size_t i = 0; i < m; ++i) proj += std::conj(v(i, p)) * v(i, c);
            for (std::size_t i = 0; i < m; ++i) v(i, c) -= proj * v(i, p);
        }
        double n2 = 0.0;
        for (std::size_t i = 0; i < m; ++i) n2 += std::norm(v(i, c));
        const double inv = 1.0 / std::sqrt(n2);
        for (std::size_t i = 0; i < m; ++i) v(i, c) *= inv;
    }
    return v;
}

// One pairwise step on rows (i, j): tries a grid of Givens angles/phases
// plus, for a single tau matrix, the exact 2x2 Takagi minimizer. Returns
// the improvement.
double pair_step(const std::vector<ComplexMatrix>& ts, RoofWork& w, std::size_t i,
                 std::size_t j) {
    const std::size_t r = w.v.cols();
    const std::size_t na = ts.size();

    // Cross terms c_alpha = [V T V^T]_ij for each alpha.
    std::vector<cdouble> cross(na);
    for (std::size_t al = 0; al < na; ++al) {
        cdouble acc{0.0, 0.0};
        for (std::size_t p = 0; p < r; ++p) {
            cdouble tv{0.0, 0.0};
            for (std::size_t k = 0; k < r; ++k) tv += ts[al](p, k) * w.v(j, k);
            acc += w.v(i, p) * tv;
        }
        cross[al] = acc;
    }

    const double before = row_contribution(w.diag, i) + row_contribution(w.diag, j);

    auto candidate_cost = [&](double ct, cdouble se /* s * e^{i phi} */, double& cost,
                              std::vector<cdouble>& na_new, std::vector<cdouble>& nb_new) {
        double sa = 0.0, sb = 0.0;
        for (std::size_t al = 0; al < na; ++al) {
            const cdouble a = w.diag[al][i], b = w.diag[al][j], c = cross[al];
            const cdouble a2 = ct * ct * a - 2.0 * ct * se * c + se * se * b;
            const cdouble b2 = std::conj(se) * std::conj(se) * a + 2.0 * ct * std::conj(se) * c +
                               ct * ct * b;
            na_new[al] = a2;
            nb_new[al] = b2;
            sa += std::norm(a2);
            sb += std::norm(b2);
        }
        cost = std::sqrt(sa) + std::sqrt(sb);
    };

    double best_cost = before;
    double best_ct = 1.0;
    cdouble best_se{0.0, 0.0};
    std::vector<cdouble> best_a(na), best_b(na), tmp_a(na), tmp_b(na);
    bool found = false;

    const bool analytic = (na == 1);
    if (analytic) {
        // Exact 2x2 symmetric Takagi step on B = [[a, c], [c, b]].
        const cdouble a = w.diag[0][i], b = w.diag[0][j], c = cross[0];
        // H = conj(B) B is Hermitian PSD with eigenvalues sigma^2.
        const cdouble h00 = std::conj(a) * a + std::conj(c) * c;
        const cdouble h01 = std::conj(a) * c + std::conj(c) * b;
        const cdouble h11 = std::conj(c) * c + std::conj(b) * b;
        const double tr = h00.real() + h11.real();
        const double det = (h00 * h11 - h01 * std::conj(h01)).real();
        const double disc = std::sqrt(std::max(tr * tr / 4.0 - det, 0.0));
        const double s1 = std::sqrt(std::max(tr / 2.0 + disc, 0.0));
        const double s2 = std::sqrt(std::max(tr / 2.0 - disc, 0.0));
        const double target = s1 - s2;
        if (target < before - 1e-15) {
            // Eigenvector of H for the larger eigenvalue gives conj(U);
            // phases fixed so that U^dagger B conj(U) is real nonnegative.
            cdouble e0, e1;
            const double l1 = tr / 2.0 + disc;
            if (std::abs(h01) > 1e-300) {
                e0 = h01;
                e1 = cdouble{l1, 0.0} - h00;
            } else if (h00.real() >= h11.real()) {
                e0 = 1.0;
                e1 = 0.0;
            } else {
                e0 = 0.0;
                e1 = 1.0;
            }
            double en = std::sqrt(std::norm(e0) + std::norm(e1));
            e0 /= en;
            e1 /= en;
            // Orthogonal partner.
            const cdouble f0 = -std::conj(e1), f1 = std::conj(e0);
            // Rows of W = U^dagger: W B W^T should be diag(d1, d2).
            // U = conj([e f]) so W = [e f]^T.
            cdouble w00 = e0, w01 = e1, w10 = f0, w11 = f1;
            auto congr = [&](cdouble x0, cdouble x1, cdouble y0, cdouble y1) {
                return x0 * (a * y0 + c * y1) + x1 * (c * y0 + b * y1);
            };
            cdouble d1 = congr(w00, w01, w00, w01);
            cdouble d2 = congr(w10, w11, w10, w11);
            // Phase-align both diagonal entries to be real nonnegative.
            auto half_phase = [](cdouble d) {
                const double m = std::abs(d);
                if (m < 1e-300) return cdouble{1.0, 0.0};
                return std::exp(cdouble{0.0, -0.5 * std::arg(d)});
            };
            const cdouble p1 = half_phase(d1), p2 = half_phase(d2);
            w00 *= p1;
            w01 *= p1;
            w10 *= p2;
            w11 *= p2;
            // Difference trick: G = (1/sqrt2) [[1, i],[i, 1]] W.
            const double isq = 1.0 / std::sqrt(2.0);
            const cdouble iu{0.0, 1.0};
            const cdouble g00 = isq * (w00 + iu * w10), g01 = isq * (w01 + iu * w11);
            const cdouble g10 = isq * (iu * w00 + w10), g11 = isq * (iu * w01 + w11);
            // Apply to rows i, j of V and recompute the two diagonal entries.
            std::vector<cdouble> row_i(r), row_j(r);
            for (std::size_t k = 0; k < r; ++k) {
                row_i[k] = g00 * w.v(i, k) + g01 * w.v(j, k);
                row_j[k] = g10 * w.v(i, k) + g11 * w.v(j, k);
            }
            auto diag_entry = [&](const std::vector<cdouble>& row) {
                cdouble acc{0.0, 0.0};
                for (std::size_t p = 0; p < r; ++p) {
                    cdouble tv{0.0, 0.0};
                    for (std::size_t k = 0; k < r; ++k) tv += ts[0](p, k) * row[k];
                    acc += row[p] * tv;
                }
                return acc;
            };
            const cdouble da = diag_entry(row_i), db = diag_entry(row_j);
            const double cost = std::abs(da) + std::abs(db);
            if (cost < best_cost - 1e-15) {
                for (std::size_t k = 0; k < r; ++k) {
                    w.v(i, k) = row_i[k];
                    w.v(j, k) = row_j[k];
                }
                w.diag[0][i] = da;
                w.diag[0][j] = db;
                w.objective += cost - before;
                return before - cost;
            }
            // Predicted an improvement but the constructed rotation missed
            // it (degenerate Takagi phases); let the grid rescue the pair.
        } else {
            return 0.0;  // sigma1 - sigma2 is the true 2x2 optimum
        }
    }

    constexpr int kThetaSteps = 8;
    constexpr int kPhiSteps = 8;
    for (int it = 1; it < kThetaSteps; ++it) {
        const double theta = M_PI * it / (2.0 * kThetaSteps);
        const double ct = std::cos(theta), st = std::sin(theta);
        for (int ip = 0; ip < kPhiSteps; ++ip) {
            const double phi = 2.0 * M_PI * ip / kPhiSteps;
            const cdouble se = st * std::exp(cdouble{0.0, phi});
            double cost;
            candidate_cost(ct, se, cost, tmp_a, tmp_b);
            if (cost < best_cost - 1e-15) {
                best_cost = cost;
                best_ct = ct;
                best_se = se;
                best_a = tmp_a;
                best_b = tmp_b;
                found = true;
            }
        }
    }
    if (!found) return 0.0;

    // Commit: rows (i, j) <- G rows with G = [[ct, -se],[conj(se), ct]].
    for (std::size_t k = 0; k < r; ++k) {
        const cdouble vi = w.v(i, k), vj = w.v(j, k);
        w.v(i, k) = best_ct * vi - best_se * vj;
        w.v(j, k) = std::conj(best_se) * vi + best_ct * vj;
    }
    for (std::size_t al = 0; al < ts.size(); ++al) {
        w.diag[al][i] = best_a[al];
        w.diag[al][j] = best_b[al];
    }
    const double gain = before - best_cost;
    w.objective -= gain;
    return gain;
}

}  // namespace

ConcurrenceEstimate convex_roof_upper(const ComplexMatrix& rho, const AOperator& a, int trials,
                                      std::uint64_t seed) {
    if (trials < 1) throw std::domain_error("convex_roof_upper: trials must be >= 1");
    const TauSet tau = tau_matrices(rho, a);
    const std::vector<ComplexMatrix>& ts = tau.matrices;
    const std::size_t r = ts.front().rows();

    if (r == 1) {
        // Pure state: every decomposition reproduces the same value.
        double s = 0.0;
        for (const auto& t : ts) s += std::norm(t(0, 0));
        return {std::sqrt(s), ConcurrenceMethod::SampledUpper};
    }

    std::mt19937_64 rng(seed);
    std::vector<RoofWork> starts;
    starts.reserve(trials + 1);

    for (int t = 0; t < trials; ++t) {
        const std::size_t m = (t % 2 == 0) ? r : 2 * r;
        RoofWork w;
        w.v = random_left_unitary(m, r, rng);
        recompute_diag(ts, w);
        starts.push_back(std::move(w));
    }
    // Identity start: the eigenstate decomposition itself.
    {
        RoofWork w;
        w.v = ComplexMatrix::identity(r);
        recompute_diag(ts, w);
        starts.push_back(std::move(w));
    }

    std::sort(starts.begin(), starts.end(),
              [](const RoofWork& a, const RoofWork& b) { return a.objective < b.objective; });

    // Coordinate descent on the most promising starts; a single basin can
    // trap the pairwise sweeps, several starts rarely all do.
    const std::size_t refine = std::min<std::size_t>(starts.size(), 4);
    double best = starts.front().objective;
    for (std::size_t s = 0; s < refine; ++s) {
        RoofWork& w = starts[s];
        const std::size_t m = w.v.rows();
        for (int sweep = 0; sweep < 60; ++sweep) {
            double improved = 0.0;
            for (std::size_t i = 0; i + 1 < m; ++i)
                for (std::size_t j = i + 1; j < m; ++j) improved += pair_step(ts, w, i, j);
            if (improved < 1e-10) break;
        }
        best = std::min(best, w.objective);
    }
    return {best, ConcurrenceMethod::SampledUpper};
}

}  // namespace xylab
