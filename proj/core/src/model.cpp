#include "xylab/model.hpp"

#include <cmath>
#include <stdexcept>

namespace xylab {

namespace {

constexpr double kSingularTol = 1e-8;  // limit-branch threshold for gamma, eta

// Operator acting as `op` on qubit `site` (1-based) of an n-qubit register.
ComplexMatrix site_operator(int n, int site, const ComplexMatrix& op) {
    ComplexMatrix out = (site == 1) ? op : identity2();
    for (int j = 2; j <= n; ++j) {
        out = kron(out, (j == site) ? op : identity2());
    }
    return out;
}

ComplexMatrix two_site_operator(int n, int site_a, int site_b, const ComplexMatrix& op) {
    ComplexMatrix out = (site_a == 1 || site_b == 1) ? op : identity2();
    for (int j = 2; j <= n; ++j) {
        out = kron(out, (j == site_a || j == site_b) ? op : identity2());
    }
    return out;
}

PureState assemble_state(int n, const std::vector<std::pair<std::size_t, double>>& components) {
    std::vector<cdouble> amp(std::size_t{1} << n, cdouble{0.0, 0.0});
    for (const auto& [idx, coeff] : components) amp[idx] += coeff;
    return PureState::normalized(n, std::move(amp));
}

}  // namespace

void ModelParams::validate() const {
    if (n_qubits < 2 || n_qubits % 2 != 0) {
        throw std::domain_error("ModelParams: chain size must be even and >= 2");
    }
    if (std::abs(gamma) > 1.0 + 1e-12) {
        throw std::domain_error("ModelParams: |gamma| must not exceed 1");
    }
    if (coupling == 0.0 || !std::isfinite(coupling)) {
        throw std::domain_error("ModelParams: coupling J must be nonzero and finite");
    }
    if (!std::isfinite(gamma) || !std::isfinite(eta)) {
        throw std::domain_error("ModelParams: parameters must be finite");
    }
}

std::string to_string(StateFamily f) {
    switch (f) {
        case StateFamily::GhzLike: return "GHZ-like";
        case StateFamily::WLike: return "W-like";
        case StateFamily::Product: return "product";
        case StateFamily::Generic: return "generic";
    }
    return "generic";
}

ComplexMatrix build_hamiltonian(const ModelParams& p) {
    p.validate();
    const int n = p.n_qubits;
    if ((std::size_t{1} << n) > kDimensionCap) {
        throw std::length_error("build_hamiltonian: dimension exceeds cap 2^12");
    }
    const double j = p.coupling;
    const double xc = 0.5 * j * (1.0 + p.gamma);
    const double yc = 0.5 * j * (1.0 - p.gamma);
    const double zc = 0.5 * j * p.eta;

    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix h(dim, dim);

    // Periodic bonds (j, j+1); a two-site ring has a single bond.
    const int bonds = (n == 2) ? 1 : n;
    for (int b = 1; b <= bonds; ++b) {
        const int s1 = b;
        const int s2 = (b % n) + 1;
        h += xc * two_site_operator(n, s1, s2, pauli_x());
        h += yc * two_site_operator(n, s1, s2, pauli_y());
    }
    for (int s = 1; s <= n; ++s) {
        h += zc * site_operator(n, s, pauli_z());
    }
    return h;
}

std::vector<LabeledEigenpair> two_qubit_eigensystem(const ModelParams& p) {
    p.validate();
    if (p.n_qubits != 2) throw std::domain_error("two_qubit_eigensystem: requires n = 2");

    const double j = p.coupling;
    const double bm = p.eta * j;
    const double bfield = std::sqrt(p.eta * p.eta + p.gamma * p.gamma) * j;  // curly-B
    const double gj = p.gamma * j;

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    PureState phi1(2, {0.0, inv_sqrt2, inv_sqrt2, 0.0});
    PureState phi2(2, {0.0, inv_sqrt2, -inv_sqrt2, 0.0});

    // Two algebraically equivalent forms for Phi0/Phi3; pick the one whose
    // normalization stays away from zero so gamma -> 0 is exact.
    std::vector<cdouble> a0(4, 0.0), a3(4, 0.0);
    const double splus = std::hypot(bfield + bm, gj);
    const double sminus = std::hypot(bfield - bm, gj);
    if (splus >= sminus && splus > 0.0) {
        a0[0] = (bfield + bm) / splus;
        a0[3] = gj / splus;
        a3[0] = gj / splus;
        a3[3] = -(bfield + bm) / splus;
    } else if (sminus > 0.0) {
        a0[0] = gj / sminus;
        a0[3] = (bfield - bm) / sminus;
        a3[0] = (bfield - bm) / sminus;
        a3[3] = -gj / sminus;
    } else {
        // gamma = eta = 0: Bell-state limit.
        a0[0] = inv_sqrt2;
        a0[3] = inv_sqrt2;
        a3[0] = inv_sqrt2;
        a3[3] = -inv_sqrt2;
    }
    PureState phi0(2, std::move(a0));
    PureState phi3(2, std::move(a3));

    const bool product = std::abs(p.gamma) < kSingularTol;
    std::vector<LabeledEigenpair> out;
    out.push_back({"Phi0", "Phi0", bfield, phi0, product ? StateFamily::Product : StateFamily::GhzLike});
    out.push_back({"Phi1", "Phi1", j, phi1, StateFamily::WLike});
    out.push_back({"Phi2", "Phi2", -j, phi2, StateFamily::WLike});
    out.push_back({"Phi3", "Phi3", -bfield, phi3, product ? StateFamily::Product : StateFamily::GhzLike});
    return out;
}

namespace {

// Shared pieces of the closed four-qubit eigensystem, arranged so that no
// large-eta cancellation survives: the discriminant factors exactly as
// D^2 = ((eta-sqrt2)^2 + 2 gamma^2)((eta+sqrt2)^2 + 2 gamma^2), and the
// small combinations (2 eta - omega+), omega+^2 - 8, omega-^2 - 8 are
// rewritten through D - Y and D + Y with Y = eta^2 - 2(1+gamma^2),
// using D^2 - Y^2 = 8 eta^2 gamma^2.
struct OmegaParts {
    double x = 0.0;             // eta^2 + 2(1+gamma^2)
    double d = 0.0;             // sqrt(x^2 - 8 eta^2), factored form
    double w_plus = 0.0;        // omega+
    double w_minus = 0.0;       // omega-
    double u = 0.0;             // 2 eta + omega+
    double v = 0.0;             // 2 eta - omega+, cancellation-free
    double wp2m8 = 0.0;         // omega+^2 - 8
    double wm2m8 = 0.0;         // omega-^2 - 8
    double two_eta_minus_wm = 0.0;
};

OmegaParts omega_parts(double gamma, double eta) {
    const double g2 = gamma * gamma;
    const double e2 = eta * eta;
    const double r2 = std::sqrt(2.0);

    OmegaParts p;
    p.x = e2 + 2.0 * (1.0 + g2);
    p.d = std::sqrt(((eta - r2) * (eta - r2) + 2.0 * g2) *
                    ((eta + r2) * (eta + r2) + 2.0 * g2));
    p.w_plus = std::sqrt(2.0 * (p.x + p.d));
    p.w_minus = 4.0 * eta / std::sqrt(p.x + p.d);

    const double y = e2 - 2.0 * (1.0 + g2);
    const double d_minus_y = (y > 0.0) ? 8.0 * e2 * g2 / (p.d + y) : p.d - y;
    p.u = 2.0 * eta + p.w_plus;
    p.v = -2.0 * d_minus_y / p.u;

    const double xm4 = p.x - 4.0;  // eta^2 + 2 gamma^2 - 2
    p.wp2m8 = (xm4 >= 0.0) ? 2.0 * (xm4 + p.d) : 32.0 * g2 / (p.d - xm4);
    p.wm2m8 = -8.0 * d_minus_y / (p.x + p.d);

    const double root_xd = std::sqrt(p.x + p.d);
    p.two_eta_minus_wm = eta * p.wp2m8 / (root_xd * (root_xd + 2.0));
    return p;
}

double triplet_norm(const double c[3]) {
    return 1.0 / std::sqrt(1.0 + c[0] * c[0] + 4.0 * c[1] * c[1] + 2.0 * c[2] * c[2]);
}

}  // namespace

FourQubitCoefficients four_qubit_coefficients(const ModelParams& p) {
    p.validate();
    if (p.n_qubits != 4) throw std::domain_error("four_qubit_coefficients: requires n = 4");
    if (p.eta < 0.0) {
        throw std::domain_error(
            "four_qubit_coefficients: coefficients are defined for eta >= 0 (negative "
            "fields map through a global spin flip)");
    }
    const double gamma = p.gamma;
    const double eta = p.eta;
    const double g2 = gamma * gamma;

    FourQubitCoefficients c;
    const OmegaParts op = omega_parts(gamma, eta);
    c.omega_plus = op.w_plus;
    c.omega_minus = op.w_minus;

    // alpha^- in rationalized form, exact for all gamma (including 0 at eta>0).
    const double root = std::sqrt(eta * eta + 4.0 * g2);
    c.alpha_minus = (root + eta > 0.0) ? 2.0 * gamma / (root + eta) : 0.0;

    if (std::abs(gamma) < kSingularTol) {
        if (std::abs(eta) < kSingularTol) {
            throw std::invalid_argument(
                "four_qubit_coefficients: gamma = eta = 0 leaves the Omega/Delta "
                "coefficients undefined");
        }
        // XX line: alpha^+ diverges and the Omega/Delta sets lose meaning.
        throw std::invalid_argument(
            "four_qubit_coefficients: Omega/Delta coefficients require gamma != 0");
    }
    c.alpha_plus = (root + eta) / (2.0 * gamma);

    c.omega_coeff_plus[1] = op.u / (4.0 * gamma);
    c.omega_coeff_minus[1] = op.v / (4.0 * gamma);
    c.omega_coeff_plus[2] = op.u / (gamma * op.w_plus);
    c.omega_coeff_minus[2] = -op.v / (gamma * op.w_plus);

    if (std::abs(eta) < kSingularTol) {
        // Analytic eta -> 0 branch (the raw Omega_1 and Delta expressions
        // are 0/0 here).
        c.omega_coeff_plus[0] = 1.0;
        c.omega_coeff_minus[0] = 1.0;
        // Delta set via omega^- ~ c0 * eta with c0 = 2/sqrt(1+gamma^2).
        const double c0 = 2.0 / std::sqrt(1.0 + g2);
        for (int s : {+1, -1}) {
            double* t = (s > 0) ? c.delta_coeff_plus : c.delta_coeff_minus;
            const double sd = static_cast<double>(s);
            t[0] = -((2.0 + sd * c0) + g2 * (1.0 + sd * c0)) / g2;
            t[1] = 0.0;
            t[2] = sd * (2.0 + sd * c0) / (gamma * c0);
        }
    } else {
        const double denom = 8.0 * g2 * eta;
        c.omega_coeff_plus[0] = (op.u * op.wp2m8 - 8.0 * g2 * (eta + op.w_plus)) / denom;
        c.omega_coeff_minus[0] = (op.v * op.wp2m8 - 8.0 * g2 * (eta - op.w_plus)) / denom;

        const double two_eta_plus_wm = 2.0 * eta + op.w_minus;
        c.delta_coeff_plus[0] = (two_eta_plus_wm * op.wm2m8 - 8.0 * g2 * (eta + op.w_minus)) / denom;
        c.delta_coeff_minus[0] =
            (op.two_eta_minus_wm * op.wm2m8 - 8.0 * g2 * (eta - op.w_minus)) / denom;
        c.delta_coeff_plus[1] = two_eta_plus_wm / (4.0 * gamma);
        c.delta_coeff_minus[1] = op.two_eta_minus_wm / (4.0 * gamma);
        c.delta_coeff_plus[2] = two_eta_plus_wm / (gamma * op.w_minus);
        c.delta_coeff_minus[2] = -op.two_eta_minus_wm / (gamma * op.w_minus);
    }

    c.norm_omega_plus = triplet_norm(c.omega_coeff_plus);
    c.norm_omega_minus = triplet_norm(c.omega_coeff_minus);
    c.norm_delta_plus = triplet_norm(c.delta_coeff_plus);
    c.norm_delta_minus = triplet_norm(c.delta_coeff_minus);
    return c;
}

namespace {

// Basis indices (qubit 1 = MSB) of the GHZ-sector component pattern
// c1|0000> + c2(|0011>+|0110>+|1001>+|1100>) + c3(|0101>+|1010>) + |1111>.
PureState ghz_sector_state(const double t[3]) {
    return assemble_state(4, {{0, t[0]},
                              {3, t[1]},
                              {5, t[2]},
                              {6, t[1]},
                              {9, t[1]},
                              {10, t[2]},
                              {12, t[1]},
                              {15, 1.0}});
}

// Global spin flip |b> -> |~b>; maps the eta < 0 eigensystem onto eta > 0.
PureState spin_flipped(const PureState& s) {
    const std::size_t dim = s.dim();
    std::vector<cdouble> amp(dim);
    for (std::size_t b = 0; b < dim; ++b) amp[b] = s[(dim - 1) ^ b];
    return PureState(s.n_qubits(), std::move(amp));
}

}  // namespace

std::vector<LabeledEigenpair> four_qubit_eigensystem(const ModelParams& p) {
    if (p.eta < 0.0) {
        ModelParams flipped = p;
        flipped.eta = -p.eta;
        auto sys = four_qubit_eigensystem(flipped);
        for (auto& s : sys) s.state = spin_flipped(s.state);
        return sys;
    }
    const FourQubitCoefficients c = four_qubit_coefficients(p);
    const double j = p.coupling;
    const double am = c.alpha_minus;
    const double chi = std::sqrt(p.eta * p.eta + 4.0 * p.gamma * p.gamma);  // (a+ + a-) gamma

    std::vector<LabeledEigenpair> out;
    auto add = [&out](std::string label, std::string source, double energy, PureState st,
                      StateFamily fam) {
        out.push_back({std::move(label), std::move(source), energy, std::move(st), fam});
    };

    add("Phi0", "Phi0", c.omega_plus * j, ghz_sector_state(c.omega_coeff_plus),
        StateFamily::GhzLike);

    // Phi1/Phi2 written in terms of alpha^- (coefficients of the alpha^+ form
    // divided by alpha^+), which stays finite for all gamma. The +2 branch
    // is the uniform one-magnon combination, the -2 branch the alternating
    // one; the eigen-residuals pin this assignment.
    add("Phi1", "Phi1", (chi + 2.0) * j,
        assemble_state(4, {{1, 1.0}, {2, 1.0}, {4, 1.0}, {7, am}, {8, 1.0}, {11, am}, {13, am}, {14, am}}),
        StateFamily::Generic);
    add("Phi2", "Phi2", (chi - 2.0) * j,
        assemble_state(4, {{1, 1.0}, {2, -1.0}, {4, 1.0}, {7, am}, {8, -1.0}, {11, -am}, {13, am}, {14, -am}}),
        StateFamily::Generic);

    add("Phi3", "Phi3", p.eta * j,
        assemble_state(4, {{1, 0.5}, {2, 0.5}, {4, -0.5}, {8, -0.5}}), StateFamily::WLike);
    add("Phi4", "Phi4", p.eta * j,
        assemble_state(4, {{1, 0.5}, {2, -0.5}, {4, -0.5}, {8, 0.5}}), StateFamily::WLike);

    const double s2 = 1.0 / std::sqrt(2.0);
    add("Phi6", "Phi6", 0.0, assemble_state(4, {{3, s2}, {12, -s2}}), StateFamily::GhzLike);
    add("Phi7", "Phi7", 0.0, assemble_state(4, {{5, s2}, {10, -s2}}), StateFamily::GhzLike);
    add("Phi8", "Phi8", 0.0, assemble_state(4, {{6, s2}, {9, -s2}}), StateFamily::GhzLike);
    add("Phi9", "Phi9", 0.0,
        assemble_state(4, {{3, 0.5}, {6, -0.5}, {9, -0.5}, {12, 0.5}}), StateFamily::Product);

    // The Delta pair: the source indexing reuses 10/11 for these states, so
    // they carry distinct labels here and the original ones as source_label.
    add("PhiDeltaPlus", "Phi10/11 (+)", c.omega_minus * j, ghz_sector_state(c.delta_coeff_plus),
        StateFamily::GhzLike);
    add("PhiDeltaMinus", "Phi10/11 (-)", -c.omega_minus * j, ghz_sector_state(c.delta_coeff_minus),
        StateFamily::GhzLike);

    add("Phi11", "Phi11", -p.eta * j,
        assemble_state(4, {{7, 0.5}, {11, 0.5}, {13, -0.5}, {14, -0.5}}), StateFamily::WLike);
    add("Phi12", "Phi12", -p.eta * j,
        assemble_state(4, {{7, 0.5}, {11, -0.5}, {13, -0.5}, {14, 0.5}}), StateFamily::WLike);

    add("Phi13", "Phi13", -(chi - 2.0) * j,
        assemble_state(4, {{1, -am}, {2, -am}, {4, -am}, {7, 1.0}, {8, -am}, {11, 1.0}, {13, 1.0}, {14, 1.0}}),
        StateFamily::Generic);
    add("Phi14", "Phi14", -(chi + 2.0) * j,
        assemble_state(4, {{1, -am}, {2, am}, {4, -am}, {7, 1.0}, {8, am}, {11, -1.0}, {13, 1.0}, {14, -1.0}}),
        StateFamily::Generic);

    add("Phi15", "Phi15", -c.omega_plus * j, ghz_sector_state(c.omega_coeff_minus),
        StateFamily::GhzLike);
    return out;
}

namespace {

SixQubitCoefficients six_qubit_coefficients(double gamma, double eta) {
    // Everything at J = 1; the assembled state is J-independent.
    SixQubitCoefficients c;
    const double g2 = gamma * gamma;
    const double e2 = eta * eta;

    c.kappa = std::sqrt(g2 * g2 + (e2 - 3.0) * (e2 - 3.0) + 2.0 * g2 * (3.0 + e2));
    const double inner = (4.0 * g2 + e2) * (3.0 + g2 + e2 + c.kappa);
    c.lambda6 = std::sqrt(3.0 * (2.0 + 2.0 * g2 + e2) + 2.0 * c.kappa +
                          2.0 * std::sqrt(2.0) * std::sqrt(std::max(inner, 0.0)));
    const double l = c.lambda6;

    c.tau6 = -8.0 * l * eta * (l * l - (6.0 - 2.0 * g2 + e2));
    c.zeta6 = 4.0 * l * (l * l * (g2 - 1.0) - (4.0 * g2 * g2 - 9.0 * e2 - 4.0 * g2 + g2 * e2));

    const double t8 = l * l * l * l - 2.0 * l * l * (2.0 + 2.0 * g2 + e2) +
                      e2 * (e2 - 12.0) + 4.0 * g2 * (e2 + 4.0);
    c.theta[7] = t8;

    const double t1 = ((24.0 - (l - 3.0 * eta) * (l - eta)) * t8 + 2.0 * (l - eta) * c.zeta6 +
                       8.0 * c.tau6) /
                      (2.0 * gamma * (l + 3.0 * eta));
    c.theta[0] = t1;
    c.theta[1] = -(l + 3.0 * eta) * t1 / (6.0 * gamma);
    c.theta[2] = -((l + 3.0 * eta) * t8 + (l - eta) * c.tau6 + 2.0 * c.zeta6) / (6.0 * g2);
    c.theta[3] = (3.0 * (2.0 - g2) * t8 + (l - eta) * c.zeta6 + 2.0 * c.tau6) / (3.0 * g2);
    c.theta[4] = -(l - 3.0 * eta) * t8 / (6.0 * gamma);
    c.theta[5] = (3.0 * t8 + c.tau6) / (3.0 * gamma);
    c.theta[6] = -((l - 3.0 * eta) * t8 - 2.0 * c.zeta6) / (6.0 * gamma);

    double norm2 = c.theta[0] * c.theta[0] + c.theta[7] * c.theta[7] +
                   3.0 * (2.0 * c.theta[1] * c.theta[1] + 2.0 * c.theta[2] * c.theta[2] +
                          c.theta[3] * c.theta[3] + 2.0 * c.theta[4] * c.theta[4] +
                          2.0 * c.theta[5] * c.theta[5] + c.theta[6] * c.theta[6]);
    c.norm6 = 1.0 / std::sqrt(norm2);
    return c;
}

// Two-magnon basis indices of the six-site ring grouped by the ring distance
// of the excited pair, plus their particle-hole complements.
const std::size_t kPairDist1[6] = {3, 6, 12, 24, 33, 48};
const std::size_t kPairDist2[6] = {5, 10, 17, 20, 34, 40};
const std::size_t kPairDist3[3] = {9, 18, 36};
const std::size_t kHoleDist1[6] = {15, 30, 39, 51, 57, 60};
const std::size_t kHoleDist2[6] = {23, 29, 43, 46, 53, 58};
const std::size_t kHoleDist3[3] = {27, 45, 54};

}  // namespace

SixQubitGroundState six_qubit_ground_state(const ModelParams& p) {
    p.validate();
    if (p.n_qubits != 6) throw std::domain_error("six_qubit_ground_state: requires n = 6");
    if (p.eta < 0.0) {
        ModelParams flipped = p;
        flipped.eta = -p.eta;
        SixQubitGroundState g = six_qubit_ground_state(flipped);
        g.state = spin_flipped(g.state);
        return g;
    }
    if (std::abs(p.gamma) < kSingularTol) {
        throw std::invalid_argument(
            "six_qubit_ground_state: Theta coefficients are singular at gamma = 0");
    }

    const SixQubitCoefficients c = six_qubit_coefficients(p.gamma, p.eta);

    std::vector<std::pair<std::size_t, double>> comps;
    comps.reserve(32);
    comps.emplace_back(0, c.theta[0]);
    comps.emplace_back(63, c.theta[7]);
    for (std::size_t idx : kPairDist1) comps.emplace_back(idx, c.theta[1]);
    for (std::size_t idx : kPairDist2) comps.emplace_back(idx, c.theta[2]);
    for (std::size_t idx : kPairDist3) comps.emplace_back(idx, c.theta[3]);
    for (std::size_t idx : kHoleDist1) comps.emplace_back(idx, c.theta[4]);
    for (std::size_t idx : kHoleDist2) comps.emplace_back(idx, c.theta[5]);
    for (std::size_t idx : kHoleDist3) comps.emplace_back(idx, c.theta[6]);

    return SixQubitGroundState{-c.lambda6 * p.coupling, assemble_state(6, comps), c};
}

bool six_qubit_closed_form_is_ground(const ModelParams& p, double tol) {
    const SixQubitGroundState g = six_qubit_ground_state(p);
    const SpectralDecomposition spec = hermitian_eig(build_hamiltonian(p));
    return std::abs(g.energy - spec.eigenvalues.front()) <=
           tol * std::max(1.0, std::abs(spec.eigenvalues.front()));
}

double phi15_c4_multipartite(const ModelParams& p) {
    ModelParams q = p;
    q.eta = std::abs(p.eta);  // the measure is spin-flip invariant
    const FourQubitCoefficients c = four_qubit_coefficients(q);
    const double* t = c.omega_coeff_minus;
    const double denom = 1.0 + t[0] * t[0] + 4.0 * t[1] * t[1] + 2.0 * t[2] * t[2];
    return std::abs(2.0 * (t[0] + 2.0 * t[1] * t[1] + t[2] * t[2]) / denom);
}

double phi15_c4_total(const ModelParams& p) {
    ModelParams pabs = p;
    pabs.eta = std::abs(p.eta);
    const FourQubitCoefficients c = four_qubit_coefficients(pabs);
    const double* t = c.omega_coeff_minus;
    const double q = 2.0 * t[1] * t[1] + t[2] * t[2];
    const double denom = 1.0 + t[0] * t[0] + 4.0 * t[1] * t[1] + 2.0 * t[2] * t[2];
    const double num =
        7.0 * q * q + 2.0 * (4.0 * t[0] * t[0] - t[0] + 4.0) * q + 7.0 * t[0] * t[0];
    return std::sqrt(std::max(num, 0.0)) / denom;
}

double phi14_c4_multipartite(const ModelParams& p) {
    p.validate();
    if (p.n_qubits != 4) throw std::domain_error("phi14_c4_multipartite: requires n = 4");
    const double root = std::sqrt(p.eta * p.eta + 4.0 * p.gamma * p.gamma);
    const double am = (root + p.eta > 0.0) ? 2.0 * p.gamma / (root + p.eta) : 0.0;
    return std::abs(2.0 * am / (1.0 + am * am));
}

double phi14_c4_total(const ModelParams& p) {
    p.validate();
    if (p.n_qubits != 4) throw std::domain_error("phi14_c4_total: requires n = 4");
    const double root = std::sqrt(p.eta * p.eta + 4.0 * p.gamma * p.gamma);
    const double am = (root + p.eta > 0.0) ? 2.0 * p.gamma / (root + p.eta) : 0.0;
    const double a2 = am * am;
    return std::sqrt((3.0 + 8.0 * a2 + 3.0 * a2 * a2) / 2.0) / (1.0 + a2);
}

double phi_g6_c6(const ModelParams& p) {
    p.validate();
    if (p.n_qubits != 6) throw std::domain_error("phi_g6_c6: requires n = 6");
    if (std::abs(p.gamma) < kSingularTol) {
        throw std::invalid_argument("phi_g6_c6: singular at gamma = 0");
    }
    const SixQubitCoefficients c = six_qubit_coefficients(p.gamma, p.eta);
    const double* t = c.theta;
    return 2.0 * c.norm6 * c.norm6 *
           std::abs(t[0] * t[7] + 6.0 * t[1] * t[4] + 6.0 * t[2] * t[5] + 3.0 * t[3] * t[6]);
}

}  // namespace xylab
