#pragma once

#include <string>
#include <vector>

#include "xylab/linalg.hpp"

namespace xylab {

/// Chain parameters: size n (even), anisotropy gamma, field ratio
/// eta = B_m / J, and the coupling J (the energy unit). The physical regime
/// discussed alongside these models is eta >= 0, 0 <= gamma <= 1, J > 0;
/// signed gamma, eta and J are admitted so the symmetry of the spectrum and
/// of the thermal concurrence under sign flips can be exercised directly.
struct ModelParams {
    int n_qubits = 2;
    double gamma = 0.0;
    double eta = 0.0;
    double coupling = 1.0;

    void validate() const;
};

enum class StateFamily { GhzLike, WLike, Product, Generic };

std::string to_string(StateFamily f);

/// A closed-form eigenpair with its label. `source_label` carries the index
/// used in the source material when it differs from `label` (the Delta pair
/// is relabeled to avoid an index collision with the W states).
struct LabeledEigenpair {
    std::string label;
    std::string source_label;
    double energy = 0.0;  // units of J
    PureState state;
    StateFamily family = StateFamily::Generic;
};

/// Coefficients of the four-qubit closed-form eigensystem.
/// alpha_plus * alpha_minus == 1 and alpha_plus - alpha_minus == eta/gamma
/// wherever gamma != 0.
struct FourQubitCoefficients {
    double omega_plus = 0.0;
    double omega_minus = 0.0;
    double alpha_plus = 0.0;
    double alpha_minus = 0.0;
    double omega_coeff_plus[3] = {0.0, 0.0, 0.0};   // Omega^+_1..3
    double omega_coeff_minus[3] = {0.0, 0.0, 0.0};  // Omega^-_1..3
    double delta_coeff_plus[3] = {0.0, 0.0, 0.0};   // Delta^+_1..3
    double delta_coeff_minus[3] = {0.0, 0.0, 0.0};  // Delta^-_1..3
    double norm_omega_plus = 0.0;
    double norm_omega_minus = 0.0;
    double norm_delta_plus = 0.0;
    double norm_delta_minus = 0.0;
};

/// Coefficients of the six-qubit closed-form ground state. Everything is
/// evaluated at J = 1; the assembled state does not depend on J and the
/// energy scales linearly with it.
struct SixQubitCoefficients {
    double lambda6 = 0.0;
    double kappa = 0.0;
    double theta[8] = {0};  // Theta_1..Theta_8
    double tau6 = 0.0;
    double zeta6 = 0.0;
    double norm6 = 0.0;
};

struct SixQubitGroundState {
    double energy = 0.0;  // -lambda * J
    PureState state;
    SixQubitCoefficients coefficients;
};

/// H_n = (J/2) sum_j [(1+gamma) sx_j sx_{j+1} + (1-gamma) sy_j sy_{j+1}
///                    + eta sz_j]  with periodic boundary (site n+1 = 1).
/// For n = 2 the single bond enters once, not twice, so the two-site matrix
/// matches the standalone two-qubit Hamiltonian.
ComplexMatrix build_hamiltonian(const ModelParams& p);

/// The four closed-form eigenpairs of the two-qubit chain:
/// Phi0 (+B), Phi1 (+J), Phi2 (-J), Phi3 (-B) with B = sqrt(eta^2+gamma^2) J.
/// The gamma = eta = 0 corner returns the Bell-state limit.
std::vector<LabeledEigenpair> two_qubit_eigensystem(const ModelParams& p);

/// omega/alpha/Omega/Delta coefficients for n = 4. Requires |gamma| >= 1e-8
/// for the Omega and Delta entries (alpha_minus alone is well-defined for
/// all gamma); |eta| < 1e-8 is evaluated through the analytic eta -> 0
/// limit branch.
FourQubitCoefficients four_qubit_coefficients(const ModelParams& p);

/// All sixteen closed-form eigenpairs of the four-qubit chain.
std::vector<LabeledEigenpair> four_qubit_eigensystem(const ModelParams& p);

/// The 32-component closed-form six-qubit state with energy -lambda J.
/// This eigenpair is the ground state for large eta only; callers that need
/// the true ground state at small eta should compare with the numeric
/// spectrum (see six_qubit_closed_form_is_ground).
SixQubitGroundState six_qubit_ground_state(const ModelParams& p);

/// Whether -lambda J coincides with the numeric minimum of H_6 within tol.
bool six_qubit_closed_form_is_ground(const ModelParams& p, double tol = 1e-8);

// Closed-form concurrence expressions attached to specific eigenstates.
double phi15_c4_multipartite(const ModelParams& p);  // genuine 4-partite, |.| applied
double phi15_c4_total(const ModelParams& p);
double phi14_c4_multipartite(const ModelParams& p);  // 2 alpha^- / (1 + alpha^-^2)
double phi14_c4_total(const ModelParams& p);
double phi_g6_c6(const ModelParams& p);  // 2 N^2 |T1 T8 + 6 T2 T5 + 6 T3 T6 + 3 T4 T7|

}  // namespace xylab
