#pragma once

#include <optional>
#include <vector>

#include "xylab/concurrence.hpp"
#include "xylab/model.hpp"
#include "xylab/thermal.hpp"

namespace xylab {

/// The two zero-temperature transition fields of the four-qubit chain:
/// roots of (alpha+ + alpha-) gamma + 2 = omega+ in eta.
struct TransitionFields {
    double eta1 = 0.0;
    double eta2 = 0.0;
};

struct CriticalPoint {
    double eta = 0.0;
    std::optional<double> t_critical;  // empty where C^(4) never rises above threshold
};

struct CriticalCurve {
    double gamma = 0.0;
    std::vector<CriticalPoint> points;
};

struct ZeroTPoint {
    double eta = 0.0;
    double c4_multipartite = 0.0;
    double c4_total = 0.0;
};

struct Table1Cell {
    double temperature = 0.0;
    double eta = 0.0;
    double c4_chi = 0.0;    // exact C^(4) of the thermal state (rank-1 bound)
    double c4_phi15 = 0.0;  // C^(4) of the Phi15 eigenstate
};

// Values below this are reported as zero concurrence.
inline constexpr double kConcurrenceZeroThreshold = 1e-9;

/// Both transition fields for 0 < gamma < 1, bracketing scan plus bisection
/// to 1e-10. gamma = 1 returns eta1 = eta2 = 0; anything outside (0, 1]
/// is a domain error.
TransitionFields transition_fields(double gamma);

/// Zero-temperature C^(4) and C_4 along an eta grid at fixed gamma, using
/// the piecewise ground-state density operator (pure eigenstates away from
/// the transition fields, equal mixtures exactly at them).
std::vector<ZeroTPoint> zero_t_curves(double gamma, const std::vector<double>& eta_grid);

enum class AsymptoticKind { C2, C4Multi, C4Full, C6 };

/// The printed large-eta expansions:
///   C2:      gamma/eta
///   C4Multi: 2 gamma^2/eta^2 + (8 gamma^2 - 4 gamma^4)/eta^4
///   C4Full:  2 gamma/eta + (24 gamma - 9 gamma^3)/(4 eta^3)
///   C6:      2 gamma^3/eta^3
double asymptotic(AsymptoticKind kind, double gamma, double eta);

/// Largest temperature at which C^(4) of the four-qubit thermal state stays
/// above the zero threshold, located by a log scan plus bisection to 1e-6
/// relative. Empty if the concurrence is already zero at T = 1e-4.
std::optional<double> critical_temperature(double gamma, double eta, double coupling = 1.0);

/// T_c sampled over an eta grid at fixed gamma (the zero contour of the
/// thermal C^(4)).
CriticalCurve critical_curve(double gamma, const std::vector<double>& eta_grid,
                             double coupling = 1.0);

/// Smallest field eta (doubling scan from eta_start refined by bisection)
/// at which the four-qubit thermal state at temperature T recovers
/// C^(4) > threshold. Empty if no revival is found up to eta_cap; the
/// gamma = 0 chain never revives.
std::optional<double> revival_field(double gamma, double temperature, double coupling = 1.0,
                                    double eta_cap = 1e6, double eta_start = 1.0);

/// C^(4)[chi_4] vs C^(4)[Phi15] over a (T, eta) grid, both computed exactly
/// (rank-1 lower bound and the pure spin-flip form).
std::vector<Table1Cell> table1_compare(double gamma, double coupling,
                                       const std::vector<double>& temperatures,
                                       const std::vector<double>& etas);

/// Thermal C^(4) of the four-qubit chain at (gamma, eta, T): exact rank-1
/// bound on the numerically diagonalized Gibbs state.
double thermal_c4(double gamma, double eta, double coupling, double temperature);

/// Closed-form thermal Wootters concurrence of the two-qubit chain,
/// max{0, 2 max_k(lambda_k) - sum lambda_k} over the printed lambda set.
double thermal_wootters_closed(const ModelParams& p, double temperature);

/// Anisotropy recovered from a large-field C^(4) value through the
/// quadratic (in gamma^2) truncation of the C4Multi expansion. This is the
/// documented procedure used to pin the comparison table's gamma from its
/// eta = 100 row.
double infer_gamma_from_c4(double c4_value, double eta);

}  // namespace xylab
