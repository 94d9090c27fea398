#pragma once

#include <vector>

#include "xylab/linalg.hpp"
#include "xylab/model.hpp"

namespace xylab {

/// Gibbs ensemble built from a spectral decomposition. Boltzmann factors are
/// evaluated as exp(-beta (E_i - E_min)), so `partition` is the shifted
/// partition function exp(beta * energy_shift) * Z with energy_shift = E_min;
/// log_partition() undoes the shift. The shift keeps beta*eta*J ~ 1e5
/// regimes finite.
struct ThermalEnsemble {
    double beta = 0.0;
    std::vector<double> weights;
    double partition = 0.0;     // sum_i exp(-beta (E_i - energy_shift))
    double energy_shift = 0.0;  // E_min
    ComplexMatrix chi;

    double log_partition() const;
};

/// chi = exp(-beta H)/Z from the eigensystem of H. temperature must be > 0
/// (Boltzmann constant k = 1).
ThermalEnsemble thermal_state(const SpectralDecomposition& spec, double temperature);

/// The printed closed-form partition functions:
///   Z_2 = 2 cosh(beta B) + 2 cosh(beta J),      B = sqrt(eta^2+gamma^2) J
///   Z_4 = 4 + 4 cosh(beta eta J) + 2 cosh(beta [chi+2] J)
///       + 2 cosh(beta [chi-2] J) + 2 cosh(beta w+ J) + 2 cosh(beta w- J)
/// with chi = sqrt(eta^2 + 4 gamma^2). Direct (unshifted) evaluation; use
/// thermal_state for extreme beta*eta regimes.
double partition_function_closed(const ModelParams& p, double temperature);

/// Statistical weight of the lowest-energy eigenstate, w_g = 1 / sum_i
/// exp(-beta (E_i - E_g)). Uses the closed-form spectra for n = 2 and 4
/// (reducing to the printed w_3 and w_15 = 1/xi expressions in the regime
/// where Phi3 / Phi15 is the ground state) and the numeric spectrum for
/// n = 6. Degenerate ground states count each level separately, so the
/// returned value is the weight of one of them.
double ground_weight(const ModelParams& p, double temperature);

/// The exact beta -> infinity limit of the thermal state. For n = 2 this is
/// the three-case ground-state density matrix keyed on eta vs
/// sqrt(1 - gamma^2); for n = 4 the five-branch piecewise form, with the
/// equal mixture returned whenever the two candidate ground energies agree
/// within 1e-12. A gamma ~ 0 four-qubit chain falls back to the numeric
/// ground-space projector.
ComplexMatrix zero_temperature_state(const ModelParams& p);

/// Spectral decomposition assembled from the closed-form eigensystem
/// (n = 2 or 4), ordered by ascending energy.
SpectralDecomposition closed_form_spectrum(const ModelParams& p);

}  // namespace xylab
