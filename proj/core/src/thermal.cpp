#include "xylab/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace xylab {

double ThermalEnsemble::log_partition() const {
    return std::log(partition) - beta * energy_shift;
}

ThermalEnsemble thermal_state(const SpectralDecomposition& spec, double temperature) {
    if (!(temperature > 0.0)) {
        throw std::domain_error("thermal_state: temperature must be positive");
    }
    const std::size_t n = spec.eigenvalues.size();
    if (n == 0 || spec.eigenvectors.rows() != n) {
        throw std::invalid_argument("thermal_state: malformed spectral decomposition");
    }

    ThermalEnsemble ens;
    ens.beta = 1.0 / temperature;
    ens.energy_shift = *std::min_element(spec.eigenvalues.begin(), spec.eigenvalues.end());

    ens.weights.resize(n);
    double z = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        ens.weights[i] = std::exp(-ens.beta * (spec.eigenvalues[i] - ens.energy_shift));
        z += ens.weights[i];
    }
    ens.partition = z;
    for (auto& w : ens.weights) w /= z;

    ens.chi = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double w = ens.weights[k];
        if (w == 0.0) continue;
        for (std::size_t r = 0; r < n; ++r) {
            const cdouble vr = spec.eigenvectors(r, k);
            if (vr == cdouble{0.0, 0.0}) continue;
            for (std::size_t c = 0; c < n; ++c) {
                ens.chi(r, c) += w * vr * std::conj(spec.eigenvectors(c, k));
            }
        }
    }
    return ens;
}

namespace {

std::vector<double> closed_energies(const ModelParams& p) {
    std::vector<double> e;
    if (p.n_qubits == 2) {
        for (const auto& pair : two_qubit_eigensystem(p)) e.push_back(pair.energy);
    } else if (p.n_qubits == 4) {
        for (const auto& pair : four_qubit_eigensystem(p)) e.push_back(pair.energy);
    } else {
        throw std::domain_error("closed-form spectrum only available for n = 2 and 4");
    }
    return e;
}

}  // namespace

double partition_function_closed(const ModelParams& p, double temperature) {
    p.validate();
    if (!(temperature > 0.0)) {
        throw std::domain_error("partition_function_closed: temperature must be positive");
    }
    const double beta = 1.0 / temperature;
    const double j = p.coupling;

    if (p.n_qubits == 2) {
        const double b = std::sqrt(p.eta * p.eta + p.gamma * p.gamma) * j;
        return 2.0 * std::cosh(beta * b) + 2.0 * std::cosh(beta * j);
    }
    if (p.n_qubits == 4) {
        const double chi = std::sqrt(p.eta * p.eta + 4.0 * p.gamma * p.gamma);
        const double wp = [&] {
            const double x = p.eta * p.eta + 2.0 * (1.0 + p.gamma * p.gamma);
            return std::sqrt(2.0) * std::sqrt(x + std::sqrt(std::max(x * x - 8.0 * p.eta * p.eta, 0.0)));
        }();
        const double wm = [&] {
            const double x = p.eta * p.eta + 2.0 * (1.0 + p.gamma * p.gamma);
            return std::sqrt(2.0) * std::sqrt(std::max(x - std::sqrt(std::max(x * x - 8.0 * p.eta * p.eta, 0.0)), 0.0));
        }();
        return 4.0 + 4.0 * std::cosh(beta * p.eta * j) + 2.0 * std::cosh(beta * (chi + 2.0) * j) +
               2.0 * std::cosh(beta * (chi - 2.0) * j) + 2.0 * std::cosh(beta * wp * j) +
               2.0 * std::cosh(beta * wm * j);
    }
    throw std::domain_error("partition_function_closed: only n = 2 and n = 4 are supported");
}

double ground_weight(const ModelParams& p, double temperature) {
    p.validate();
    if (!(temperature > 0.0)) {
        throw std::domain_error("ground_weight: temperature must be positive");
    }
    std::vector<double> energies;
    if (p.n_qubits == 2 || (p.n_qubits == 4 && std::abs(p.gamma) >= 1e-8)) {
        energies = closed_energies(p);
    } else if (p.n_qubits == 4 || p.n_qubits == 6) {
        // gamma ~ 0 has no closed four-qubit eigensystem; diagonalize.
        energies = hermitian_eig(build_hamiltonian(p)).eigenvalues;
    } else {
        throw std::domain_error("ground_weight: only n in {2, 4, 6} is supported");
    }
    const double eg = *std::min_element(energies.begin(), energies.end());
    const double beta = 1.0 / temperature;
    double xi = 0.0;
    for (double e : energies) xi += std::exp(-beta * (e - eg));
    return 1.0 / xi;
}

namespace {

ComplexMatrix equal_mixture(const PureState& a, const PureState& b) {
    ComplexMatrix out = a.projector();
    out += b.projector();
    out *= 0.5;
    return out;
}

}  // namespace

ComplexMatrix zero_temperature_state(const ModelParams& p) {
    p.validate();
    constexpr double kTieTol = 1e-12;

    if (p.n_qubits == 2) {
        const auto sys = two_qubit_eigensystem(p);  // Phi0, Phi1, Phi2, Phi3
        const double e2 = sys[2].energy;
        const double e3 = sys[3].energy;
        if (std::abs(e2 - e3) <= kTieTol) return equal_mixture(sys[2].state, sys[3].state);
        return (e2 < e3) ? sys[2].state.projector() : sys[3].state.projector();
    }

    if (p.n_qubits == 4) {
        if (std::abs(p.gamma) < 1e-8) {
            // XX line: no closed Phi14/Phi15; use the numeric ground space.
            const SpectralDecomposition spec = hermitian_eig(build_hamiltonian(p));
            const double e0 = spec.eigenvalues.front();
            const double tol = 1e-12 * std::max(1.0, std::abs(e0));
            std::size_t deg = 0;
            while (deg < spec.eigenvalues.size() && spec.eigenvalues[deg] - e0 <= tol) ++deg;
            const std::size_t dim = spec.eigenvectors.rows();
            ComplexMatrix rho(dim, dim);
            for (std::size_t k = 0; k < deg; ++k) {
                for (std::size_t r = 0; r < dim; ++r)
                    for (std::size_t c = 0; c < dim; ++c)
                        rho(r, c) += spec.eigenvectors(r, k) * std::conj(spec.eigenvectors(c, k)) /
                                     static_cast<double>(deg);
            }
            return rho;
        }
        const auto sys = four_qubit_eigensystem(p);
        const LabeledEigenpair* phi14 = nullptr;
        const LabeledEigenpair* phi15 = nullptr;
        for (const auto& s : sys) {
            if (s.label == "Phi14") phi14 = &s;
            if (s.label == "Phi15") phi15 = &s;
        }
        if (std::abs(phi14->energy - phi15->energy) <= kTieTol) {
            return equal_mixture(phi14->state, phi15->state);
        }
        return (phi14->energy < phi15->energy) ? phi14->state.projector()
                                               : phi15->state.projector();
    }

    throw std::domain_error("zero_temperature_state: only n = 2 and n = 4 are supported");
}

SpectralDecomposition closed_form_spectrum(const ModelParams& p) {
    p.validate();
    std::vector<LabeledEigenpair> sys;
    if (p.n_qubits == 2) {
        sys = two_qubit_eigensystem(p);
    } else if (p.n_qubits == 4) {
        sys = four_qubit_eigensystem(p);
    } else {
        throw std::domain_error("closed_form_spectrum: only n = 2 and n = 4 are supported");
    }
    std::stable_sort(sys.begin(), sys.end(),
                     [](const LabeledEigenpair& a, const LabeledEigenpair& b) {
                         return a.energy < b.energy;
                     });
    SpectralDecomposition out;
    const std::size_t dim = sys.front().state.dim();
    out.eigenvectors = ComplexMatrix(dim, sys.size());
    for (std::size_t k = 0; k < sys.size(); ++k) {
        out.eigenvalues.push_back(sys[k].energy);
        for (std::size_t r = 0; r < dim; ++r) out.eigenvectors(r, k) = sys[k].state[r];
    }
    return out;
}

}  // namespace xylab
