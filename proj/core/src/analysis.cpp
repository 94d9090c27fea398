#include "xylab/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace xylab {

namespace {

double omega_plus(double gamma, double eta) {
    const double x = eta * eta + 2.0 * (1.0 + gamma * gamma);
    return std::sqrt(2.0) * std::sqrt(x + std::sqrt(std::max(x * x - 8.0 * eta * eta, 0.0)));
}

// f(eta) = (alpha+ + alpha-) gamma + 2 - omega+; Phi14 is the ground state
// exactly where f > 0.
double ground_gap(double gamma, double eta) {
    return std::sqrt(eta * eta + 4.0 * gamma * gamma) + 2.0 - omega_plus(gamma, eta);
}

double bisect(double lo, double hi, double flo, const auto& f, double tol) {
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TransitionFields transition_fields(double gamma) {
    if (!(gamma > 0.0) || gamma > 1.0) {
        throw std::domain_error("transition_fields: gamma must lie in (0, 1]");
    }
    if (gamma == 1.0) return {0.0, 0.0};

    const auto f = [gamma](double eta) { return ground_gap(gamma, eta); };

    // f < 0 at eta = 0 and as eta -> infinity, > 0 in between; scan for the
    // two sign changes. eta2 <= 2 for all gamma in (0,1).
    constexpr int kScan = 400;
    constexpr double kEtaMax = 8.0;
    double roots[2] = {-1.0, -1.0};
    int found = 0;
    double prev_eta = 0.0, prev_f = f(0.0);
    for (int i = 1; i <= kScan && found < 2; ++i) {
        const double eta = kEtaMax * i / kScan;
        const double fe = f(eta);
        if ((fe > 0.0) != (prev_f > 0.0)) {
            roots[found++] = bisect(prev_eta, eta, prev_f, f, 1e-10);
        }
        prev_eta = eta;
        prev_f = fe;
    }
    if (found != 2) {
        throw std::runtime_error("transition_fields: failed to bracket both roots");
    }
    return {roots[0], roots[1]};
}

std::vector<ZeroTPoint> zero_t_curves(double gamma, const std::vector<double>& eta_grid) {
    if (!std::is_sorted(eta_grid.begin(), eta_grid.end())) {
        throw std::invalid_argument("zero_t_curves: eta grid must be sorted");
    }
    const AOperator a_multi = AOperator::multipartite(4);
    const AOperator a_full = AOperator::full(4);

    std::vector<ZeroTPoint> out;
    out.reserve(eta_grid.size());
    for (double eta : eta_grid) {
        const ModelParams p{4, gamma, eta, 1.0};
        const ComplexMatrix chi = zero_temperature_state(p);
        ZeroTPoint pt;
        pt.eta = eta;
        // A pure branch admits the closed pure-state forms; the equal
        // mixtures at the transition fields need the mixed-state bound.
        double purity = 0.0;
        for (const auto& x : chi.data()) purity += std::norm(x);
        if (purity > 1.0 - 1e-9) {
            const SpectralDecomposition spec = hermitian_eig(chi);
            PureState ground(4, spec.eigenvector(spec.eigenvalues.size() - 1));
            pt.c4_multipartite = pure_spinflip(ground).value;
            pt.c4_total = pure_cn(ground).value;
        } else {
            pt.c4_multipartite = lower_bound(chi, a_multi).value;
            pt.c4_total = lower_bound(chi, a_full).value;
        }
        out.push_back(pt);
    }
    return out;
}

double asymptotic(AsymptoticKind kind, double gamma, double eta) {
    if (!(eta > 0.0)) throw std::domain_error("asymptotic: eta must be positive");
    const double g2 = gamma * gamma;
    switch (kind) {
        case AsymptoticKind::C2:
            return gamma / eta;
        case AsymptoticKind::C4Multi:
            return 2.0 * g2 / (eta * eta) + (8.0 * g2 - 4.0 * g2 * g2) / std::pow(eta, 4);
        case AsymptoticKind::C4Full:
            return 2.0 * gamma / eta + (24.0 * gamma - 9.0 * gamma * g2) / (4.0 * std::pow(eta, 3));
        case AsymptoticKind::C6:
            return 2.0 * gamma * g2 / std::pow(eta, 3);
    }
    throw std::domain_error("asymptotic: unknown kind");
}

double thermal_c4(double gamma, double eta, double coupling, double temperature) {
    const ModelParams p{4, gamma, eta, coupling};
    const SpectralDecomposition spec = hermitian_eig(build_hamiltonian(p));
    const ThermalEnsemble ens = thermal_state(spec, temperature);
    static const AOperator a4 = AOperator::multipartite(4);
    return lower_bound(ens.chi, a4).value;
}

std::optional<double> critical_temperature(double gamma, double eta, double coupling) {
    // gamma = 0 is admitted so the XX chain's empty region is reportable.
    if (gamma < 0.0 || gamma > 1.0) {
        throw std::domain_error("critical_temperature: gamma must lie in [0, 1]");
    }
    const auto c4 = [&](double t) { return thermal_c4(gamma, eta, coupling, t); };

    constexpr double kTMin = 1e-4;
    if (c4(kTMin) <= kConcurrenceZeroThreshold) return std::nullopt;

    // Log scan up for the last crossing, then bisect on the threshold.
    const double tmax = std::max(1e3, 1e3 * std::abs(eta) * std::abs(coupling));
    constexpr int kScan = 200;
    double lo = kTMin, hi = tmax;
    bool bracketed = false;
    double prev_t = kTMin;
    for (int i = 1; i <= kScan; ++i) {
        const double t = kTMin * std::pow(tmax / kTMin, static_cast<double>(i) / kScan);
        if (c4(t) <= kConcurrenceZeroThreshold) {
            lo = prev_t;
            hi = t;
            bracketed = true;
            break;
        }
        prev_t = t;
    }
    if (!bracketed) return tmax;  // still entangled at the scan ceiling

    for (int it = 0; it < 200 && (hi - lo) > 1e-6 * lo; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (c4(mid) > kConcurrenceZeroThreshold) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

CriticalCurve critical_curve(double gamma, const std::vector<double>& eta_grid,
                             double coupling) {
    CriticalCurve curve;
    curve.gamma = gamma;
    curve.points.reserve(eta_grid.size());
    for (double eta : eta_grid) {
        curve.points.push_back({eta, critical_temperature(gamma, eta, coupling)});
    }
    return curve;
}

std::optional<double> revival_field(double gamma, double temperature, double coupling,
                                    double eta_cap, double eta_start) {
    if (!(temperature > 0.0) || !std::isfinite(temperature)) {
        throw std::domain_error("revival_field: temperature must be finite and positive");
    }
    const auto c4 = [&](double eta) { return thermal_c4(gamma, eta, coupling, temperature); };

    double lo = 0.0, hi = eta_start;
    double chi_hi = c4(hi);
    if (chi_hi <= kConcurrenceZeroThreshold) {
        lo = hi;
        bool found = false;
        while (hi < eta_cap) {
            hi = std::min(2.0 * hi, eta_cap);
            chi_hi = c4(hi);
            if (chi_hi > kConcurrenceZeroThreshold) {
                found = true;
                break;
            }
            lo = hi;
            if (hi >= eta_cap) break;
        }
        if (!found) return std::nullopt;
    }

    // Smallest eta with C^(4) above threshold, to 1e-8 absolute on eta.
    for (int it = 0; it < 200 && (hi - lo) > 1e-8 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (c4(mid) > kConcurrenceZeroThreshold) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

std::vector<Table1Cell> table1_compare(double gamma, double coupling,
                                       const std::vector<double>& temperatures,
                                       const std::vector<double>& etas) {
    std::vector<Table1Cell> out;
    out.reserve(temperatures.size() * etas.size());
    for (double t : temperatures) {
        for (double eta : etas) {
            Table1Cell cell;
            cell.temperature = t;
            cell.eta = eta;
            cell.c4_chi = thermal_c4(gamma, eta, coupling, t);
            const ModelParams p{4, gamma, eta, coupling};
            const auto sys = four_qubit_eigensystem(p);
            for (const auto& s : sys) {
                if (s.label == "Phi15") cell.c4_phi15 = pure_spinflip(s.state).value;
            }
            out.push_back(cell);
        }
    }
    return out;
}

double thermal_wootters_closed(const ModelParams& p, double temperature) {
    p.validate();
    if (p.n_qubits != 2) throw std::domain_error("thermal_wootters_closed: requires n = 2");
    if (!(temperature > 0.0)) {
        throw std::domain_error("thermal_wootters_closed: temperature must be positive");
    }
    const double j = p.coupling;
    const double beta = 1.0 / temperature;
    const double b = std::sqrt(p.eta * p.eta + p.gamma * p.gamma) * j;
    const double z2 = 2.0 * std::cosh(beta * b) + 2.0 * std::cosh(beta * j);

    // sinh(beta B)/B stays finite as B -> 0.
    const double sinhc = (std::abs(b) > 1e-30) ? std::sinh(beta * b) / b : beta;
    const double gj = p.gamma * j;
    const double q = 1.0 + gj * gj * sinhc * sinhc;
    const double core = 2.0 * gj * sinhc * std::sqrt(q);
    const double l1 = std::exp(beta * j) / z2;
    const double l2 = std::exp(-beta * j) / z2;
    // (2q-1)^2 - core^2 = 1 exactly, so the smaller root comes from the
    // product identity instead of a catastrophically cancelling difference.
    const double big = std::sqrt(2.0 * q - 1.0 + std::abs(core)) / z2;
    const double small = 1.0 / (z2 * z2 * big);

    std::vector<double> lam{l1, l2, big, small};
    std::sort(lam.begin(), lam.end(), std::greater<double>());
    return std::max(0.0, lam[0] - lam[1] - lam[2] - lam[3]);
}

double infer_gamma_from_c4(double c4_value, double eta) {
    if (!(eta > 0.0) || !(c4_value > 0.0)) {
        throw std::domain_error("infer_gamma_from_c4: needs positive value and eta");
    }
    // Solve 2 t/eta^2 + (8 t - 4 t^2)/eta^4 = value for t = gamma^2 (small root).
    const double e2 = eta * eta;
    const double e4 = e2 * e2;
    const double a = -4.0 / e4;
    const double b = 2.0 / e2 + 8.0 / e4;
    const double c = -c4_value;
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) {
        throw std::domain_error("infer_gamma_from_c4: value too large for the expansion");
    }
    const double t = 2.0 * c / (-b - std::sqrt(disc));  // numerically stable small root
    if (!(t >= 0.0)) throw std::domain_error("infer_gamma_from_c4: no admissible root");
    return std::sqrt(t);
}

}  // namespace xylab
