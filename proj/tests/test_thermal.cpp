#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "test_support.hpp"
#include "xylab/concurrence.hpp"
#include "xylab/thermal.hpp"

using namespace xylab;
using namespace xytest;

namespace {

double trace_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
    const auto spec = hermitian_eig(a - b);
    double s = 0.0;
    for (double v : spec.eigenvalues) s += std::abs(v);
    return 0.5 * s;
}

ThermalEnsemble gibbs(const ModelParams& p, double temperature) {
    return thermal_state(hermitian_eig(build_hamiltonian(p)), temperature);
}

}  // namespace

TEST_CASE("thermal state basics") {
    const ModelParams p{4, 0.5, 1.0, 1.0};
    const ComplexMatrix h = build_hamiltonian(p);
    const auto ens = thermal_state(hermitian_eig(h), 0.8);

    double wsum = 0.0;
    for (double w : ens.weights) {
        CHECK(w >= 0.0);
        wsum += w;
    }
    CHECK(std::abs(wsum - 1.0) < 1e-12);
    CHECK(std::abs(ens.chi.trace().real() - 1.0) < 1e-12);
    CHECK(ens.chi.hermiticity_defect() < 1e-12);
    CHECK(hermitian_eig(ens.chi).eigenvalues.front() >= -1e-12);

    // chi commutes with H.
    const ComplexMatrix comm = ens.chi * h - h * ens.chi;
    CHECK(comm.frobenius_norm() <= 1e-10 * h.frobenius_norm());

    CHECK_THROWS_AS(thermal_state(hermitian_eig(h), 0.0), std::domain_error);
    CHECK_THROWS_AS(thermal_state(hermitian_eig(h), -1.0), std::domain_error);
}

TEST_CASE("infinite-temperature limit is maximally mixed") {
    for (int n : {2, 4}) {
        const auto ens = gibbs(ModelParams{n, 0.4, 1.3, 1.0}, 1e9);
        const double uniform = 1.0 / std::pow(2.0, n);
        for (double w : ens.weights) CHECK(std::abs(w - uniform) < 1e-6);
    }
}

TEST_CASE("overflow regime stays finite through the shifted partition") {
    const auto ens = gibbs(ModelParams{4, 0.3, 1000.0, 1.0}, 0.01);  // beta eta J = 1e5
    CHECK(std::isfinite(ens.partition));
    CHECK(std::abs(ens.chi.trace().real() - 1.0) < 1e-12);
    CHECK(ens.weights[0] > 0.999999);  // ground state owns the ensemble
    // log Z = -beta E_min + log(shifted Z), with beta = 1/T = 100.
    CHECK(ens.log_partition() == doctest::Approx(-100.0 * ens.energy_shift +
                                                 std::log(ens.partition)));
    CHECK(ens.log_partition() > 1e5);  // the unshifted Z would overflow
}

TEST_CASE("closed partition functions match the spectrum-sum oracle") {
    SUBCASE("hand value at gamma = eta = 0") {
        // B = 0: Z_2 = 2 + 2 cosh(beta J).
        const double z = partition_function_closed(ModelParams{2, 0.0, 0.0, 1.0}, 1.0);
        CHECK(z == doctest::Approx(2.0 + 2.0 * std::cosh(1.0)).epsilon(1e-14));
    }
    SUBCASE("grid comparison for n = 2 and 4") {
        for (int gi = 0; gi < 10; ++gi) {
            const double gamma = 0.1 + 0.9 * gi / 9.0;
            for (int ei = 0; ei < 10; ++ei) {
                const double eta = 5.0 * ei / 9.0;
                for (double t : {0.5, 1.0, 5.0}) {
                    for (int n : {2, 4}) {
                        const ModelParams p{n, gamma, eta, 1.0};
                        const auto spec = hermitian_eig(build_hamiltonian(p));
                        double z_oracle = 0.0;
                        for (double e : spec.eigenvalues) z_oracle += std::exp(-e / t);
                        const double z_closed = partition_function_closed(p, t);
                        CHECK(std::abs(z_closed - z_oracle) <= 1e-9 * z_oracle);
                    }
                }
            }
        }
    }
    SUBCASE("Z_4 equals the sum over the sixteen closed-form energies") {
        const ModelParams p{4, 0.5, 1.0, 1.0};
        double z = 0.0;
        for (const auto& s : four_qubit_eigensystem(p)) z += std::exp(-s.energy / 2.0);
        CHECK(partition_function_closed(p, 2.0) == doctest::Approx(z).epsilon(1e-12));
    }
    SUBCASE("unsupported size") {
        CHECK_THROWS_AS(partition_function_closed(ModelParams{6, 0.5, 1.0, 1.0}, 1.0),
                        std::domain_error);
    }
}

TEST_CASE("ground weight closed forms") {
    SUBCASE("printed w_3 expression at gamma=0.3, eta=10, T=1") {
        const double b = std::sqrt(100.0 + 0.09);
        const double oracle =
            1.0 / (1.0 + std::exp(-2.0 * b) + std::exp(-(b - 1.0)) + std::exp(-(b + 1.0)));
        const double w = ground_weight(ModelParams{2, 0.3, 10.0, 1.0}, 1.0);
        CHECK(w == doctest::Approx(oracle).epsilon(1e-12));
        CHECK(w == doctest::Approx(0.99986).epsilon(1e-4));
    }
    SUBCASE("two-qubit weight saturates at large field") {
        // Mathematically 1 - O(e^{-99}); indistinguishable from 1 here.
        CHECK(ground_weight(ModelParams{2, 0.3, 100.0, 1.0}, 1.0) >= 1.0 - 1e-40);
    }
    SUBCASE("four-qubit weight dominates at large field") {
        CHECK(ground_weight(ModelParams{4, 0.3, 100.0, 1.0}, 1.0) > 0.999);
    }
    SUBCASE("large-eta weight is gamma independent") {
        // The leading gamma dependence of the gaps cancels; the residual
        // O(gamma^2/eta) pieces only matter when the weight has decayed.
        const double wa1 = ground_weight(ModelParams{4, 0.1, 100.0, 1.0}, 1.0);
        const double wb1 = ground_weight(ModelParams{4, 0.9, 100.0, 1.0}, 1.0);
        CHECK(std::abs(wa1 - wb1) <= 1e-6 * wa1);
        const double wa2 = ground_weight(ModelParams{4, 0.1, 1000.0, 1.0}, 50.0);
        const double wb2 = ground_weight(ModelParams{4, 0.9, 1000.0, 1.0}, 50.0);
        CHECK(std::abs(wa2 - wb2) <= 1e-6 * wa2);
    }
    SUBCASE("monotone in eta at fixed temperature") {
        for (int n : {2, 4}) {
            for (double t : {1.0, 10.0, 100.0}) {
                double prev = 0.0;
                for (int i = 0; i < 50; ++i) {
                    const double eta = 5.0 + (200.0 - 5.0) * i / 49.0;
                    const double w = ground_weight(ModelParams{n, 0.4, eta, 1.0}, t);
                    CHECK(w >= prev - 1e-12);
                    prev = w;
                }
            }
        }
    }
    SUBCASE("n = 6 goes through the numeric spectrum") {
        const double w = ground_weight(ModelParams{6, 0.5, 100.0, 1.0}, 1.0);
        CHECK(w > 0.999);
    }
}

TEST_CASE("zero-temperature state: two-qubit cases") {
    const double gamma = 0.5;
    const double etac = std::sqrt(1.0 - gamma * gamma);

    SUBCASE("below the critical field: Bell state, C_W = 1") {
        const ComplexMatrix chi = zero_temperature_state(ModelParams{2, gamma, 0.2, 1.0});
        CHECK(wootters(chi).value == doctest::Approx(1.0).epsilon(1e-10));
    }
    SUBCASE("at the critical field: equal mixture, C_W = (1-gamma)/2") {
        const ComplexMatrix chi = zero_temperature_state(ModelParams{2, gamma, etac, 1.0});
        CHECK(std::abs(chi.trace().real() - 1.0) < 1e-12);
        CHECK(wootters(chi).value == doctest::Approx(0.25).epsilon(1e-10));
    }
    SUBCASE("above the critical field: C_W = gamma/sqrt(eta^2+gamma^2)") {
        const ComplexMatrix chi = zero_temperature_state(ModelParams{2, gamma, 2.0, 1.0});
        CHECK(wootters(chi).value ==
              doctest::Approx(gamma / std::sqrt(4.0 + gamma * gamma)).epsilon(1e-10));
    }
}

TEST_CASE("zero-temperature state: four-qubit branches") {
    SUBCASE("Ising point is the printed equal mixture") {
        const ModelParams p{4, 1.0, 0.0, 1.0};
        const ComplexMatrix chi = zero_temperature_state(p);
        const auto sys = four_qubit_eigensystem(p);
        ComplexMatrix expected(16, 16);
        for (const auto& s : sys) {
            if (s.label == "Phi14" || s.label == "Phi15") {
                expected += s.state.projector() * cdouble{0.5, 0.0};
            }
        }
        CHECK(frob_distance(chi, expected) < 1e-12);
    }
    SUBCASE("pure branches on either side of the transitions") {
        // gamma = 0.5: eta_1 in (0.6, 0.8), eta_2 in (1, 2).
        const ComplexMatrix low = zero_temperature_state(ModelParams{4, 0.5, 0.2, 1.0});
        double purity = 0.0;
        for (const auto& x : low.data()) purity += std::norm(x);
        CHECK(purity == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("thermal state converges to the zero-temperature state") {
    for (int n : {2, 4}) {
        for (double eta : {0.2, 3.0}) {
            const ModelParams p{n, 0.5, eta, 1.0};
            const ComplexMatrix cold = gibbs(p, 1e-3).chi;
            const ComplexMatrix frozen = zero_temperature_state(p);
            CHECK(trace_distance(cold, frozen) < 1e-6);
        }
    }
}

TEST_CASE("closed-form spectrum agrees with thermal weights") {
    const ModelParams p{4, 0.6, 1.4, 1.0};
    const auto numeric = gibbs(p, 0.7);
    const auto closed = thermal_state(closed_form_spectrum(p), 0.7);
    CHECK(frob_distance(numeric.chi, closed.chi) < 1e-9);
    CHECK(numeric.partition == doctest::Approx(closed.partition).epsilon(1e-10));
}
