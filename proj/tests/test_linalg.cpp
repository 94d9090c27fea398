#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstring>

#include "test_support.hpp"
#include "xylab/linalg.hpp"

using namespace xylab;
using namespace xytest;

TEST_CASE("kron reproduces identity and Pauli products") {
    CHECK(frob_distance(kron(identity2(), identity2()), ComplexMatrix::identity(4)) == 0.0);

    // sz x sz is diagonal with parity signs.
    const ComplexMatrix zz = kron(pauli_z(), pauli_z());
    const std::vector<cdouble> e00{1.0, 0.0, 0.0, 0.0};
    const std::vector<cdouble> e01{0.0, 1.0, 0.0, 0.0};
    CHECK(zz.apply(e00)[0] == cdouble{1.0, 0.0});
    CHECK(zz.apply(e01)[1] == cdouble{-1.0, 0.0});

    // sy x sy |00> = -|11> (sy|0> = i|1> twice).
    const ComplexMatrix yy = kron(pauli_y(), pauli_y());
    const auto v = yy.apply(e00);
    CHECK(std::abs(v[3] - cdouble{-1.0, 0.0}) < 1e-15);
    CHECK(std::abs(v[0]) + std::abs(v[1]) + std::abs(v[2]) == 0.0);
}

TEST_CASE("kron enforces the dimension cap") {
    const ComplexMatrix a = ComplexMatrix::identity(128);
    const ComplexMatrix b = ComplexMatrix::identity(64);
    CHECK_NOTHROW(kron(b, b));  // 4096 = cap exactly
    CHECK_THROWS_AS(kron(a, b), std::length_error);
}

TEST_CASE("kron is associative and satisfies the mixed-product rule") {
    auto gen = rng(101);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = random_hermitian(2, gen);
        const ComplexMatrix b = random_hermitian(2, gen);
        const ComplexMatrix c = random_hermitian(2, gen);
        const ComplexMatrix d = random_hermitian(2, gen);
        CHECK(frob_distance(kron(kron(a, b), c), kron(a, kron(b, c))) < 1e-12);
        CHECK(frob_distance(kron(a, b) * kron(c, d), kron(a * c, b * d)) < 1e-12);
    }
}

TEST_CASE("partial trace of Bell and product states") {
    const double s = 1.0 / std::sqrt(2.0);
    const PureState bell(2, {s, 0.0, 0.0, s});
    const ComplexMatrix marginal = partial_trace(bell.projector(), {1});
    CHECK(frob_distance(marginal, ComplexMatrix::identity(2) * cdouble{0.5, 0.0}) < 1e-14);

    const PureState prod = PureState::basis_state(2, 1);  // |01>
    const ComplexMatrix m2 = partial_trace(prod.projector(), {2});
    CHECK(std::abs(m2(1, 1) - cdouble{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(m2(0, 0)) < 1e-15);
}

TEST_CASE("partial trace of the 4-qubit GHZ state matches the index-sum oracle") {
    std::vector<cdouble> amp(16, 0.0);
    amp[0] = amp[15] = 1.0 / std::sqrt(2.0);
    const PureState ghz(4, std::move(amp));
    const ComplexMatrix rho = ghz.projector();

    const ComplexMatrix reduced = partial_trace(rho, {1, 2});
    const ComplexMatrix expected = oracle_partial_trace(rho, 4, {1, 2});
    CHECK(frob_distance(reduced, expected) < 1e-14);

    // (|00><00| + |11><11|)/2: purity 1/2.
    CHECK(std::abs(reduced(0, 0) - cdouble{0.5, 0.0}) < 1e-14);
    CHECK(std::abs(reduced(3, 3) - cdouble{0.5, 0.0}) < 1e-14);
    CHECK(std::abs(reduced(0, 3)) < 1e-14);
    double purity = 0.0;
    for (const auto& x : reduced.data()) purity += std::norm(x);
    CHECK(purity == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("partial trace rejects empty and full subsets") {
    const ComplexMatrix rho = ComplexMatrix::identity(4) * cdouble{0.25, 0.0};
    CHECK_THROWS_AS(partial_trace(rho, std::set<int>{}), std::domain_error);
    CHECK_THROWS_AS(partial_trace(rho, std::set<int>{1, 2}), std::domain_error);
}

TEST_CASE("complementary marginals of random pure states share nonzero spectra") {
    auto gen = rng(202);
    const std::vector<std::set<int>> subsets{{1}, {2}, {1, 2}, {1, 3}, {2, 4}, {1, 2, 3}};
    for (int trial = 0; trial < 200; ++trial) {
        const PureState psi = random_pure_state(4, gen);
        const ComplexMatrix rho = psi.projector();
        const auto& keep = subsets[trial % subsets.size()];
        std::set<int> complement;
        for (int q = 1; q <= 4; ++q)
            if (!keep.count(q)) complement.insert(q);

        auto spec_a = hermitian_eig(partial_trace(rho, keep)).eigenvalues;
        auto spec_b = hermitian_eig(partial_trace(rho, complement)).eigenvalues;
        std::vector<double> nz_a, nz_b;
        for (double v : spec_a)
            if (v > 1e-11) nz_a.push_back(v);
        for (double v : spec_b)
            if (v > 1e-11) nz_b.push_back(v);
        REQUIRE(nz_a.size() == nz_b.size());
        for (std::size_t i = 0; i < nz_a.size(); ++i) {
            CHECK(std::abs(nz_a[i] - nz_b[i]) < 1e-9);
        }
        // Traces are preserved on both sides.
        CHECK(std::abs(partial_trace(rho, keep).trace().real() - 1.0) < 1e-12);
    }
}

TEST_CASE("hermitian_eig on Pauli matrices") {
    const auto zspec = hermitian_eig(pauli_z());
    CHECK(zspec.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(zspec.eigenvalues[1] == doctest::Approx(1.0));

    const auto xspec = hermitian_eig(pauli_x());
    CHECK(xspec.eigenvalues[0] == doctest::Approx(-1.0));
    CHECK(xspec.eigenvalues[1] == doctest::Approx(1.0));
    // Eigenvectors are (|0> -+ |1>)/sqrt2 up to phase: check |amplitudes|.
    for (int k : {0, 1}) {
        const auto v = xspec.eigenvector(k);
        CHECK(std::abs(std::abs(v[0]) - 1.0 / std::sqrt(2.0)) < 1e-12);
        CHECK(std::abs(std::abs(v[1]) - 1.0 / std::sqrt(2.0)) < 1e-12);
    }
}

TEST_CASE("hermitian_eig rejects non-Hermitian input") {
    ComplexMatrix m(2, 2, {0.0, 1.0, 0.0, 0.0});
    CHECK_THROWS_AS(hermitian_eig(m), std::invalid_argument);
}

TEST_CASE("hermitian_eig reconstructs random Hermitian matrices up to dim 64") {
    auto gen = rng(303);
    for (std::size_t dim : {2u, 3u, 5u, 8u, 16u, 33u, 64u}) {
        const ComplexMatrix m = random_hermitian(dim, gen);
        const auto spec = hermitian_eig(m);

        // || V diag V^H - M || <= 1e-10 ||M||.
        ComplexMatrix rebuilt(dim, dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    rebuilt(r, c) += spec.eigenvalues[k] * spec.eigenvectors(r, k) *
                                     std::conj(spec.eigenvectors(c, k));
        CHECK(frob_distance(rebuilt, m) <= 1e-10 * m.frobenius_norm());

        const ComplexMatrix vhv = spec.eigenvectors.adjoint() * spec.eigenvectors;
        CHECK(frob_distance(vhv, ComplexMatrix::identity(dim)) < 1e-11);
        CHECK(std::is_sorted(spec.eigenvalues.begin(), spec.eigenvalues.end()));
    }
}

TEST_CASE("hermitian_eig handles degenerate spectra and is deterministic") {
    auto gen = rng(404);
    // Spectrum {1, 1, 1, 4, 4, 9} conjugated by a random unitary.
    const std::vector<double> lambda{1.0, 1.0, 1.0, 4.0, 4.0, 9.0};
    const ComplexMatrix u = random_unitary(6, gen);
    ComplexMatrix m(6, 6);
    for (std::size_t k = 0; k < 6; ++k)
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 6; ++c) m(r, c) += lambda[k] * u(r, k) * std::conj(u(c, k));

    const auto s1 = hermitian_eig(m);
    const auto s2 = hermitian_eig(m);
    for (std::size_t k = 0; k < 6; ++k) {
        CHECK(s1.eigenvalues[k] == doctest::Approx(lambda[k]).epsilon(1e-12));
        CHECK(s1.eigenvalues[k] == s2.eigenvalues[k]);  // bitwise determinism
    }
    CHECK(std::memcmp(s1.eigenvectors.data().data(), s2.eigenvectors.data().data(),
                      s1.eigenvectors.data().size() * sizeof(cdouble)) == 0);
    CHECK(frob_distance(s1.eigenvectors.adjoint() * s1.eigenvectors,
                        ComplexMatrix::identity(6)) < 1e-11);
}

TEST_CASE("hermitian_eig survives extreme dynamic range") {
    auto gen = rng(777);
    // Spectra spanning hundreds of decades, as thermal density matrices do.
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t dim = 8 + (trial % 3) * 4;
        const ComplexMatrix u = random_unitary(dim, gen);
        std::vector<double> lambda(dim);
        std::uniform_real_distribution<double> expo(-280.0, 0.0);
        for (auto& l : lambda) l = std::pow(10.0, expo(gen));
        lambda[0] = 1.0;
        ComplexMatrix m(dim, dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    m(r, c) += lambda[k] * u(r, k) * std::conj(u(c, k));
        const auto spec = hermitian_eig(m);
        CHECK(frob_distance(spec.eigenvectors.adjoint() * spec.eigenvectors,
                            ComplexMatrix::identity(dim)) < 1e-11);
        // Large eigenvalues are recovered to absolute precision ~1e-13.
        std::vector<double> sorted = lambda;
        std::sort(sorted.begin(), sorted.end());
        for (std::size_t k = 0; k < dim; ++k) {
            CHECK(std::abs(spec.eigenvalues[k] - sorted[k]) < 1e-13);
        }
    }

    // Rank-one projector plus a tiny orthogonal sliver.
    {
        auto g2 = rng(778);
        const PureState a = random_pure_state(4, g2);
        const PureState braw = random_pure_state(4, g2);
        // Orthogonalize b against a.
        std::vector<cdouble> bv = braw.amplitudes();
        const cdouble ov = inner_product(a, braw);
        for (std::size_t i = 0; i < bv.size(); ++i) bv[i] -= ov * a[i];
        const PureState b = PureState::normalized(4, std::move(bv));
        ComplexMatrix m = a.projector();
        m += b.projector() * cdouble{3.87e-154, 0.0};
        const auto spec = hermitian_eig(m);
        CHECK(std::abs(spec.eigenvalues.back() - 1.0) < 1e-13);
        CHECK(spec.eigenvalues.front() > -1e-13);
    }

    // Tight eigenvalue clusters at separated scales.
    {
        auto g3 = rng(779);
        const std::size_t dim = 12;
        const ComplexMatrix u = random_unitary(dim, g3);
        std::vector<double> lambda(dim, 1.0);
        for (std::size_t k = 0; k < 4; ++k) lambda[k] = 1e-9 + 1e-24 * k;
        for (std::size_t k = 4; k < 8; ++k) lambda[k] = 1.0 + 1e-15 * k;
        for (std::size_t k = 8; k < 12; ++k) lambda[k] = 1e6 + 1e-9 * k;
        ComplexMatrix m(dim, dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    m(r, c) += lambda[k] * u(r, k) * std::conj(u(c, k));
        const auto spec = hermitian_eig(m);
        CHECK(frob_distance(spec.eigenvectors.adjoint() * spec.eigenvectors,
                            ComplexMatrix::identity(dim)) < 1e-11);
        ComplexMatrix rebuilt(dim, dim);
        for (std::size_t k = 0; k < dim; ++k)
            for (std::size_t r = 0; r < dim; ++r)
                for (std::size_t c = 0; c < dim; ++c)
                    rebuilt(r, c) += spec.eigenvalues[k] * spec.eigenvectors(r, k) *
                                     std::conj(spec.eigenvectors(c, k));
        CHECK(frob_distance(rebuilt, m) <= 1e-10 * m.frobenius_norm());
    }

    // One larger dense case.
    {
        auto g4 = rng(780);
        const ComplexMatrix m = random_hermitian(128, g4);
        const auto spec = hermitian_eig(m);
        ComplexMatrix rebuilt(128, 128);
        for (std::size_t k = 0; k < 128; ++k)
            for (std::size_t r = 0; r < 128; ++r)
                for (std::size_t c = 0; c < 128; ++c)
                    rebuilt(r, c) += spec.eigenvalues[k] * spec.eigenvectors(r, k) *
                                     std::conj(spec.eigenvectors(c, k));
        CHECK(frob_distance(rebuilt, m) <= 1e-10 * m.frobenius_norm());
    }
}

TEST_CASE("singular values of fixed matrices") {
    const auto s_id = singular_values(ComplexMatrix::identity(2));
    CHECK(s_id[0] == doctest::Approx(1.0));
    CHECK(s_id[1] == doctest::Approx(1.0));

    const ComplexMatrix d(2, 2, {3.0, 0.0, 0.0, -4.0});
    const auto s_d = singular_values(d);
    CHECK(s_d[0] == doctest::Approx(4.0));
    CHECK(s_d[1] == doctest::Approx(3.0));
}

TEST_CASE("singular values match the eig(m^H m) oracle") {
    auto gen = rng(505);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto [r, c] : std::vector<std::pair<std::size_t, std::size_t>>{
             {4, 4}, {3, 5}, {6, 2}, {8, 8}}) {
        ComplexMatrix m(r, c);
        for (auto& x : m.data()) x = cdouble{gauss(gen), gauss(gen)};
        const auto sv = singular_values(m);
        const auto oracle = oracle_singular_values(m);
        REQUIRE(sv.size() == std::min(r, c));
        for (std::size_t i = 0; i < sv.size(); ++i) {
            CHECK(std::abs(sv[i] - oracle[i]) <= 1e-10 * std::max(1.0, oracle[0]));
        }
        // Squares sum to the Frobenius norm.
        double sum2 = 0.0;
        for (double s : sv) sum2 += s * s;
        const double f2 = m.frobenius_norm() * m.frobenius_norm();
        CHECK(std::abs(sum2 - f2) <= 1e-10 * f2);
    }
}

TEST_CASE("singular values are invariant under left/right unitaries") {
    auto gen = rng(606);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        ComplexMatrix m(5, 5);
        for (auto& x : m.data()) x = cdouble{gauss(gen), gauss(gen)};
        const ComplexMatrix u = random_unitary(5, gen);
        const ComplexMatrix w = random_unitary(5, gen);
        const auto s0 = singular_values(m);
        const auto s1 = singular_values(u * m * w);
        for (std::size_t i = 0; i < s0.size(); ++i) CHECK(std::abs(s0[i] - s1[i]) < 1e-10);
    }
}

TEST_CASE("conjugate_state conjugates amplitudes and is an involution") {
    const double s = 1.0 / std::sqrt(2.0);
    const PureState psi(1, {s, cdouble{0.0, s}});
    const PureState conj = conjugate_state(psi);
    CHECK(std::abs(conj[1] - cdouble{0.0, -s}) < 1e-15);
    const PureState twice = conjugate_state(conj);
    for (std::size_t i = 0; i < psi.dim(); ++i) CHECK(psi[i] == twice[i]);

    const PureState real_state(2, {0.6, 0.8, 0.0, 0.0});
    const PureState conj_real = conjugate_state(real_state);
    for (std::size_t i = 0; i < 4; ++i) CHECK(real_state[i] == conj_real[i]);
}

TEST_CASE("PureState enforces normalization") {
    CHECK_THROWS_AS(PureState(1, {1.0, 1.0}), std::invalid_argument);
    const PureState ok = PureState::normalized(1, {1.0, 1.0});
    CHECK(ok.norm() == doctest::Approx(1.0).epsilon(1e-14));
}
