#include <catch2/catch_amalgamated.hpp>

#include <random>

#include <Eigen/Eigenvalues>

#include "ptwell/hermitian_jacobi.hpp"

using ptwell::jacobi_eigen;
using Catch::Matchers::WithinAbs;

namespace {

Eigen::MatrixXcd random_hermitian(int n, std::mt19937& rng) {
    std::normal_distribution<double> g;
    Eigen::MatrixXcd a(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a(i, j) = {g(rng), g(rng)};
    return 0.5 * (a + a.adjoint());
}

}  // namespace

TEST_CASE("Jacobi agrees with Eigen on random Hermitian matrices", "[jacobi]") {
    std::mt19937 rng(42);
    for (int n : {1, 2, 5, 18, 42}) {
        const Eigen::MatrixXcd a = random_hermitian(n, rng);
        const auto mine = jacobi_eigen(a);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> ref(a);
        INFO("n=" << n);
        CHECK((mine.values - ref.eigenvalues()).cwiseAbs().maxCoeff() < 1e-12 * (1 + a.norm()));
        const Eigen::MatrixXcd recon = mine.vectors * mine.values.asDiagonal() * mine.vectors.adjoint();
        CHECK((recon - a).cwiseAbs().maxCoeff() < 1e-12 * (1 + a.norm()));
        const Eigen::MatrixXcd gram = mine.vectors.adjoint() * mine.vectors;
        CHECK((gram - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-13 * n);
        for (int i = 0; i + 1 < n; ++i) CHECK(mine.values(i) <= mine.values(i + 1));
    }
}

TEST_CASE("Jacobi handles diagonal and degenerate input", "[jacobi]") {
    Eigen::MatrixXcd d = Eigen::MatrixXcd::Zero(3, 3);
    d(0, 0) = 2.0;
    d(1, 1) = -1.0;
    d(2, 2) = 2.0;
    const auto r = jacobi_eigen(d);
    CHECK(r.values(0) == -1.0);
    CHECK(r.values(2) == 2.0);
    CHECK(r.sweeps <= 1);

    Eigen::MatrixXcd pauli_y = Eigen::MatrixXcd::Zero(2, 2);
    pauli_y(0, 1) = {0, -1};
    pauli_y(1, 0) = {0, 1};
    const auto y = jacobi_eigen(pauli_y);
    CHECK_THAT(y.values(0), WithinAbs(-1.0, 1e-15));
    CHECK_THAT(y.values(1), WithinAbs(1.0, 1e-15));
}

TEST_CASE("Jacobi rejects non-square input", "[jacobi]") {
    CHECK_THROWS(jacobi_eigen(Eigen::MatrixXcd::Zero(2, 3)));
}
