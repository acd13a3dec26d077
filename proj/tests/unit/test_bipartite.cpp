#include <cmath>

#include "blockent/states.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace blockent;

namespace {

PureBipartiteState basis_state(Eigen::Index dim_s, Eigen::Index dim_e, Eigen::Index s,
                               Eigen::Index e) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_s * dim_e);
    v(s * dim_e + e) = 1.0;
    return PureBipartiteState(dim_s, dim_e, std::move(v));
}

}  // namespace

TEST_CASE("validation passes the maximally mixed two-qubit state") {
    const BipartiteState state(2, 2, ComplexMatrix(Eigen::MatrixXcd(
                                          0.25 * Eigen::MatrixXcd::Identity(4, 4))));
    const ValidationReport report = validate(state);
    CHECK(report.ok());
    CHECK(report.hermiticity_deviation < 1e-15);
    CHECK(report.min_eigenvalue > 0.2);
}

TEST_CASE("validation flags a trace deficit") {
    const BipartiteState state(2, 2, ComplexMatrix(Eigen::MatrixXcd(
                                          0.225 * Eigen::MatrixXcd::Identity(4, 4))));
    const ValidationReport report = validate(state);
    CHECK(report.hermitian_ok());
    CHECK(!report.trace_ok());
    CHECK(report.trace_deviation == doctest::Approx(0.1).epsilon(1e-9));
    CHECK_THROWS_AS(require_valid(state), InvalidState);
}

TEST_CASE("the separable two-block fixture is a valid state") {
    const ValidationReport report = validate(testfix::two_block_fixture());
    CHECK(report.ok());
}

TEST_CASE("pure states must be normalized") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = 2.0;
    CHECK_THROWS_AS(PureBipartiteState(2, 2, std::move(v)), InvalidState);
}

TEST_CASE("product basis states carry no entanglement") {
    CHECK(linear_entropy_entanglement(basis_state(2, 2, 0, 0)) == doctest::Approx(0.0));
}

TEST_CASE("a Bell pair saturates the qubit linear-entropy measure") {
    const PureBipartiteState psi(2, 2, testfix::bell_phi_plus());
    CHECK(linear_entropy_entanglement(psi) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a lopsided superposition has the hand-computed linear entropy") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = std::sqrt(0.9);
    v(3) = std::sqrt(0.1);
    const PureBipartiteState psi(2, 2, std::move(v));
    // 2 (1 - 0.81 - 0.01)
    CHECK(linear_entropy_entanglement(psi) == doctest::Approx(0.36).epsilon(1e-12));
}

TEST_CASE("a maximally entangled qutrit pair exceeds the qubit range") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(9);
    for (Eigen::Index s = 0; s < 3; ++s) {
        v(s * 3 + s) = 1.0 / std::sqrt(3.0);
    }
    const PureBipartiteState psi(3, 3, std::move(v));
    CHECK(linear_entropy_entanglement(psi) == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("entropy of a pure projector vanishes") {
    Rng rng(31);
    const PureBipartiteState psi = testfix::random_pure(2, 3, rng);
    const ComplexMatrix proj(psi.amplitudes * psi.amplitudes.adjoint());
    CHECK(von_neumann_entropy(proj) == doctest::Approx(0.0).epsilon(1e-10));
}

TEST_CASE("entropy of the maximally mixed qubit is one bit") {
    const ComplexMatrix rho(Eigen::MatrixXcd(0.5 * Eigen::MatrixXcd::Identity(2, 2)));
    CHECK(von_neumann_entropy(rho) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("entropy of a 3:1 mixture matches the binary-entropy value") {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(2, 2);
    rho(0, 0) = 0.75;
    rho(1, 1) = 0.25;
    CHECK(von_neumann_entropy(ComplexMatrix(std::move(rho))) ==
          doctest::Approx(0.811278124459).epsilon(1e-9));
}

TEST_CASE("reduction of a product basis state is the kept projector") {
    const ComplexMatrix red = reduced_state(basis_state(2, 2, 0, 1), Subsystem::E);
    Eigen::MatrixXcd expected = Eigen::MatrixXcd::Zero(2, 2);
    expected(1, 1) = 1.0;
    CHECK((red.data - expected).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("reduction of a Bell pair is maximally mixed") {
    const PureBipartiteState psi(2, 2, testfix::bell_phi_plus());
    const ComplexMatrix red = reduced_state(psi, Subsystem::QS);
    CHECK((red.data - 0.5 * Eigen::MatrixXcd::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("the two reductions of a pure state share their nonzero spectrum") {
    Rng rng(32);
    const PureBipartiteState psi = testfix::random_pure(3, 4, rng);
    const Eigen::VectorXd s_spec = eig_hermitian(reduced_state(psi, Subsystem::QS)).values;
    const Eigen::VectorXd e_spec = eig_hermitian(reduced_state(psi, Subsystem::E)).values;
    // keep-E has one extra zero eigenvalue; compare the top three.
    for (Eigen::Index i = 0; i < 3; ++i) {
        CHECK(std::abs(s_spec(2 - i) - e_spec(3 - i)) < 1e-10);
    }
}

TEST_CASE("the linear-entropy measure is invariant under local unitaries") {
    Rng rng(33);
    for (int trial = 0; trial < 20; ++trial) {
        const Eigen::Index dim_s = 2 + trial % 3;
        const Eigen::Index dim_e = 2 + (trial / 3) % 3;
        const PureBipartiteState psi = testfix::random_pure(dim_s, dim_e, rng);
        const Eigen::MatrixXcd us = haar_isometry(dim_s, dim_s, rng);
        const Eigen::MatrixXcd ue = haar_isometry(dim_e, dim_e, rng);
        const ComplexMatrix u = kron(ComplexMatrix(us), ComplexMatrix(ue));
        Eigen::VectorXcd rotated = u.data * psi.amplitudes;
        rotated /= rotated.norm();
        const PureBipartiteState psi2(dim_s, dim_e, std::move(rotated));
        CHECK(std::abs(linear_entropy_entanglement(psi) -
                       linear_entropy_entanglement(psi2)) < 1e-10);
    }
}

TEST_CASE("the qubit measure matches its two-branch closed form") {
    Rng rng(34);
    for (int trial = 0; trial < 50; ++trial) {
        const Eigen::Index dim_e = 2 + trial % 4;
        const PureBipartiteState psi = testfix::random_pure(2, dim_e, rng);
        // psi = a |0>|psi_a> + b |1>|psi_b> with a, b the row norms.
        Eigen::VectorXcd row_a = psi.amplitudes.head(dim_e);
        Eigen::VectorXcd row_b = psi.amplitudes.tail(dim_e);
        const double a = row_a.norm();
        const double b = row_b.norm();
        row_a /= a;
        row_b /= b;
        const double overlap = std::abs(row_a.dot(row_b));
        const double closed = 4.0 * a * a * b * b * (1.0 - overlap * overlap);
        CHECK(std::abs(linear_entropy_entanglement(psi) - closed) < 1e-10);
    }
}

TEST_CASE("the qubit measure stays within its stated range") {
    Rng rng(35);
    for (int trial = 0; trial < 50; ++trial) {
        const PureBipartiteState psi = testfix::random_pure(2, 5, rng);
        const double e = linear_entropy_entanglement(psi);
        CHECK(e >= -1e-12);
        CHECK(e <= 1.0 + 1e-12);
    }
}
