#pragma once

// Shared builders for the test suites: the canonical separable two-block
// fixture, Bell and Werner states, and seeded random states.

#include <Eigen/Dense>
#include <cmath>
#include <vector>

#include "blockent/blocks.hpp"
#include "blockent/rng.hpp"
#include "blockent/states.hpp"

namespace testfix {

inline Eigen::VectorXcd bell_phi_plus() {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(4);
    v(0) = 1.0 / std::sqrt(2.0);
    v(3) = 1.0 / std::sqrt(2.0);
    return v;
}

inline blockent::ComplexMatrix bell_rho() {
    const Eigen::VectorXcd v = bell_phi_plus();
    return blockent::ComplexMatrix(v * v.adjoint());
}

inline blockent::ComplexMatrix werner(double p) {
    const Eigen::VectorXcd v = bell_phi_plus();
    Eigen::MatrixXcd rho =
        p * (v * v.adjoint()) + (1.0 - p) / 4.0 * Eigen::MatrixXcd::Identity(4, 4);
    return blockent::ComplexMatrix(std::move(rho));
}

// The separable 2x4 two-block mixture used throughout: prefactor 1/8 on the
// full diagonal plus the X-shaped coherences inside the E blocks {0,1} and
// {2,3}. Each block is an equal mixture of two Bell-like states and is
// separable.
inline blockent::BipartiteState two_block_fixture() {
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(8, 8);
    for (Eigen::Index i = 0; i < 8; ++i) {
        rho(i, i) = 0.125;
    }
    const Eigen::Index pairs[4][2] = {{0, 5}, {1, 4}, {2, 7}, {3, 6}};
    for (const auto& pair : pairs) {
        rho(pair[0], pair[1]) = 0.125;
        rho(pair[1], pair[0]) = 0.125;
    }
    return blockent::BipartiteState(2, 4, blockent::ComplexMatrix(std::move(rho)));
}

inline blockent::PureBipartiteState random_pure(Eigen::Index dim_s, Eigen::Index dim_e,
                                                blockent::Rng& rng) {
    Eigen::VectorXcd v(dim_s * dim_e);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        v(i) = rng.cnormal();
    }
    v /= v.norm();
    return blockent::PureBipartiteState(dim_s, dim_e, std::move(v));
}

inline blockent::ComplexMatrix random_density(Eigen::Index dim, blockent::Rng& rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            g(i, j) = rng.cnormal();
        }
    }
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace().real();
    return blockent::ComplexMatrix(std::move(rho));
}

inline blockent::ComplexMatrix random_hermitian(Eigen::Index dim, blockent::Rng& rng) {
    Eigen::MatrixXcd g(dim, dim);
    for (Eigen::Index j = 0; j < dim; ++j) {
        for (Eigen::Index i = 0; i < dim; ++i) {
            g(i, j) = rng.cnormal();
        }
    }
    return blockent::ComplexMatrix(Eigen::MatrixXcd(0.5 * (g + g.adjoint())));
}

// Block-diagonal mixture of two random blocks on the E index ranges
// [0, n1) and [n1, n1+n2), with weight p on the first.
inline blockent::BipartiteState two_block_state(Eigen::Index dim_s, Eigen::Index n1,
                                                Eigen::Index n2, double p,
                                                blockent::Rng& rng) {
    const Eigen::Index dim_e = n1 + n2;
    const blockent::ComplexMatrix b1 = random_density(dim_s * n1, rng);
    const blockent::ComplexMatrix b2 = random_density(dim_s * n2, rng);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(dim_s * dim_e, dim_s * dim_e);
    const auto embed = [&](const Eigen::MatrixXcd& block, Eigen::Index offset,
                           Eigen::Index n_i, double weight) {
        for (Eigen::Index s = 0; s < dim_s; ++s) {
            for (Eigen::Index t = 0; t < dim_s; ++t) {
                for (Eigen::Index e = 0; e < n_i; ++e) {
                    for (Eigen::Index f = 0; f < n_i; ++f) {
                        rho(s * dim_e + offset + e, t * dim_e + offset + f) +=
                            weight * block(s * n_i + e, t * n_i + f);
                    }
                }
            }
        }
    };
    embed(b1.data, 0, n1, p);
    embed(b2.data, n1, n2, 1.0 - p);
    return blockent::BipartiteState(dim_s, dim_e, blockent::ComplexMatrix(std::move(rho)));
}

inline std::vector<Eigen::Index> index_range(Eigen::Index from, Eigen::Index to) {
    std::vector<Eigen::Index> out;
    for (Eigen::Index e = from; e < to; ++e) {
        out.push_back(e);
    }
    return out;
}

}  // namespace testfix
