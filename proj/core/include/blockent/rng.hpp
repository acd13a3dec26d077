#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>

#include "blockent/linalg.hpp"

namespace blockent {

// splitmix64 of (seed, index): one cheap, well-mixed stream per work item so
// that parallel sampling stays independent of scheduling order.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform() { return uni_(gen_); }                       // [0, 1)
    double normal() { return norm_(gen_); }                       // N(0, 1)
    Complex cnormal() { return {norm_(gen_), norm_(gen_)}; }      // standard complex Gaussian

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
    std::uniform_real_distribution<double> uni_{0.0, 1.0};
    std::normal_distribution<double> norm_{0.0, 1.0};
};

// Haar-distributed isometry with k rows and r orthonormal columns (k >= r):
// QR of a standard complex Gaussian matrix with the R diagonal phase fixed.
Eigen::MatrixXcd haar_isometry(Eigen::Index k, Eigen::Index r, Rng& rng);

}  // namespace blockent
