#pragma once

#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace nsv {

// Deterministic random source. Gaussian variates come from an explicit
// Box-Muller transform so the stream depends only on mt19937_64, not on
// the standard library's distribution internals.
class Prng {
  public:
    explicit Prng(std::uint64_t seed) : engine_(seed) {}

    double uniform();                       // [0, 1)
    std::uint64_t integer(std::uint64_t n); // [0, n)
    double gaussian();                      // standard normal
    std::complex<double> complex_gaussian();

    // rows x cols matrix of independent standard complex Gaussians.
    Eigen::MatrixXcd ginibre(Eigen::Index rows, Eigen::Index cols);

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

// Stateless mixing of a base seed with stream indices, used to give every
// sweep trial its own reproducible sub-seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace nsv
