// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <cstdint>
#include <random>

#include "secbeam/hermitian.hpp"

namespace secbeam {

// Counter-based substream RNG: a stream is identified by (seed, key) and child
// streams are derived by hashing, so parallel Monte Carlo draws are
// order-independent and reproducible. Gaussians come from an explicit
// Box-Muller transform rather than std::normal_distribution, which is
// implementation-defined.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed, std::uint64_t key = 0);

    /// Independent child stream; substream(i) is stable across runs and does
    /// not advance this stream.
    RngStream substream(std::uint64_t index) const;

    /// Uniform in (0, 1).
    double uniform();

    /// Standard normal N(0, 1).
    double normal();

    /// Circularly-symmetric CN(0, 1): real and imaginary parts N(0, 1/2).
    Complex cnormal();

    /// Vector with i.i.d. CN(0, 1) entries.
    CVector cnormal_vector(int n);

    std::uint64_t seed() const { return seed_; }
    std::uint64_t key() const { return key_; }

  private:
    std::uint64_t next_raw();

    std::uint64_t seed_;
    std::uint64_t key_;
    std::uint64_t state_;
    double cached_normal_ = 0.0;
    bool has_cached_ = false;
};

}  // namespace secbeam
