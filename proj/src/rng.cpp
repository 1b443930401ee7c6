// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/rng.hpp"

#include <cmath>
#include <numbers>

namespace secbeam {

namespace {

// splitmix64 finalizer (Stafford mix13).
std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t key) : seed_(seed), key_(key) {
    state_ = mix64(mix64(seed) ^ mix64(key * 0xd1342543de82ef95ULL + 0x2545f4914f6cdd1dULL));
}

RngStream RngStream::substream(std::uint64_t index) const {
    return RngStream(seed_, mix64(key_ ^ mix64(index + 0x6a09e667f3bcc909ULL)));
}

std::uint64_t RngStream::next_raw() {
    state_ += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state_;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double RngStream::uniform() {
    // 53-bit mantissa, shifted into (0, 1).
    const std::uint64_t r = next_raw() >> 11;
    return (static_cast<double>(r) + 0.5) * 0x1.0p-53;
}

double RngStream::normal() {
    if (has_cached_) {
        has_cached_ = false;
        return cached_normal_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(th);
    has_cached_ = true;
    return r * std::cos(th);
}

Complex RngStream::cnormal() {
    const double s = std::numbers::sqrt2;
    return Complex(normal() / s, normal() / s);
}

CVector RngStream::cnormal_vector(int n) {
    CVector v(n);
    for (int i = 0; i < n; ++i) v(i) = cnormal();
    return v;
}

}  // namespace secbeam
