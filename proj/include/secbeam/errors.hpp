// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <stdexcept>
#include <string>

namespace secbeam {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonHermitian : Error {
    explicit NonHermitian(const std::string& what = "matrix is not Hermitian within tolerance")
        : Error(what) {}
};

struct NotPsd : Error {
    explicit NotPsd(const std::string& what = "matrix is not positive semidefinite")
        : Error(what) {}
};

struct ZeroVector : Error {
    explicit ZeroVector(const std::string& what = "vector norm is numerically zero")
        : Error(what) {}
};

struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& what = "inconsistent dimensions")
        : Error(what) {}
};

struct BadProbability : Error {
    explicit BadProbability(const std::string& what = "probability must lie in (0, 1]")
        : Error(what) {}
};

struct BadRate : Error {
    explicit BadRate(const std::string& what = "target rate must be positive")
        : Error(what) {}
};

struct BadConfig : Error {
    using Error::Error;
};

struct RankViolation : Error {
    explicit RankViolation(const std::string& what =
                               "relaxation returned a higher-rank solution that could not be "
                               "repaired by rank-1 projection")
        : Error(what) {}
};

struct DegenerateDirection : Error {
    explicit DegenerateDirection(const std::string& what =
                                     "projection direction is numerically zero")
        : Error(what) {}
};

struct RestrictionUnrecoverable : Error {
    explicit RestrictionUnrecoverable(
        const std::string& what = "no rank-1 point satisfying the restriction was found")
        : Error(what) {}
};

struct RandomizationFailed : Error {
    explicit RandomizationFailed(
        const std::string& what = "no randomized candidate satisfied the restriction")
        : Error(what) {}
};

}  // namespace secbeam
