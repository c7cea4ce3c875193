// Copyright 2026 The mgmagic Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>

#include "statevector.hpp"

namespace mgmagic {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// psi_phi = (|0000> + |0011> + |1100> + e^{i phi}|1111>) / 2
[[nodiscard]] inline QubitState psi_phi(double phi) {
    Amplitudes a = Amplitudes::Zero(16);
    a(0b0000) = 0.5;
    a(0b0011) = 0.5;
    a(0b1100) = 0.5;
    a(0b1111) = 0.5 * std::polar(1.0, phi);
    return QubitState(4, a);
}

/// (|0000> + |1111>) / sqrt(2)
[[nodiscard]] inline QubitState ghz4() {
    Amplitudes a = Amplitudes::Zero(16);
    a(0b0000) = a(0b1111) = 1.0 / std::sqrt(2.0);
    return QubitState(4, a);
}

/// |phi+>_{13} |phi+>_{24}, the Choi state of SWAP across 14|23.
[[nodiscard]] inline QubitState magic_m() {
    Amplitudes a = Amplitudes::Zero(16);
    a(0b0000) = a(0b0101) = a(0b1010) = a(0b1111) = 0.5;
    return QubitState(4, a);
}

/// (|0> + |1>) / sqrt(2) on one line.
[[nodiscard]] inline QubitState plus_state() {
    Amplitudes a(2);
    a << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return QubitState(1, a);
}

/// Angle reduced to [0, 2 pi).
[[nodiscard]] inline double wrap_angle(double x) {
    double r = std::fmod(x, kTwoPi);
    if (r < 0) {
        r += kTwoPi;
    }
    return r;
}

/// Distance between two angles on the circle.
[[nodiscard]] inline double angle_distance(double a, double b) {
    const double d = wrap_angle(a - b);
    return std::min(d, kTwoPi - d);
}

}  // namespace mgmagic
