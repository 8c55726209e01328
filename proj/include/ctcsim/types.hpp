// Copyright 2026 The ctcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace ctcsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;
using Index = Eigen::Index;

// Global convention: qubit 0 is the leftmost (most significant) index of a
// computational-basis label. A register of n qubits with l CTC qubits keeps
// the CTC qubits as the trailing labels n-l .. n-1.

inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kUnitTraceTol = 1e-12;
inline constexpr double kPsdEigTol = 1e-10;
inline constexpr double kSymmetrizeTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-12;

}  // namespace ctcsim
