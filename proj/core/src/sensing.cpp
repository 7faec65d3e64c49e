// SPDX-License-Identifier: Apache-2.0
//
// jomp: joint compressive CSIT estimation for FDD multi-user massive MIMO
// Copyright (C) 2026 The jomp authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "jomp/sensing.hpp"

#include <cmath>

#include "jomp/error.hpp"

namespace jomp {

double db_to_linear(double db) noexcept {
    return std::pow(10.0, db / 10.0);
}

PilotBlock generate_pilots(std::size_t num_tx, std::size_t slots, double power,
                           const ComplexMatrix& tx_basis, SeededRng& rng) {
    require(slots >= 1, "generate_pilots: T must be >= 1");
    require(num_tx >= 1, "generate_pilots: M must be >= 1");
    require(power > 0.0 && std::isfinite(power), "generate_pilots: P must be positive");
    const auto m = static_cast<Eigen::Index>(num_tx);
    const auto t = static_cast<Eigen::Index>(slots);
    require(tx_basis.rows() == m && tx_basis.cols() == m, "generate_pilots: A_T must be M x M");

    const double amplitude = std::sqrt(power / static_cast<double>(num_tx));
    std::bernoulli_distribution coin(0.5);

    PilotBlock out;
    out.power = power;
    out.slots = slots;
    out.angular.resize(m, t);
    for (Eigen::Index c = 0; c < t; ++c)
        for (Eigen::Index r = 0; r < m; ++r)
            out.angular(r, c) = coin(rng) ? amplitude : -amplitude;
    out.pilots = tx_basis * out.angular;
    // A_T is unitary, so sqrt(M/(PT)) X^H A_T reduces to sqrt(M/(PT)) X_a^H.
    const double scale = std::sqrt(static_cast<double>(num_tx) / (power * static_cast<double>(slots)));
    out.measurement = scale * out.angular.adjoint();
    return out;
}

ComplexMatrix observe(const ComplexMatrix& channel, const ComplexMatrix& pilots, SeededRng& rng,
                      bool noiseless) {
    require(channel.cols() == pilots.rows(), "observe: H columns must match X rows");
    ComplexMatrix y = channel * pilots;
    if (!noiseless)
        y += complex_gaussian_matrix(y.rows(), y.cols(), rng);
    return y;
}

ComplexMatrix cs_transform(const ComplexMatrix& observation, const ComplexMatrix& rx_basis,
                           std::size_t num_tx, double power, std::size_t slots) {
    require(observation.rows() == rx_basis.rows(), "cs_transform: Y rows must match A_R");
    require(static_cast<std::size_t>(observation.cols()) == slots, "cs_transform: Y must have T columns");
    require(power > 0.0, "cs_transform: P must be positive");
    const double scale = std::sqrt(static_cast<double>(num_tx) / (power * static_cast<double>(slots)));
    return scale * (observation.adjoint() * rx_basis);
}

MeasurementSet measure(const AngularChannelSet& channels, const PilotBlock& pilots, SeededRng& rng,
                       bool noiseless) {
    MeasurementSet out;
    const auto num_tx = static_cast<std::size_t>(pilots.pilots.rows());
    out.noise_variance = static_cast<double>(num_tx) / (pilots.power * static_cast<double>(pilots.slots));
    for (const auto& h : channels.antenna) {
        ComplexMatrix y = observe(h, pilots.pilots, rng, noiseless);
        out.transformed.push_back(cs_transform(y, channels.rx_basis, num_tx, pilots.power, pilots.slots));
        out.raw.push_back(std::move(y));
    }
    return out;
}

} // namespace jomp
