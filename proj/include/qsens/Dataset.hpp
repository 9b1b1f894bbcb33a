// Copyright 2026 The qsens Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Binary classification datasets: CSV ingestion, standardization, PCA and
 * the amplitude / angle state encodings.
 */
#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsens/ComplexMatrix.hpp"

namespace qsens::qml {

enum class Encoding { Amplitude, Angle };

[[nodiscard]] std::string_view toString(Encoding e) noexcept;
[[nodiscard]] Encoding parseEncoding(std::string_view text);

/// Raw features with labels in {-1, +1}.
struct Dataset {
    std::string name;
    std::vector<std::vector<double>> features;
    std::vector<int> labels;
    /// Original class names mapped to +1 and -1.
    std::string positive_class;
    std::string negative_class;
};

struct EncodedDataset {
    std::vector<StateVector> states;
    std::vector<int> labels;
    Encoding encoding = Encoding::Amplitude;
};

struct Pca {
    /// Unit-norm principal axes, descending explained variance.
    std::vector<std::vector<double>> components;
    std::vector<double> variances;
};

/**
 * @brief Keeps the two most frequent classes (ties broken by name) and maps
 * the most frequent to +1, the other to -1.
 *
 * Throws SingleClass when fewer than two classes exist, InvalidArgument on
 * ragged rows.
 */
[[nodiscard]] Dataset makeDataset(std::string name,
                                  std::vector<std::vector<double>> features,
                                  const std::vector<std::string> &classes);

/// CSV with a header row, one `label` column, numeric feature columns.
/// Throws IoError.
[[nodiscard]] Dataset loadDatasetCsv(const std::filesystem::path &path);

/// Column-wise zero mean and unit (population) variance; constant columns
/// become zero.
[[nodiscard]] std::vector<std::vector<double>>
standardize(const std::vector<std::vector<double>> &rows);

/// Top `k` principal axes of already centred rows via the covariance
/// eigendecomposition. Axis signs are fixed so the largest-magnitude entry is
/// positive.
[[nodiscard]] Pca pca(const std::vector<std::vector<double>> &centred,
                      std::size_t k);

/// L2-normalized components as real amplitudes; all-zero maps to |0...0>.
[[nodiscard]] StateVector amplitudeEncode(std::span<const double> components);

/// Tensor product of R_Y(angle_q)|0>, qubit 0 most significant.
[[nodiscard]] StateVector angleEncode(std::span<const double> angles);

/**
 * @brief Standardize, project onto the top 2^n (amplitude) or n (angle)
 * principal axes and encode.
 *
 * Angle features are min-max scaled per component to [0, pi].
 * Throws TooFewFeatures, SingleClass.
 */
[[nodiscard]] EncodedDataset prepareDataset(const Dataset &raw, int qubits,
                                            Encoding encoding);

} // namespace qsens::qml
