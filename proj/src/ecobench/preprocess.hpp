// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ecobench/dataset.hpp"
#include "ecobench/matrix.hpp"

namespace ecobench {

struct FeatureMatrix {
    Matrix values;                    // n x d
    std::vector<int> labels;          // length n, 0/1
    std::vector<std::string> columns; // d names, unique

    std::size_t n() const { return values.rows(); }
    std::size_t dim() const { return values.cols(); }
    bool operator==(const FeatureMatrix&) const = default;
};

// Marks the four derived columns (bytes_per_packet, payload_entropy_x_size,
// resource_util_sum, power_per_vm) as part of the feature view. Values are
// always recomputed from the base fields, so the operation is idempotent.
Dataset engineer_features(const Dataset& ds);

// Per-column category -> integer code, codes assigned in lexicographic
// category order. Stable across runs for the same data.
struct LabelEncoding {
    std::map<std::string, std::map<std::string, int>> by_column;
    bool operator==(const LabelEncoding&) const = default;
};

LabelEncoding fit_label_encoding(const Dataset& ds);

// Builds the numeric feature matrix from an engineered dataset: categorical
// columns become their integer codes in place, `status` becomes the label
// vector. With exclude_sustainability the power/carbon/cost/pue columns (and
// power_per_vm, which is derived from power) are left out.
FeatureMatrix encode(const Dataset& ds, const LabelEncoding& enc,
                     bool exclude_sustainability = false);
std::pair<FeatureMatrix, LabelEncoding> encode(const Dataset& ds,
                                               bool exclude_sustainability = false);

struct ScalerParams {
    std::vector<double> mean;
    std::vector<double> stddev; // population standard deviation
    bool operator==(const ScalerParams&) const = default;
};

ScalerParams fit_scaler(const FeatureMatrix& train);

// (x - mean) / std per column; zero-variance columns map to all zeros.
FeatureMatrix apply_scaler(const FeatureMatrix& m, const ScalerParams& p);

struct SplitPair {
    FeatureMatrix train;
    FeatureMatrix test;
    std::uint64_t seed = 0;
};

// Per-class test counts follow largest-remainder rounding of
// class_count * test_fraction; membership is decided only by the seed. Row
// order inside each part preserves the input order.
SplitPair stratified_split(const FeatureMatrix& m, double test_fraction, std::uint64_t seed);

// Oversamples the minority class up to exact parity by interpolating between
// a minority row and one of its k nearest minority neighbors (Euclidean).
// Original rows are preserved untouched; synthetic rows are appended.
FeatureMatrix smote(const FeatureMatrix& train, int k, std::uint64_t seed);

// Deterministic core behind smote(): all randomness (neighbor choice, then
// interpolation factor, in that order per synthetic row) comes from
// unit_draw, which must return values in [0, 1).
FeatureMatrix smote_core(const FeatureMatrix& train, int k,
                         const std::function<double()>& unit_draw);

} // namespace ecobench
