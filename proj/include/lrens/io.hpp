#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lrens/methods.hpp"

namespace lrens {

// Synthetic label ranking data: features are uniform on [-1,1]^d, a fixed
// random utility matrix maps them to per-label utilities plus Gaussian noise,
// and the target ranks labels by utility.
struct SynthConfig {
    int n_instances = 100;
    int n_features = 5;
    int n_labels = 3;
    double noise_sigma = 0.0;
    uint64_t seed = 0;
};

Dataset generate_synthetic(const SynthConfig& config);

// Dataset CSV: UTF-8, comma separated, first row is the header. Columns named
// rank_<label> hold the rank position of that label (1 = most preferred) and
// define the label set in header order; every other column is a feature.
Dataset parse_dataset(const std::string& path);

// Inverse emitter for parse_dataset; feature cells use the shortest decimal
// form that parses back to the identical double.
void write_dataset(const Dataset& data, const std::string& path);

// Feature columns only, for prediction inputs; rank_ columns are ignored
// when present.
std::pair<std::vector<std::string>, std::vector<std::vector<double>>>
parse_feature_matrix(const std::string& path);

// Versioned text model format shared by all five methods.
void save_model(const Model& model, const std::string& path);
Model load_model(const std::string& path);

// Shortest decimal representation that round-trips to the same double.
std::string format_exact(double value);
// Fixed 12-significant-digit form used in report files.
std::string format_g12(double value);

// Write-temp-then-rename so readers never observe partial files.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace lrens
