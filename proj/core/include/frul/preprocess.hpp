#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "frul/cmapss.hpp"

namespace frul {

// Per-signal median-filter kernel sizes; absent or 1 means no filtering.
struct FilterPlan {
    std::map<int, int> kernels;  // base-feature index -> odd kernel >= 1

    int kernel_for(int signal) const {
        auto it = kernels.find(signal);
        return it == kernels.end() ? 1 : it->second;
    }
};

// Per-feature z-score parameters, population convention.
struct ScalerParams {
    std::vector<std::string> feature_names;
    std::vector<double> mean;
    std::vector<double> stddev;
};

struct PruneConfig {
    double prune_chance = 0.3;
    double p = 0.4;
    double pplus = 0.1;
    double heavy_fraction = 0.75;
    std::uint64_t seed = 0;
};

struct CorrelationMatrix {
    std::vector<std::string> labels;
    std::vector<double> values;  // n*n row-major

    std::size_t size() const { return labels.size(); }
    double at(std::size_t i, std::size_t j) const { return values[i * labels.size() + j]; }
};

// Pearson coefficient; 0 when fewer than 3 samples or either side has zero variance.
double pearson(std::span<const double> x, std::span<const double> y);

// Sliding-window median with nearest-edge padding; kernel 1 is the identity.
std::vector<double> median_filter(std::span<const double> signal, int kernel);

// Odd kernels {3, 5, ..., floor(samples/10)}; empty when floor(samples/10) < 3.
std::vector<int> kernel_candidates(std::size_t samples);

// Weight of one unit's best kernel in the geometric average.
double kernel_weight(double abs_corr, std::size_t samples);

FilterPlan select_kernels(const TimeSeriesTable& table, std::span<const int> signals);

// Filters each signal per unit; unit boundaries are never crossed.
TimeSeriesTable apply_filter_plan(const TimeSeriesTable& table, const FilterPlan& plan);

// Rows to drop from the unit's tail for a uniform draw u; 0 keeps the unit intact.
std::size_t prune_tail_rows(double u, std::size_t rows, const PruneConfig& cfg);

// Randomly drops trailing rows per unit; draws derive from (seed, unit id).
TimeSeriesTable prune_units(const TimeSeriesTable& table, const PruneConfig& cfg);

ScalerParams fit_scaler(const FeatureTable& table);
ScalerParams fit_scaler(const FeatureTable& table, std::span<const int> features);
FeatureTable apply_scaler(const FeatureTable& table, const ScalerParams& params);

// Pearson matrix over OS1..OS3, SM1..SM21, RUL; zero-variance columns yield 0 rows.
CorrelationMatrix correlation_matrix(const TimeSeriesTable& table);

std::string correlation_csv(const CorrelationMatrix& matrix);
// Color-cell svg; dark-to-light diverging ramp, strongest |corr| lightest/darkest.
std::string correlation_svg(const CorrelationMatrix& matrix);

}  // namespace frul
