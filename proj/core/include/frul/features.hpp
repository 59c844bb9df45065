#pragma once

#include <span>
#include <vector>

#include "frul/cmapss.hpp"
#include "frul/tensor.hpp"

namespace frul {

struct FeatureConfig {
    std::vector<int> cumsum_signals;      // base-feature indices, default none
    std::vector<int> derivative_signals;  // base-feature indices
    int dt = 1;
    int sequence_length = 8;
};

// Default per the architecture: rate-of-change (dt=1) of all 21 sensors, no cumsums.
FeatureConfig default_feature_config();

std::vector<double> cumulative_sum(std::span<const double> signal);

// out[i] = 0 for i < dt, else (x[i] - x[i-dt]) / dt.
std::vector<double> rate_of_change(std::span<const double> signal, int dt);

// Base 24 columns plus the configured engineered columns, computed per unit.
FeatureTable engineer_features(const TimeSeriesTable& table, const FeatureConfig& cfg);

struct SequenceSample {
    AgentId agent;
    int unit;
    int end_cycle;
};

struct SequenceBatch {
    Tensor inputs;  // [count, sequence_length, feature_count]
    std::vector<double> targets;
    std::vector<SequenceSample> provenance;

    std::size_t size() const { return targets.size(); }
    std::size_t sequence_length() const { return inputs.empty() ? 0 : inputs.dim(1); }
    std::size_t feature_count() const { return inputs.empty() ? 0 : inputs.dim(2); }
};

enum class WindowMode {
    Train,  // one window per cycle, short windows left-padded with the first row
    Test,   // only the window ending at each unit's last cycle
};

SequenceBatch build_windows(const FeatureTable& table, const FeatureConfig& cfg,
                            WindowMode mode);

// Row-gather into a new batch (used for mini-batching and splits).
SequenceBatch gather(const SequenceBatch& batch, std::span<const std::size_t> indices);

}  // namespace frul
