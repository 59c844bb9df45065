#include "frul/features.hpp"

#include <algorithm>

namespace frul {

FeatureConfig default_feature_config() {
    FeatureConfig cfg;
    for (int s = kSettingCount; s < kBaseFeatureCount; ++s)
        cfg.derivative_signals.push_back(s);
    return cfg;
}

std::vector<double> cumulative_sum(std::span<const double> signal) {
    std::vector<double> out(signal.size());
    double total = 0.0;
    for (std::size_t i = 0; i < signal.size(); ++i) {
        total += signal[i];
        out[i] = total;
    }
    return out;
}

std::vector<double> rate_of_change(std::span<const double> signal, int dt) {
    if (dt < 1) throw InvalidArgument("rate_of_change: dt must be >= 1");
    std::vector<double> out(signal.size(), 0.0);
    for (std::size_t i = static_cast<std::size_t>(dt); i < signal.size(); ++i)
        out[i] = (signal[i] - signal[i - static_cast<std::size_t>(dt)]) / dt;
    return out;
}

FeatureTable engineer_features(const TimeSeriesTable& table, const FeatureConfig& cfg) {
    auto check_index = [](int idx) {
        if (idx < 0 || idx >= kBaseFeatureCount)
            throw InvalidArgument("feature index out of range: " + std::to_string(idx));
    };
    for (int idx : cfg.derivative_signals) check_index(idx);
    for (int idx : cfg.cumsum_signals) check_index(idx);

    FeatureTable ft = to_feature_table(table);
    for (int idx : cfg.derivative_signals)
        ft.feature_names.push_back("d_" + table.feature_names[static_cast<std::size_t>(idx)]);
    for (int idx : cfg.cumsum_signals)
        ft.feature_names.push_back("cs_" + table.feature_names[static_cast<std::size_t>(idx)]);

    for (const UnitSpan& span : ft.unit_spans()) {
        std::vector<double> signal(span.rows());
        for (int idx : cfg.derivative_signals) {
            for (std::size_t i = 0; i < span.rows(); ++i)
                signal[i] = ft.rows[span.begin + i].values[static_cast<std::size_t>(idx)];
            std::vector<double> derived = rate_of_change(signal, cfg.dt);
            for (std::size_t i = 0; i < span.rows(); ++i)
                ft.rows[span.begin + i].values.push_back(derived[i]);
        }
        for (int idx : cfg.cumsum_signals) {
            for (std::size_t i = 0; i < span.rows(); ++i)
                signal[i] = ft.rows[span.begin + i].values[static_cast<std::size_t>(idx)];
            std::vector<double> summed = cumulative_sum(signal);
            for (std::size_t i = 0; i < span.rows(); ++i)
                ft.rows[span.begin + i].values.push_back(summed[i]);
        }
    }
    return ft;
}

SequenceBatch build_windows(const FeatureTable& table, const FeatureConfig& cfg,
                            WindowMode mode) {
    if (cfg.sequence_length < 1)
        throw InvalidArgument("sequence_length must be >= 1");
    std::size_t length = static_cast<std::size_t>(cfg.sequence_length);
    std::size_t features = table.feature_count();

    auto spans = table.unit_spans();
    std::size_t count = 0;
    for (const UnitSpan& span : spans)
        count += mode == WindowMode::Train ? span.rows() : 1;

    SequenceBatch batch;
    if (count == 0) return batch;
    batch.inputs = Tensor({count, length, features});
    batch.targets.resize(count);
    batch.provenance.resize(count);

    std::size_t w = 0;
    for (const UnitSpan& span : spans) {
        std::size_t first = mode == WindowMode::Train ? 0 : span.rows() - 1;
        for (std::size_t end = first; end < span.rows(); ++end) {
            const FeatureRow& last = table.rows[span.begin + end];
            double* dst = batch.inputs.data() + w * length * features;
            for (std::size_t t = 0; t < length; ++t) {
                // Short windows repeat the unit's first row on the left.
                std::ptrdiff_t offset =
                    static_cast<std::ptrdiff_t>(end) - static_cast<std::ptrdiff_t>(length - 1 - t);
                std::size_t src = offset < 0 ? 0 : static_cast<std::size_t>(offset);
                const FeatureRow& row = table.rows[span.begin + src];
                std::copy(row.values.begin(), row.values.end(), dst + t * features);
            }
            batch.targets[w] = static_cast<double>(last.rul);
            batch.provenance[w] = {table.agent, span.unit, last.cycle};
            ++w;
        }
    }
    return batch;
}

SequenceBatch gather(const SequenceBatch& batch, std::span<const std::size_t> indices) {
    SequenceBatch out;
    if (indices.empty()) return out;
    std::size_t length = batch.sequence_length();
    std::size_t features = batch.feature_count();
    out.inputs = Tensor({indices.size(), length, features});
    out.targets.resize(indices.size());
    out.provenance.resize(indices.size());
    std::size_t stride = length * features;
    for (std::size_t i = 0; i < indices.size(); ++i) {
        std::size_t src = indices[i];
        std::copy(batch.inputs.data() + src * stride, batch.inputs.data() + (src + 1) * stride,
                  out.inputs.data() + i * stride);
        out.targets[i] = batch.targets[src];
        out.provenance[i] = batch.provenance[src];
    }
    return out;
}

}  // namespace frul
