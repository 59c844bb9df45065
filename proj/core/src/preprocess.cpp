#include "frul/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

namespace frul {

namespace {

constexpr double kVarianceFloor = 1e-12;

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

// Round to the nearest odd integer, ties upward.
int round_to_odd(double v) {
    int lo = 2 * static_cast<int>(std::floor((v - 1.0) / 2.0)) + 1;
    int hi = lo + 2;
    return (v - lo < hi - v) ? lo : hi;
}

std::vector<double> unit_signal(const TimeSeriesTable& table, const UnitSpan& span,
                                int signal) {
    std::vector<double> values(span.rows());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = table.rows[span.begin + i].feature(signal);
    return values;
}

std::vector<double> unit_rul(const TimeSeriesTable& table, const UnitSpan& span) {
    std::vector<double> values(span.rows());
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = static_cast<double>(table.rows[span.begin + i].rul);
    return values;
}

}  // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("pearson: length mismatch");
    std::size_t n = x.size();
    if (n < 3) return 0.0;
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double dx = x[i] - mx;
        double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx < kVarianceFloor || syy < kVarianceFloor) return 0.0;
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> median_filter(std::span<const double> signal, int kernel) {
    if (kernel < 1 || kernel % 2 == 0)
        throw InvalidArgument("median filter kernel must be odd and positive");
    if (kernel == 1 || signal.empty())
        return std::vector<double>(signal.begin(), signal.end());

    std::ptrdiff_t n = static_cast<std::ptrdiff_t>(signal.size());
    std::ptrdiff_t half = kernel / 2;
    std::vector<double> out(signal.size());
    std::vector<double> window(static_cast<std::size_t>(kernel));
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        for (std::ptrdiff_t k = -half; k <= half; ++k) {
            std::ptrdiff_t j = std::clamp<std::ptrdiff_t>(i + k, 0, n - 1);
            window[static_cast<std::size_t>(k + half)] = signal[static_cast<std::size_t>(j)];
        }
        auto mid = window.begin() + half;
        std::nth_element(window.begin(), mid, window.end());
        out[static_cast<std::size_t>(i)] = *mid;
    }
    return out;
}

std::vector<int> kernel_candidates(std::size_t samples) {
    std::vector<int> candidates;
    int max_kernel = static_cast<int>(samples / 10);
    for (int k = 3; k <= max_kernel; k += 2) candidates.push_back(k);
    return candidates;
}

double kernel_weight(double abs_corr, std::size_t samples) {
    return abs_corr * static_cast<double>(samples);
}

FilterPlan select_kernels(const TimeSeriesTable& table, std::span<const int> signals) {
    if (!table.labeled()) throw InvalidArgument("select_kernels requires a labeled table");
    auto spans = table.unit_spans();

    FilterPlan plan;
    for (int signal : signals) {
        if (signal < 0 || signal >= kBaseFeatureCount)
            throw InvalidArgument("signal index out of range: " + std::to_string(signal));

        double weight_sum = 0.0;
        double log_sum = 0.0;
        for (const UnitSpan& span : spans) {
            auto candidates = kernel_candidates(span.rows());
            if (candidates.empty()) continue;

            std::vector<double> raw = unit_signal(table, span, signal);
            std::vector<double> rul = unit_rul(table, span);
            int best_kernel = 0;
            double best_corr = -1.0;
            for (int k : candidates) {
                double corr = std::abs(pearson(median_filter(raw, k), rul));
                if (corr > best_corr) {  // ties keep the smaller kernel
                    best_corr = corr;
                    best_kernel = k;
                }
            }
            double w = kernel_weight(best_corr, span.rows());
            if (w <= 0.0) continue;
            weight_sum += w;
            log_sum += w * std::log(static_cast<double>(best_kernel));
        }

        int kernel = 1;
        if (weight_sum > 0.0) {
            kernel = round_to_odd(std::exp(log_sum / weight_sum));
            if (kernel < 3) kernel = 1;
        }
        plan.kernels[signal] = kernel;
    }
    return plan;
}

TimeSeriesTable apply_filter_plan(const TimeSeriesTable& table, const FilterPlan& plan) {
    TimeSeriesTable out = table;
    for (const auto& [signal, kernel] : plan.kernels) {
        if (signal < 0 || signal >= kBaseFeatureCount)
            throw InvalidArgument("signal index out of range: " + std::to_string(signal));
        if (kernel == 1) continue;
        for (const UnitSpan& span : out.unit_spans()) {
            std::vector<double> filtered = median_filter(unit_signal(out, span, signal), kernel);
            for (std::size_t i = 0; i < filtered.size(); ++i)
                out.rows[span.begin + i].feature(signal) = filtered[i];
        }
    }
    return out;
}

std::size_t prune_tail_rows(double u, std::size_t rows, const PruneConfig& cfg) {
    if (cfg.pplus > 0.0 && u <= cfg.pplus)
        return static_cast<std::size_t>(static_cast<double>(rows) * cfg.heavy_fraction);
    if (cfg.prune_chance > 0.0 && u <= cfg.prune_chance)
        return static_cast<std::size_t>(static_cast<double>(rows) * cfg.p);
    return 0;
}

TimeSeriesTable prune_units(const TimeSeriesTable& table, const PruneConfig& cfg) {
    TimeSeriesTable out;
    out.agent = table.agent;
    out.feature_names = table.feature_names;
    out.rows.reserve(table.rows.size());
    for (const UnitSpan& span : table.unit_spans()) {
        std::mt19937_64 rng(splitmix64(cfg.seed ^ splitmix64(static_cast<std::uint64_t>(span.unit))));
        double u = std::uniform_real_distribution<double>(0.0, 1.0)(rng);
        std::size_t drop = prune_tail_rows(u, span.rows(), cfg);
        std::size_t keep = span.rows() - std::min(drop, span.rows());
        for (std::size_t i = 0; i < keep; ++i) out.rows.push_back(table.rows[span.begin + i]);
    }
    return out;
}

ScalerParams fit_scaler(const FeatureTable& table) {
    std::vector<int> all(table.feature_count());
    for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
    return fit_scaler(table, all);
}

ScalerParams fit_scaler(const FeatureTable& table, std::span<const int> features) {
    if (table.rows.size() < 2) throw InvalidArgument("fit_scaler requires at least 2 rows");
    ScalerParams params;
    params.feature_names.reserve(features.size());
    params.mean.resize(features.size(), 0.0);
    params.stddev.resize(features.size(), 0.0);
    double n = static_cast<double>(table.rows.size());
    for (std::size_t f = 0; f < features.size(); ++f) {
        int idx = features[f];
        if (idx < 0 || static_cast<std::size_t>(idx) >= table.feature_count())
            throw InvalidArgument("feature index out of range: " + std::to_string(idx));
        params.feature_names.push_back(table.feature_names[static_cast<std::size_t>(idx)]);
        double sum = 0.0;
        for (const FeatureRow& row : table.rows) sum += row.values[static_cast<std::size_t>(idx)];
        double mean = sum / n;
        double ss = 0.0;
        for (const FeatureRow& row : table.rows) {
            double d = row.values[static_cast<std::size_t>(idx)] - mean;
            ss += d * d;
        }
        params.mean[f] = mean;
        params.stddev[f] = std::sqrt(ss / n);  // population convention
    }
    return params;
}

FeatureTable apply_scaler(const FeatureTable& table, const ScalerParams& params) {
    if (params.feature_names != table.feature_names)
        throw InvalidArgument("scaler was fitted on a different feature set");
    FeatureTable out = table;
    for (FeatureRow& row : out.rows) {
        for (std::size_t f = 0; f < params.mean.size(); ++f) {
            double sd = params.stddev[f];
            row.values[f] = sd < 1e-12 ? 0.0 : (row.values[f] - params.mean[f]) / sd;
        }
    }
    return out;
}

CorrelationMatrix correlation_matrix(const TimeSeriesTable& table) {
    if (!table.labeled()) throw InvalidArgument("correlation_matrix requires a labeled table");
    std::size_t cols = kBaseFeatureCount + 1;
    std::size_t n = table.rows.size();

    std::vector<std::vector<double>> columns(cols, std::vector<double>(n));
    for (std::size_t r = 0; r < n; ++r) {
        for (int f = 0; f < kBaseFeatureCount; ++f)
            columns[static_cast<std::size_t>(f)][r] = table.rows[r].feature(f);
        columns[cols - 1][r] = static_cast<double>(table.rows[r].rul);
    }

    std::vector<double> mean(cols, 0.0), ss(cols, 0.0);
    for (std::size_t c = 0; c < cols; ++c) {
        for (double v : columns[c]) mean[c] += v;
        mean[c] /= static_cast<double>(n);
        for (double v : columns[c]) ss[c] += (v - mean[c]) * (v - mean[c]);
    }

    CorrelationMatrix matrix;
    matrix.labels = table.feature_names;
    matrix.labels.push_back("RUL");
    matrix.values.assign(cols * cols, 0.0);
    for (std::size_t i = 0; i < cols; ++i) {
        if (ss[i] < kVarianceFloor) continue;  // whole row stays 0, diagonal included
        for (std::size_t j = i; j < cols; ++j) {
            if (ss[j] < kVarianceFloor) continue;
            double sxy = 0.0;
            for (std::size_t r = 0; r < n; ++r)
                sxy += (columns[i][r] - mean[i]) * (columns[j][r] - mean[j]);
            double corr = sxy / std::sqrt(ss[i] * ss[j]);
            matrix.values[i * cols + j] = corr;
            matrix.values[j * cols + i] = corr;
        }
    }
    return matrix;
}

std::string correlation_csv(const CorrelationMatrix& matrix) {
    std::string out;
    for (const std::string& label : matrix.labels) {
        out += ',';
        out += label;
    }
    out += '\n';
    char buf[32];
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        out += matrix.labels[i];
        for (std::size_t j = 0; j < matrix.size(); ++j) {
            std::snprintf(buf, sizeof(buf), "%.6f", matrix.at(i, j));
            out += ',';
            out += buf;
        }
        out += '\n';
    }
    return out;
}

std::string correlation_svg(const CorrelationMatrix& matrix) {
    // Diverging ramp: -1 black, 0 orange-red, +1 light tan.
    auto cell_color = [](double v) {
        double t = std::clamp(v, -1.0, 1.0);
        int r, g, b;
        if (t < 0) {
            double a = 1.0 + t;  // 0 at -1, 1 at 0
            r = static_cast<int>(a * 230);
            g = static_cast<int>(a * 85);
            b = static_cast<int>(a * 35);
        } else {
            r = static_cast<int>(230 + t * (250 - 230));
            g = static_cast<int>(85 + t * (240 - 85));
            b = static_cast<int>(35 + t * (210 - 35));
        }
        char buf[8];
        std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
        return std::string(buf);
    };

    const int cell = 24;
    const int margin = 110;
    std::size_t n = matrix.size();
    int extent = margin + cell * static_cast<int>(n) + 10;

    std::string svg;
    char buf[256];
    std::snprintf(buf, sizeof(buf),
                  "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%d\" height=\"%d\">\n",
                  extent, extent);
    svg += buf;
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            std::snprintf(buf, sizeof(buf),
                          "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"%s\">"
                          "<title>%s vs %s: %.4f</title></rect>\n",
                          margin + cell * static_cast<int>(j),
                          margin + cell * static_cast<int>(i), cell, cell,
                          cell_color(matrix.at(i, j)).c_str(), matrix.labels[i].c_str(),
                          matrix.labels[j].c_str(), matrix.at(i, j));
            svg += buf;
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%d\" y=\"%d\" font-size=\"11\" text-anchor=\"end\" "
                      "font-family=\"monospace\">%s</text>\n",
                      margin - 6, margin + cell * static_cast<int>(i) + cell / 2 + 4,
                      matrix.labels[i].c_str());
        svg += buf;
        std::snprintf(buf, sizeof(buf),
                      "<text x=\"%d\" y=\"%d\" font-size=\"11\" text-anchor=\"start\" "
                      "font-family=\"monospace\" transform=\"rotate(-60 %d %d)\">%s</text>\n",
                      margin + cell * static_cast<int>(i) + cell / 2, margin - 6,
                      margin + cell * static_cast<int>(i) + cell / 2, margin - 6,
                      matrix.labels[i].c_str());
        svg += buf;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace frul
