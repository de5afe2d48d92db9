#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "toksig/records.hpp"
#include "toksig/spearman.hpp"

namespace toksig::signature {

/// Collapsed two-way call made from an indicator value: the sign of the
/// indicator predicts whether chain-of-thought helps.
enum class Prediction { positive, none_or_negative };

inline Prediction predict_significance(double indicator) {
    return indicator > 0.0 ? Prediction::positive
                           : Prediction::none_or_negative;
}

struct PerInstance {
    std::string question_id;
    std::optional<double> rho;  // empty when the probe prefix was constant
};

struct IndicatorReport {
    std::string benchmark;
    std::string model;
    std::int64_t window = kDefaultStandardWindow;
    double instance_sc = 0.0;    // mean of defined per-instance rho
    double aggregated_sc = 0.0;  // rho of per-position mean probabilities
    std::int64_t n_questions = 0;     // traces contributing to instance_sc
    std::int64_t positions_used = 0;  // positions entering aggregated_sc
    std::vector<PerInstance> per_instance;
};

struct PositionStat {
    std::int64_t position = 0;  // 1-based token index
    double mean_prob = 0.0;     // mean over traces possessing this position
    double coverage = 0.0;      // fraction of traces possessing this position
};

/// Correlation between the first min(window, length) token probabilities of a
/// trace and their 1-based positions. Throws on traces shorter than 2 tokens
/// and undefined_correlation on an all-equal probability prefix.
double instance_sc_single(const DecodingTrace& trace, std::int64_t window);

/// Per-trace correlations for a whole corpus; traces with an undefined
/// correlation (constant prefix or fewer than 2 tokens) yield an empty slot.
/// The parallel version and the serial reference produce bit-identical output.
std::vector<std::optional<double>> instance_rhos(
    std::span<const DecodingTrace> traces, std::int64_t window);
std::vector<std::optional<double>> instance_rhos_serial(
    std::span<const DecodingTrace> traces, std::int64_t window);

struct InstanceScResult {
    double mean_rho = 0.0;
    std::vector<PerInstance> per_instance;
    std::int64_t n_defined = 0;
};

/// Mean of the defined per-instance correlations. Undefined instances are
/// excluded from the mean and flagged, never coerced to 0. Throws if no trace
/// has a defined correlation.
InstanceScResult instance_sc_benchmark(std::span<const DecodingTrace> traces,
                                       std::int64_t window);

/// Per-position mean probability and coverage over positions 1..window.
std::vector<PositionStat> position_curve(std::span<const DecodingTrace> traces,
                                         std::int64_t window);

struct AggregatedScResult {
    double value = 0.0;
    std::int64_t positions_used = 0;
};

/// Correlation between retained positions and their mean probabilities.
/// A position is retained when at least min_coverage of the traces reach it.
AggregatedScResult aggregated_sc(std::span<const DecodingTrace> traces,
                                 std::int64_t window,
                                 double min_coverage = 0.5);

/// Full report for one (benchmark, model) corpus.
IndicatorReport build_report(std::span<const DecodingTrace> traces,
                             const std::string& benchmark,
                             const std::string& model, std::int64_t window,
                             double min_coverage = 0.5);

inline const std::vector<std::int64_t> kDefaultSweepWindows = {10, 20, 50, 100,
                                                               200};

/// One report per window over the identical corpus.
std::vector<IndicatorReport> window_sweep(
    std::span<const DecodingTrace> traces, const std::string& benchmark,
    const std::string& model,
    std::span<const std::int64_t> windows = kDefaultSweepWindows,
    double min_coverage = 0.5);

enum class Indicator { instance_sc, aggregated_sc };

enum class ObservedSignificance { positive, none, negative };

struct ObservedLabel {
    std::string benchmark;
    ObservedSignificance label;
};

/// Fraction of benchmarks where the sign rule applied to the chosen indicator
/// matches the observed significance collapsed to {positive, none-or-negative}.
/// Reports and labels must cover the same benchmark set.
double indicator_prediction_accuracy(std::span<const IndicatorReport> reports,
                                     std::span<const ObservedLabel> observed,
                                     Indicator which);

}  // namespace toksig::signature
