#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "toksig/common.hpp"
#include "toksig/records.hpp"

namespace toksig::logistic {

struct TrainingMeta {
    std::int64_t iterations = 0;
    double final_loss = 0.0;
    double l2_lambda = 0.0;
    double learning_rate = 0.0;
    std::uint64_t seed = 0;
};

/// One-feature logistic model mapping an instance correlation to a
/// chain-of-thought probability.
struct LogisticModel {
    double weight = 0.0;
    double bias = 0.0;
    TrainingMeta meta;
};

struct TrainingExample {
    double rho = 0.0;  // instance correlation in [-1, 1]
    int label = 0;     // 1 = chain-of-thought answered correctly, 0 = direct
};

struct TrainingSet {
    std::vector<TrainingExample> examples;
    std::string source_benchmark;
};

struct FitConfig {
    double learning_rate = 0.5;
    std::int64_t max_iterations = 10000;
    double tolerance = 1e-9;
    double l2_lambda = 1e-4;  // applied to the weight only, never the bias
    std::uint64_t seed = 0;   // recorded for provenance; fitting uses no RNG
};

/// Numerically safe sigmoid; never overflows for any finite argument.
double sigmoid(double z);

/// P(label = 1 | rho) = sigmoid(weight * rho + bias).
double predict_proba(const LogisticModel& m, double rho);

/// Mean binary cross-entropy plus l2 * weight^2, with predicted probabilities
/// clamped to [1e-12, 1 - 1e-12] before the logs.
double loss(const LogisticModel& m, const TrainingSet& set);

/// Analytic gradient (d/dweight, d/dbias) of `loss`.
std::pair<double, double> loss_gradient(const LogisticModel& m,
                                        const TrainingSet& set);

/// Deterministic full-batch gradient descent from weight = bias = 0.
/// Converged means both the loss improvement fell below `tolerance` and the
/// gradient norm fell below 10 * tolerance; otherwise the iteration cap ends
/// training. Throws if the set is empty, labels are not 0/1, a non-finite
/// loss appears, or the set is single-class with no regularization.
LogisticModel fit(const TrainingSet& set, const FitConfig& config = {});

/// Route to chain-of-thought iff weight * rho + bias > 0 (probability
/// strictly above one half); exact ties go to the direct answer.
Branch classify(const LogisticModel& m, double rho);

}  // namespace toksig::logistic
