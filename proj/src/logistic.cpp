#include "toksig/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace toksig::logistic {

namespace {
constexpr double kProbClamp = 1e-12;

void check_set(const TrainingSet& set) {
    if (set.examples.empty()) throw error("training set is empty");
    for (const TrainingExample& e : set.examples) {
        if (e.label != 0 && e.label != 1)
            throw error("training label must be 0 or 1");
        if (!std::isfinite(e.rho)) throw error("training rho must be finite");
    }
}
}  // namespace

double sigmoid(double z) {
    if (z >= 0.0) {
        return 1.0 / (1.0 + std::exp(-z));
    }
    double e = std::exp(z);
    return e / (1.0 + e);
}

double predict_proba(const LogisticModel& m, double rho) {
    if (!std::isfinite(rho)) throw error("predict_proba: rho must be finite");
    return sigmoid(m.weight * rho + m.bias);
}

double loss(const LogisticModel& m, const TrainingSet& set) {
    check_set(set);
    double sum = 0.0;
    for (const TrainingExample& e : set.examples) {
        double p = std::clamp(sigmoid(m.weight * e.rho + m.bias), kProbClamp,
                              1.0 - kProbClamp);
        sum += e.label == 1 ? -std::log(p) : -std::log(1.0 - p);
    }
    double mean = sum / static_cast<double>(set.examples.size());
    return mean + m.meta.l2_lambda * m.weight * m.weight;
}

std::pair<double, double> loss_gradient(const LogisticModel& m,
                                        const TrainingSet& set) {
    check_set(set);
    double gw = 0.0, gb = 0.0;
    for (const TrainingExample& e : set.examples) {
        double p = sigmoid(m.weight * e.rho + m.bias);
        double err = p - static_cast<double>(e.label);
        gw += err * e.rho;
        gb += err;
    }
    double n = static_cast<double>(set.examples.size());
    gw = gw / n + 2.0 * m.meta.l2_lambda * m.weight;
    gb = gb / n;
    return {gw, gb};
}

LogisticModel fit(const TrainingSet& set, const FitConfig& config) {
    check_set(set);
    bool has0 = false, has1 = false;
    for (const TrainingExample& e : set.examples)
        (e.label == 0 ? has0 : has1) = true;
    if (!(has0 && has1) && config.l2_lambda <= 0.0)
        throw error(
            "single-class training set needs l2_lambda > 0 to stay bounded");
    if (config.learning_rate <= 0.0) throw error("learning_rate must be > 0");
    if (config.max_iterations < 1) throw error("max_iterations must be >= 1");

    LogisticModel m;
    m.meta.l2_lambda = config.l2_lambda;
    m.meta.learning_rate = config.learning_rate;
    m.meta.seed = config.seed;

    double prev_loss = loss(m, set);
    double improvement = std::numeric_limits<double>::infinity();
    std::int64_t steps = 0;
    while (steps < config.max_iterations) {
        auto [gw, gb] = loss_gradient(m, set);
        // Converged: the last step barely moved the loss and the gradient at
        // the current point is itself negligible.
        if (improvement < config.tolerance &&
            std::hypot(gw, gb) <= 10.0 * config.tolerance)
            break;
        m.weight -= config.learning_rate * gw;
        m.bias -= config.learning_rate * gb;
        ++steps;
        double cur = loss(m, set);
        if (!std::isfinite(cur))
            throw error("fit: non-finite loss at iteration " +
                        std::to_string(steps));
        improvement = prev_loss - cur;
        prev_loss = cur;
    }
    m.meta.iterations = steps;
    m.meta.final_loss = prev_loss;
    return m;
}

Branch classify(const LogisticModel& m, double rho) {
    if (!std::isfinite(rho)) throw error("classify: rho must be finite");
    return m.weight * rho + m.bias > 0.0 ? Branch::cot : Branch::da;
}

}  // namespace toksig::logistic
