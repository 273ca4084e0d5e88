#include "cellcache/learning.hpp"

#include <algorithm>
#include <cmath>

#include "cellcache/errors.hpp"

namespace cellcache {

void LearningSchedule::validate() const {
    if (!(strategy_exponent > regret_exponent && regret_exponent > utility_exponent)) {
        throw InvalidConfig(
            "learning-rate exponents must satisfy strategy > regret > utility "
            "so the strategy recursion is the slowest timescale");
    }
}

std::vector<std::string> LearningSchedule::warnings() const {
    std::vector<std::string> out;
    const auto check = [&out](double e, const char* name) {
        if (e <= 0.5) {
            out.push_back(std::string(name) +
                          " exponent " + std::to_string(e) +
                          " makes the squared rates non-summable (needs > 0.5); "
                          "the learning process may not converge");
        } else if (e > 1.0) {
            out.push_back(std::string(name) +
                          " exponent " + std::to_string(e) +
                          " makes the rates summable (needs <= 1); "
                          "the learning process may stall");
        }
    };
    check(utility_exponent, "utility learning-rate");
    check(regret_exponent, "regret learning-rate");
    check(strategy_exponent, "strategy learning-rate");
    return out;
}

LearningRates learning_rates(const LearningSchedule& schedule, std::uint64_t t) {
    const double td = static_cast<double>(t);
    return LearningRates{std::pow(td, -schedule.utility_exponent),
                         std::pow(td, -schedule.regret_exponent),
                         std::pow(td, -schedule.strategy_exponent)};
}

std::vector<double> gibbs_distribution(std::span<const double> positive_regrets, double beta) {
    std::vector<double> out(positive_regrets.size());
    double max_r = -std::numeric_limits<double>::infinity();
    for (double r : positive_regrets) max_r = std::max(max_r, r);
    double total = 0.0;
    for (std::size_t i = 0; i < positive_regrets.size(); ++i) {
        out[i] = std::exp(beta * (positive_regrets[i] - max_r));
        total += out[i];
    }
    for (double& v : out) v /= total;
    return out;
}

LearnerState LearnerState::make(std::size_t action_count, double beta) {
    LearnerState s;
    s.utility_estimates.assign(action_count, 0.0);
    s.regrets.assign(action_count, 0.0);
    s.strategy.assign(action_count, 1.0 / static_cast<double>(action_count));
    s.time = 1;
    s.boltzmann_beta = beta;
    return s;
}

void update_learner(LearnerState& state, std::size_t played_action,
                    std::optional<double> observed_utility, const LearningSchedule& schedule) {
    const LearningRates rates = learning_rates(schedule, state.time);
    const std::size_t n = state.action_count();

    std::vector<double> positive_regrets(n);
    for (std::size_t k = 0; k < n; ++k) positive_regrets[k] = std::max(0.0, state.regrets[k]);
    const std::vector<double> gibbs = gibbs_distribution(positive_regrets, state.boltzmann_beta);

    if (observed_utility.has_value()) {
        const double observed = *observed_utility;
        const std::vector<double> v_pre = state.utility_estimates;
        state.utility_estimates[played_action] +=
            rates.utility * (observed - v_pre[played_action]);
        for (std::size_t k = 0; k < n; ++k) {
            state.regrets[k] += rates.regret * (v_pre[k] - observed - state.regrets[k]);
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        state.strategy[k] += rates.strategy * (gibbs[k] - state.strategy[k]);
    }
    ++state.time;
}

std::size_t select_action(const LearnerState& state, Rng& rng) {
    return sample_discrete(state.strategy, rng.uniform());
}

}  // namespace cellcache
