#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cellcache/rng.hpp"

namespace cellcache {

/// Decaying learning rates t^-e for the utility, regret and strategy
/// recursions. The strategy rate must vanish relative to the regret rate,
/// which must vanish relative to the utility rate.
struct LearningSchedule {
    double utility_exponent = 0.5;
    double regret_exponent = 0.6;
    double strategy_exponent = 0.7;

    void validate() const;  // enforces strategy > regret > utility
    std::vector<std::string> warnings() const;
};

struct LearningRates {
    double utility = 1.0;
    double regret = 1.0;
    double strategy = 1.0;
};

LearningRates learning_rates(const LearningSchedule& schedule, std::uint64_t t);

/// Boltzmann distribution over positive regrets, computed with
/// max-subtraction so large regret scales cannot overflow.
std::vector<double> gibbs_distribution(std::span<const double> positive_regrets, double beta);

/// Per-SCBS learner: one action per content ("fetch this content now").
struct LearnerState {
    std::vector<double> utility_estimates;  // v-hat
    std::vector<double> regrets;            // r-hat
    std::vector<double> strategy;           // pi, a probability vector
    std::uint64_t time = 1;
    double boltzmann_beta = 20.0;

    static LearnerState make(std::size_t action_count, double beta);
    std::size_t action_count() const { return strategy.size(); }
};

/// One step of the coupled recursions, all right-hand sides evaluated on the
/// pre-update snapshot:
///   v[k] += a * 1{k == played} * (observed - v[k])
///   r[k] += g * (v_pre[k] - observed - r[k])        for all k
///   pi[k] += z * (Gibbs(max(0, r_pre))[k] - pi[k])  for all k
/// With no observed utility (an idle instant) only the strategy recursion
/// runs. Time advances either way.
void update_learner(LearnerState& state, std::size_t played_action,
                    std::optional<double> observed_utility, const LearningSchedule& schedule);

/// Samples an action from the strategy via inverse CDF on one uniform draw.
std::size_t select_action(const LearnerState& state, Rng& rng);

}  // namespace cellcache
