#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace persuasion {

// One available action. delta_x lives in the d user-facing feature
// dimensions; the decision rule appends a bias coordinate internally.
struct Action {
  int id = 0;
  std::string label;
  std::vector<double> delta_x;
  double cost = 0.0;
  double dm_utility = 0.0;
};

// A problem instance: the subject's current features plus the action roster.
// actions[0] is always the status-quo action (zero shift, zero cost, zero
// decision-maker utility); the constructor enforces that along with the
// id-equals-index convention the solvers rely on.
class Instance {
 public:
  Instance(std::vector<double> x0, std::vector<Action> actions)
      : x0_(std::move(x0)), actions_(std::move(actions)) {
    if (actions_.empty())
      throw std::invalid_argument("instance needs at least the null action");
    for (std::size_t i = 0; i < actions_.size(); ++i) {
      const Action& a = actions_[i];
      if (a.id != static_cast<int>(i))
        throw std::invalid_argument("action ids must equal their index");
      if (a.delta_x.size() != x0_.size())
        throw std::invalid_argument("action shift dimension mismatch");
      if (a.cost < 0.0)
        throw std::invalid_argument("action costs must be nonnegative");
    }
    const Action& null_action = actions_[0];
    for (double v : null_action.delta_x)
      if (v != 0.0)
        throw std::invalid_argument("action 0 must not shift features");
    if (null_action.cost != 0.0 || null_action.dm_utility != 0.0)
      throw std::invalid_argument(
          "action 0 must have zero cost and zero decision-maker utility");
  }

  const std::vector<double>& x0() const { return x0_; }
  const std::vector<Action>& actions() const { return actions_; }
  const Action& action(int id) const {
    if (id < 0 || id >= static_cast<int>(actions_.size()))
      throw std::invalid_argument("invalid action id");
    return actions_[static_cast<std::size_t>(id)];
  }
  std::size_t dim() const { return x0_.size(); }
  std::size_t num_actions() const { return actions_.size(); }
  std::size_t theta_dim() const { return x0_.size() + 1; }

 private:
  std::vector<double> x0_;
  std::vector<Action> actions_;
};

// Prior over decision rules, finite support.
struct DiscretePrior {
  std::vector<std::vector<double>> support;
  std::vector<double> probs;
};

// Independent Gaussian prior over each rule coefficient (diagonal
// covariance; a zero standard deviation pins that coordinate).
struct GaussianPrior {
  std::vector<double> mean;
  std::vector<double> std_dev;
};

// Classification outcome after taking action `action_id` under rule `theta`:
// +1 iff (x0 + delta_x) . theta_head + theta_bias >= 0. Ties go positive.
inline int classify(const Instance& inst, const std::vector<double>& theta,
                    int action_id) {
  if (theta.size() != inst.theta_dim())
    throw std::invalid_argument("theta must have length dim+1");
  const Action& a = inst.action(action_id);
  double dot = theta.back();
  const std::vector<double>& x0 = inst.x0();
  for (std::size_t j = 0; j < x0.size(); ++j)
    dot += (x0[j] + a.delta_x[j]) * theta[j];
  return dot >= 0.0 ? 1 : -1;
}

// Subject's payoff from an action given its classification outcome:
// +1 or -1 minus the action's cost. The rule enters only through the
// outcome bit, which is why outcome profiles are sufficient statistics.
inline double subject_utility(const Instance& inst, int action_id,
                              bool positive) {
  return (positive ? 1.0 : -1.0) - inst.action(action_id).cost;
}

}  // namespace persuasion
