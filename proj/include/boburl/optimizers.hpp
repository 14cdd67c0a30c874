#ifndef BOBURL_OPTIMIZERS_HPP
#define BOBURL_OPTIMIZERS_HPP

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

namespace boburl {

enum class OptimizerKind { kSgd, kAdam, kAdaDelta };

// Per-kind hyperparameters. Defaults are the classic framework defaults;
// the comparison this library reproduces pins them rather than tuning.
struct OptimizerConfig {
  OptimizerKind kind = OptimizerKind::kAdam;
  struct Sgd {
    double lr = 0.01;
  } sgd;
  struct Adam {
    double alpha = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
  } adam;
  struct AdaDelta {
    double rho = 0.95;
    double eps = 1e-6;
  } adadelta;
};

// "sgd" | "adam" | "adadelta"; throws DataError on anything else.
OptimizerKind parse_optimizer_kind(std::string_view name);
std::string_view optimizer_kind_name(OptimizerKind kind);

OptimizerConfig default_config(OptimizerKind kind);
OptimizerConfig default_config(std::string_view name);

// Throws DataError when a hyperparameter is outside its legal range.
void validate(const OptimizerConfig& config);

// Auxiliary accumulators, one entry per parameter array passed to step().
// Only the buffers the configured kind needs are allocated.
struct OptimizerState {
  std::uint64_t t = 0;  // completed steps
  std::vector<std::vector<double>> m;               // Adam first moment
  std::vector<std::vector<double>> v;               // Adam second moment
  std::vector<std::vector<double>> avg_sq_grad;     // AdaDelta E[g^2]
  std::vector<std::vector<double>> avg_sq_update;   // AdaDelta E[dx^2]
};

OptimizerState init_state(const OptimizerConfig& config,
                          std::span<const std::size_t> param_sizes);

// One elementwise update of every parameter array. The state must have
// been created for these array sizes. Throws DimensionError on shape
// mismatch and NumericError on non-finite gradient entries.
void step(const OptimizerConfig& config, OptimizerState& state,
          const std::vector<std::span<double>>& params,
          const std::vector<std::span<const double>>& grads);

}  // namespace boburl

#endif  // BOBURL_OPTIMIZERS_HPP
