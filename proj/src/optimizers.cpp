#include "boburl/optimizers.hpp"

#include <cmath>
#include <string>

#include "boburl/errors.hpp"

namespace boburl {

OptimizerKind parse_optimizer_kind(std::string_view name) {
  if (name == "sgd") return OptimizerKind::kSgd;
  if (name == "adam") return OptimizerKind::kAdam;
  if (name == "adadelta") return OptimizerKind::kAdaDelta;
  throw DataError("unknown optimizer kind: " + std::string(name));
}

std::string_view optimizer_kind_name(OptimizerKind kind) {
  switch (kind) {
    case OptimizerKind::kSgd: return "sgd";
    case OptimizerKind::kAdam: return "adam";
    case OptimizerKind::kAdaDelta: return "adadelta";
  }
  return "?";
}

OptimizerConfig default_config(OptimizerKind kind) {
  OptimizerConfig config;
  config.kind = kind;
  return config;
}

OptimizerConfig default_config(std::string_view name) {
  return default_config(parse_optimizer_kind(name));
}

void validate(const OptimizerConfig& config) {
  auto positive = [](double v, const char* what) {
    if (!(v > 0.0)) throw DataError(std::string(what) + " must be > 0");
  };
  auto unit_range = [](double v, const char* what) {
    if (!(v >= 0.0 && v < 1.0))
      throw DataError(std::string(what) + " must be in [0, 1)");
  };
  positive(config.sgd.lr, "sgd.lr");
  positive(config.adam.alpha, "adam.alpha");
  positive(config.adam.eps, "adam.eps");
  positive(config.adadelta.eps, "adadelta.eps");
  unit_range(config.adam.beta1, "adam.beta1");
  unit_range(config.adam.beta2, "adam.beta2");
  unit_range(config.adadelta.rho, "adadelta.rho");
}

OptimizerState init_state(const OptimizerConfig& config,
                          std::span<const std::size_t> param_sizes) {
  OptimizerState state;
  auto alloc = [&](std::vector<std::vector<double>>& buffers) {
    buffers.reserve(param_sizes.size());
    for (std::size_t n : param_sizes) buffers.emplace_back(n, 0.0);
  };
  switch (config.kind) {
    case OptimizerKind::kSgd:
      break;
    case OptimizerKind::kAdam:
      alloc(state.m);
      alloc(state.v);
      break;
    case OptimizerKind::kAdaDelta:
      alloc(state.avg_sq_grad);
      alloc(state.avg_sq_update);
      break;
  }
  return state;
}

namespace {

void check_shapes(const OptimizerConfig& config, const OptimizerState& state,
                  const std::vector<std::span<double>>& params,
                  const std::vector<std::span<const double>>& grads) {
  if (params.size() != grads.size())
    throw DimensionError("step: params and grads array counts differ");
  const std::vector<std::vector<double>>* aux = nullptr;
  if (config.kind == OptimizerKind::kAdam) aux = &state.m;
  if (config.kind == OptimizerKind::kAdaDelta) aux = &state.avg_sq_grad;
  if (aux != nullptr && aux->size() != params.size())
    throw DimensionError("step: state does not belong to this parameter set");
  for (std::size_t a = 0; a < params.size(); ++a) {
    if (params[a].size() != grads[a].size())
      throw DimensionError("step: param/grad shape mismatch in array " +
                           std::to_string(a));
    if (aux != nullptr && (*aux)[a].size() != params[a].size())
      throw DimensionError("step: state shape mismatch in array " +
                           std::to_string(a));
    for (double g : grads[a]) {
      if (!std::isfinite(g))
        throw NumericError("step: non-finite gradient entry in array " +
                           std::to_string(a));
    }
  }
}

}  // namespace

void step(const OptimizerConfig& config, OptimizerState& state,
          const std::vector<std::span<double>>& params,
          const std::vector<std::span<const double>>& grads) {
  check_shapes(config, state, params, grads);
  state.t += 1;

  switch (config.kind) {
    case OptimizerKind::kSgd: {
      const double lr = config.sgd.lr;
      for (std::size_t a = 0; a < params.size(); ++a) {
        std::span<double> p = params[a];
        std::span<const double> g = grads[a];
        for (std::size_t i = 0; i < p.size(); ++i) p[i] -= lr * g[i];
      }
      break;
    }
    case OptimizerKind::kAdam: {
      const auto& cfg = config.adam;
      const double bias1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
      const double bias2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
      for (std::size_t a = 0; a < params.size(); ++a) {
        std::span<double> p = params[a];
        std::span<const double> g = grads[a];
        std::vector<double>& m = state.m[a];
        std::vector<double>& v = state.v[a];
        for (std::size_t i = 0; i < p.size(); ++i) {
          m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
          v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
          const double m_hat = m[i] / bias1;
          const double v_hat = v[i] / bias2;
          p[i] -= cfg.alpha * m_hat / (std::sqrt(v_hat) + cfg.eps);
        }
      }
      break;
    }
    case OptimizerKind::kAdaDelta: {
      const auto& cfg = config.adadelta;
      for (std::size_t a = 0; a < params.size(); ++a) {
        std::span<double> p = params[a];
        std::span<const double> g = grads[a];
        std::vector<double>& eg2 = state.avg_sq_grad[a];
        std::vector<double>& edx2 = state.avg_sq_update[a];
        for (std::size_t i = 0; i < p.size(); ++i) {
          eg2[i] = cfg.rho * eg2[i] + (1.0 - cfg.rho) * g[i] * g[i];
          const double update = -(std::sqrt(edx2[i] + cfg.eps) /
                                  std::sqrt(eg2[i] + cfg.eps)) * g[i];
          edx2[i] = cfg.rho * edx2[i] + (1.0 - cfg.rho) * update * update;
          p[i] += update;
        }
      }
      break;
    }
  }
}

}  // namespace boburl
