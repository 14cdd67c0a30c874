#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "boburl/errors.hpp"
#include "boburl/optimizers.hpp"
#include "boburl/rng.hpp"

using namespace boburl;

namespace {

struct ScalarParam {
  OptimizerConfig config;
  OptimizerState state;
  std::vector<double> p;

  explicit ScalarParam(OptimizerConfig cfg, double initial)
      : config(cfg), p{initial} {
    std::vector<std::size_t> sizes = {1};
    state = init_state(config, sizes);
  }

  void apply(double gradient) {
    std::vector<double> g = {gradient};
    step(config, state, {std::span<double>(p)},
         {std::span<const double>(g)});
  }

  double value() const { return p[0]; }
};

}  // namespace

TEST_CASE("default configs carry the pinned hyperparameters") {
  OptimizerConfig sgd = default_config("sgd");
  CHECK(sgd.kind == OptimizerKind::kSgd);
  CHECK(sgd.sgd.lr == 0.01);

  OptimizerConfig adam = default_config("adam");
  CHECK(adam.kind == OptimizerKind::kAdam);
  CHECK(adam.adam.alpha == 0.001);
  CHECK(adam.adam.beta1 == 0.9);
  CHECK(adam.adam.beta2 == 0.999);
  CHECK(adam.adam.eps == 1e-8);

  OptimizerConfig adadelta = default_config("adadelta");
  CHECK(adadelta.adadelta.rho == 0.95);
  CHECK(adadelta.adadelta.eps == 1e-6);

  CHECK_THROWS_AS(default_config("adagrad"), DataError);
}

TEST_CASE("sgd step is one multiply-subtract") {
  ScalarParam sgd(default_config("sgd"), 1.0);
  sgd.apply(0.5);
  CHECK(sgd.value() == 1.0 - 0.01 * 0.5);
  CHECK(sgd.value() == doctest::Approx(0.995).epsilon(1e-15));
}

TEST_CASE("adam first step matches the hand-derived value") {
  ScalarParam adam(default_config("adam"), 0.0);
  adam.apply(1.0);
  // m_hat = v_hat = 1 after bias correction, so the step is
  // -alpha / (1 + eps).
  double expected = -0.001 / (1.0 + 1e-8);
  CHECK(std::abs(adam.value() - expected) <= 1e-15);
  CHECK(adam.value() == doctest::Approx(-0.000999999990).epsilon(1e-9));
}

TEST_CASE("adadelta first step matches the hand-derived value") {
  ScalarParam adadelta(default_config("adadelta"), 0.0);
  adadelta.apply(1.0);
  double expected = -std::sqrt(1e-6) / std::sqrt(0.05 + 1e-6);
  CHECK(std::abs(adadelta.value() - expected) <= 1e-15);
  CHECK(adadelta.value() == doctest::Approx(-0.0044721).epsilon(1e-4));
}

TEST_CASE("every optimizer tames the scalar quadratic") {
  // f(p) = p^2 / 2, gradient p, start at 10. Adam's ceiling follows from
  // its own defaults: steps are capped at alpha = 0.001 and the
  // bias-corrected ratio runs below 1 on a decaying gradient, so the trip
  // from 10 to 0.1 costs a bit over 10^4 steps (13,271 exactly).
  auto steps_to_converge = [](const char* name, int budget) {
    ScalarParam opt(default_config(name), 10.0);
    int steps = 0;
    while (std::abs(opt.value()) >= 0.1 && steps < budget) {
      opt.apply(opt.value());
      ++steps;
    }
    REQUIRE(std::abs(opt.value()) < 0.1);
    return steps;
  };
  CHECK(steps_to_converge("sgd", 10000) == 459);
  CHECK(steps_to_converge("adadelta", 10000) == 2176);
  CHECK(steps_to_converge("adam", 15000) == 13271);
}

TEST_CASE("adam step magnitude stays within alpha") {
  RandomStream rng(7);
  ScalarParam adam(default_config("adam"), 0.0);
  double previous = adam.value();
  for (int i = 0; i < 2000; ++i) {
    double g = (rng.next_double() * 2.0 - 1.0);
    adam.apply(g);
    double delta = adam.value() - previous;
    previous = adam.value();
    CHECK(std::abs(delta) <= 0.001 * 1.0001);
  }

  // Constant gradients keep the corrected ratio at exactly 1.
  ScalarParam steady(default_config("adam"), 0.0);
  previous = steady.value();
  for (int i = 0; i < 100; ++i) {
    steady.apply(2.5);
    double delta = steady.value() - previous;
    previous = steady.value();
    CHECK(std::abs(delta) <= 0.001 * 1.0001);
  }
}

TEST_CASE("identical inputs give bit-identical updates") {
  for (const char* name : {"sgd", "adam", "adadelta"}) {
    CAPTURE(name);
    ScalarParam a(default_config(name), 3.25);
    ScalarParam b(default_config(name), 3.25);
    for (int i = 0; i < 50; ++i) {
      double g = 0.125 * (i % 7) - 0.25;
      a.apply(g);
      b.apply(g);
      CHECK(a.value() == b.value());
    }
    CHECK(a.state.t == 50);
  }
}

TEST_CASE("sgd with lr 0 is the identity on parameters") {
  // The step rule itself: train-time validation separately rejects lr <= 0.
  OptimizerConfig config = default_config("sgd");
  config.sgd.lr = 0.0;
  CHECK_THROWS_AS(validate(config), DataError);

  ScalarParam opt(config, 1.0);
  opt.apply(123.456);
  opt.apply(-9.5);
  CHECK(opt.value() == 1.0);
}

TEST_CASE("step rejects non-finite gradients and shape mismatches") {
  ScalarParam adam(default_config("adam"), 1.0);
  std::vector<double> bad = {std::numeric_limits<double>::quiet_NaN()};
  CHECK_THROWS_AS(step(adam.config, adam.state, {std::span<double>(adam.p)},
                       {std::span<const double>(bad)}),
                  NumericError);

  std::vector<double> two = {0.5, 0.5};
  CHECK_THROWS_AS(step(adam.config, adam.state, {std::span<double>(adam.p)},
                       {std::span<const double>(two)}),
                  DimensionError);

  // State created for a different parameter set.
  std::vector<std::size_t> sizes = {3};
  OptimizerState wrong = init_state(adam.config, sizes);
  std::vector<double> g = {0.5};
  CHECK_THROWS_AS(step(adam.config, wrong, {std::span<double>(adam.p)},
                       {std::span<const double>(g)}),
                  DimensionError);
}

TEST_CASE("validate rejects out-of-range hyperparameters") {
  OptimizerConfig config = default_config("adam");
  config.adam.beta1 = 1.0;
  CHECK_THROWS_AS(validate(config), DataError);
  config = default_config("adam");
  config.adam.alpha = -0.1;
  CHECK_THROWS_AS(validate(config), DataError);
  config = default_config("adadelta");
  config.adadelta.rho = -0.01;
  CHECK_THROWS_AS(validate(config), DataError);
  CHECK_NOTHROW(validate(default_config("sgd")));
}
