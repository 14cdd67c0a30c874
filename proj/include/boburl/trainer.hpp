#ifndef BOBURL_TRAINER_HPP
#define BOBURL_TRAINER_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "boburl/datasets.hpp"
#include "boburl/metrics.hpp"
#include "boburl/neural_net.hpp"
#include "boburl/optimizers.hpp"

namespace boburl {

struct TrainConfig {
  std::size_t batch_size = 100;
  std::size_t epochs = 20;
  double dropout_ratio = kDefaultDropoutRatio;
  double train_fraction = 0.8;  // recorded; splitting happens upstream
  OptimizerConfig optimizer;
  std::uint64_t seed = 0;
  std::size_t vectorize_threads = 0;  // 0 = sequential
};

// One row of the learning curve.
struct EpochRecord {
  std::size_t epoch = 0;  // 1-based
  double train_loss = 0.0;
  double train_accuracy = 0.0;
  double val_loss = 0.0;
  double val_accuracy = 0.0;
  double seconds = 0.0;  // wall clock for the epoch, training + evaluation
};

struct TrainResult {
  MlpModel model;
  std::vector<EpochRecord> records;
};

// Half-open [first, last) row ranges covering n rows; the final short
// batch is included.
std::vector<std::pair<std::size_t, std::size_t>> minibatch_ranges(
    std::size_t n, std::size_t batch_size);

// One row per entry, in entry order regardless of thread count.
Matrix vectorize_dataset(const Dataset& dataset, std::size_t threads = 0);

std::vector<int> labels_of(const Dataset& dataset);

// Runs the training protocol: vectors are precomputed once, every epoch
// reshuffles the training set with the seeded stream and iterates
// minibatches through forward/loss/backward/step, then records eval-mode
// loss and accuracy on both sets. Rethrows a non-finite loss as
// NumericError naming the epoch and batch. Same config and seed give
// bit-identical final weights.
TrainResult train(const TrainConfig& config, const Dataset& train_set,
                  const Dataset& val_set);

// Eval-mode loss and accuracy over the whole set. Accuracy counts samples
// whose argmax logit equals the label; at exactly equal logits the
// prediction is benign.
std::pair<double, double> evaluate_on(const MlpModel& model,
                                      const Dataset& dataset);

// p_malicious for every entry, eval mode, in entry order.
std::vector<ScoredLabel> score_dataset(const MlpModel& model,
                                       const Dataset& dataset,
                                       std::size_t threads = 0);

}  // namespace boburl

#endif  // BOBURL_TRAINER_HPP
