#include "boburl/trainer.hpp"

#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "boburl/errors.hpp"

namespace boburl {

namespace {

// Loss and accuracy over precomputed vectors, eval mode, chunked so big
// sets do not materialize one giant logits matrix.
std::pair<double, double> evaluate_vectors(const MlpModel& model,
                                           const Matrix& vectors,
                                           std::span<const int> labels) {
  const std::size_t n = vectors.rows();
  constexpr std::size_t kChunk = 1024;
  double total_loss = 0.0;
  std::size_t correct = 0;
  for (std::size_t first = 0; first < n; first += kChunk) {
    std::size_t last = std::min(first + kChunk, n);
    Matrix chunk(last - first, vectors.cols());
    std::copy(vectors.row(first), vectors.row(last - 1) + vectors.cols(),
              chunk.row(0));
    ForwardTrace trace = forward(model, chunk, RunMode::kEval);
    LossGrad lg = softmax_cross_entropy(
        trace.logits, labels.subspan(first, last - first));
    total_loss += lg.loss * static_cast<double>(last - first);
    for (std::size_t i = 0; i < trace.logits.rows(); ++i) {
      // Tie on equal logits predicts benign.
      int predicted = trace.logits(i, 1) > trace.logits(i, 0) ? 1 : 0;
      if (predicted == labels[first + i]) ++correct;
    }
  }
  return {total_loss / static_cast<double>(n),
          static_cast<double>(correct) / static_cast<double>(n)};
}

}  // namespace

std::vector<std::pair<std::size_t, std::size_t>> minibatch_ranges(
    std::size_t n, std::size_t batch_size) {
  if (batch_size == 0) throw DataError("minibatch_ranges: batch_size == 0");
  std::vector<std::pair<std::size_t, std::size_t>> ranges;
  ranges.reserve((n + batch_size - 1) / batch_size);
  for (std::size_t first = 0; first < n; first += batch_size) {
    ranges.emplace_back(first, std::min(first + batch_size, n));
  }
  return ranges;
}

Matrix vectorize_dataset(const Dataset& dataset, std::size_t threads) {
  const std::size_t n = dataset.entries.size();
  Matrix vectors(n, kUrlVectorDim);
  auto fill_rows = [&](std::size_t first, std::size_t last) {
    for (std::size_t i = first; i < last; ++i) {
      UrlVector vec = vectorize(dataset.entries[i].url);
      std::copy(vec.begin(), vec.end(), vectors.row(i));
    }
  };
  if (threads <= 1 || n < 2 * threads) {
    fill_rows(0, n);
    return vectors;
  }
  std::vector<std::thread> workers;
  std::size_t per_thread = (n + threads - 1) / threads;
  for (std::size_t t = 0; t < threads; ++t) {
    std::size_t first = t * per_thread;
    std::size_t last = std::min(first + per_thread, n);
    if (first >= last) break;
    workers.emplace_back(fill_rows, first, last);
  }
  for (std::thread& w : workers) w.join();
  return vectors;
}

std::vector<int> labels_of(const Dataset& dataset) {
  std::vector<int> labels;
  labels.reserve(dataset.entries.size());
  for (const LabeledUrl& entry : dataset.entries)
    labels.push_back(static_cast<int>(entry.label));
  return labels;
}

TrainResult train(const TrainConfig& config, const Dataset& train_set,
                  const Dataset& val_set) {
  if (train_set.entries.empty() || val_set.entries.empty())
    throw DataError("train: empty dataset");
  if (config.batch_size < 1 || config.epochs < 1)
    throw DataError("train: batch_size and epochs must be >= 1");
  if (config.dropout_ratio < 0.0 || config.dropout_ratio >= 1.0)
    throw DataError("train: dropout_ratio must be in [0, 1)");
  validate(config.optimizer);

  // Independent sub-streams derived from the one master seed.
  std::uint64_t seed_chain = config.seed;
  const std::uint64_t init_seed = splitmix64(seed_chain);
  RandomStream shuffle_rng(splitmix64(seed_chain));
  RandomStream dropout_rng(splitmix64(seed_chain));

  Matrix train_vectors = vectorize_dataset(train_set, config.vectorize_threads);
  Matrix val_vectors = vectorize_dataset(val_set, config.vectorize_threads);
  std::vector<int> train_labels = labels_of(train_set);
  std::vector<int> val_labels = labels_of(val_set);

  MlpModel model = make_model(kInputDim, kHiddenDim, kHiddenDim, kNumClasses,
                              config.dropout_ratio, init_seed);
  std::vector<std::span<double>> params = param_views(model);
  std::vector<std::size_t> param_sizes;
  for (const auto& p : params) param_sizes.push_back(p.size());
  OptimizerState opt_state = init_state(config.optimizer, param_sizes);

  const std::size_t n = train_set.entries.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto batches = minibatch_ranges(n, config.batch_size);

  TrainResult result;
  result.records.reserve(config.epochs);
  Matrix batch_vectors;
  std::vector<int> batch_labels;

  for (std::size_t epoch = 1; epoch <= config.epochs; ++epoch) {
    auto epoch_start = std::chrono::steady_clock::now();
    shuffle_rng.shuffle(std::span<std::size_t>(order));

    for (std::size_t b = 0; b < batches.size(); ++b) {
      auto [first, last] = batches[b];
      const std::size_t rows = last - first;
      batch_vectors = Matrix(rows, kUrlVectorDim);
      batch_labels.resize(rows);
      for (std::size_t i = 0; i < rows; ++i) {
        std::size_t src = order[first + i];
        std::copy(train_vectors.row(src),
                  train_vectors.row(src) + kUrlVectorDim,
                  batch_vectors.row(i));
        batch_labels[i] = train_labels[src];
      }

      ForwardTrace trace =
          forward(model, batch_vectors, RunMode::kTrain, &dropout_rng);
      LossGrad lg = softmax_cross_entropy(trace.logits, batch_labels);
      if (!std::isfinite(lg.loss))
        throw NumericError("train: non-finite loss at epoch " +
                           std::to_string(epoch) + " batch " +
                           std::to_string(b + 1));
      Gradients grads = backward(model, trace, lg.dlogits);
      step(config.optimizer, opt_state, params, grad_views(grads));
    }

    EpochRecord record;
    record.epoch = epoch;
    std::tie(record.train_loss, record.train_accuracy) =
        evaluate_vectors(model, train_vectors, train_labels);
    std::tie(record.val_loss, record.val_accuracy) =
        evaluate_vectors(model, val_vectors, val_labels);
    record.seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                      epoch_start)
            .count();
    result.records.push_back(record);
  }

  result.model = std::move(model);
  return result;
}

std::pair<double, double> evaluate_on(const MlpModel& model,
                                      const Dataset& dataset) {
  if (dataset.entries.empty()) throw DataError("evaluate_on: empty dataset");
  Matrix vectors = vectorize_dataset(dataset);
  std::vector<int> labels = labels_of(dataset);
  return evaluate_vectors(model, vectors, labels);
}

std::vector<ScoredLabel> score_dataset(const MlpModel& model,
                                       const Dataset& dataset,
                                       std::size_t threads) {
  std::vector<ScoredLabel> scores;
  if (dataset.entries.empty()) return scores;
  Matrix vectors = vectorize_dataset(dataset, threads);
  scores.reserve(dataset.entries.size());
  for (auto [first, last] : minibatch_ranges(dataset.size(), 1024)) {
    Matrix chunk(last - first, vectors.cols());
    std::copy(vectors.row(first), vectors.row(last - 1) + vectors.cols(),
              chunk.row(0));
    ForwardTrace trace = forward(model, chunk, RunMode::kEval);
    for (std::size_t i = 0; i < trace.logits.rows(); ++i) {
      auto probs = softmax2(trace.logits(i, 0), trace.logits(i, 1));
      scores.push_back({probs[1], dataset.entries[first + i].label});
    }
  }
  return scores;
}

}  // namespace boburl
