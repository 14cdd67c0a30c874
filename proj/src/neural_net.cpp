#include "boburl/neural_net.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "boburl/errors.hpp"

namespace boburl {

namespace {

DenseLayer make_layer(std::size_t out_dim, std::size_t in_dim,
                      RandomStream& rng) {
  DenseLayer layer;
  layer.weights = Matrix(out_dim, in_dim);
  double std_dev = 1.0 / std::sqrt(static_cast<double>(in_dim));
  for (double& w : layer.weights.flat()) w = std_dev * rng.next_gaussian();
  layer.bias.assign(out_dim, 0.0);
  return layer;
}

// z = x * W^T + b
Matrix affine(const Matrix& x, const DenseLayer& layer) {
  Matrix z;
  matmul_abt(x, layer.weights, z);
  for (std::size_t i = 0; i < z.rows(); ++i) {
    double* zi = z.row(i);
    for (std::size_t j = 0; j < z.cols(); ++j) zi[j] += layer.bias[j];
  }
  return z;
}

Matrix relu(const Matrix& z) {
  Matrix a = z;
  for (double& v : a.flat()) v = std::max(v, 0.0);
  return a;
}

Matrix dropout_mask(std::size_t rows, std::size_t cols, double ratio,
                    RunMode mode, RandomStream* rng) {
  Matrix mask(rows, cols, 1.0);
  if (mode == RunMode::kEval || ratio == 0.0) return mask;
  const double keep_scale = 1.0 / (1.0 - ratio);
  for (double& v : mask.flat()) {
    v = (rng->next_double() < ratio) ? 0.0 : keep_scale;
  }
  return mask;
}

Matrix hadamard(const Matrix& a, const Matrix& b) {
  Matrix out = a;
  std::span<double> o = out.flat();
  std::span<const double> bf = b.flat();
  for (std::size_t i = 0; i < o.size(); ++i) o[i] *= bf[i];
  return out;
}

std::vector<double> column_sums(const Matrix& m) {
  std::vector<double> sums(m.cols(), 0.0);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double* mi = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) sums[j] += mi[j];
  }
  return sums;
}

// dz = upstream gradient gated by the dropout mask and the ReLU slope.
Matrix gate_backward(const Matrix& dpost_drop, const Matrix& mask,
                     const Matrix& pre) {
  Matrix dz = dpost_drop;
  std::span<double> d = dz.flat();
  std::span<const double> m = mask.flat();
  std::span<const double> p = pre.flat();
  for (std::size_t i = 0; i < d.size(); ++i) {
    d[i] = (p[i] > 0.0) ? d[i] * m[i] : 0.0;
  }
  return dz;
}

}  // namespace

MlpModel make_model(std::size_t in_dim, std::size_t hidden1,
                    std::size_t hidden2, std::size_t classes,
                    double dropout_ratio, std::uint64_t seed) {
  if (dropout_ratio < 0.0 || dropout_ratio >= 1.0)
    throw std::invalid_argument("make_model: dropout_ratio must be in [0, 1)");
  RandomStream rng(seed);
  MlpModel model;
  model.l1 = make_layer(hidden1, in_dim, rng);
  model.l2 = make_layer(hidden2, hidden1, rng);
  model.l3 = make_layer(classes, hidden2, rng);
  model.dropout_ratio = dropout_ratio;
  return model;
}

MlpModel init_model(std::uint64_t seed) {
  return make_model(kInputDim, kHiddenDim, kHiddenDim, kNumClasses,
                    kDefaultDropoutRatio, seed);
}

ForwardTrace forward(const MlpModel& model, const Matrix& batch, RunMode mode,
                     RandomStream* rng) {
  if (batch.cols() != model.l1.in_dim())
    throw DimensionError("forward: batch width " + std::to_string(batch.cols()) +
                         " does not match input dim " +
                         std::to_string(model.l1.in_dim()));
  if (mode == RunMode::kTrain && model.dropout_ratio > 0.0 && rng == nullptr)
    throw std::invalid_argument("forward: train mode requires an rng");

  ForwardTrace trace;
  trace.input = batch;
  trace.pre1 = affine(batch, model.l1);
  trace.post1 = relu(trace.pre1);
  trace.mask1 = dropout_mask(trace.post1.rows(), trace.post1.cols(),
                             model.dropout_ratio, mode, rng);
  Matrix dropped1 = hadamard(trace.post1, trace.mask1);

  trace.pre2 = affine(dropped1, model.l2);
  trace.post2 = relu(trace.pre2);
  trace.mask2 = dropout_mask(trace.post2.rows(), trace.post2.cols(),
                             model.dropout_ratio, mode, rng);
  Matrix dropped2 = hadamard(trace.post2, trace.mask2);

  trace.logits = affine(dropped2, model.l3);
  return trace;
}

LossGrad softmax_cross_entropy(const Matrix& logits,
                               std::span<const int> labels) {
  if (logits.rows() == 0) throw DataError("softmax_cross_entropy: empty batch");
  if (labels.size() != logits.rows())
    throw DimensionError("softmax_cross_entropy: labels/batch size mismatch");
  const std::size_t batch = logits.rows();
  const std::size_t classes = logits.cols();

  LossGrad result;
  result.dlogits = Matrix(batch, classes);
  double total = 0.0;
  for (std::size_t i = 0; i < batch; ++i) {
    int label = labels[i];
    if (label < 0 || static_cast<std::size_t>(label) >= classes)
      throw DataError("softmax_cross_entropy: label " + std::to_string(label) +
                      " out of range");
    const double* row = logits.row(i);
    double max_logit = row[0];
    for (std::size_t c = 1; c < classes; ++c)
      max_logit = std::max(max_logit, row[c]);
    double sum_exp = 0.0;
    for (std::size_t c = 0; c < classes; ++c)
      sum_exp += std::exp(row[c] - max_logit);
    double log_sum = std::log(sum_exp);
    total += log_sum - (row[label] - max_logit);

    double* drow = result.dlogits.row(i);
    for (std::size_t c = 0; c < classes; ++c) {
      double softmax = std::exp(row[c] - max_logit) / sum_exp;
      drow[c] = (softmax - (static_cast<std::size_t>(label) == c ? 1.0 : 0.0)) /
                static_cast<double>(batch);
    }
  }
  result.loss = total / static_cast<double>(batch);
  return result;
}

Gradients backward(const MlpModel& model, const ForwardTrace& trace,
                   const Matrix& dlogits) {
  if (!trace.logits.same_shape(dlogits))
    throw DimensionError("backward: dlogits shape does not match trace");
  if (trace.pre1.cols() != model.l1.out_dim() ||
      trace.pre2.cols() != model.l2.out_dim() ||
      trace.logits.cols() != model.l3.out_dim() ||
      trace.input.cols() != model.l1.in_dim())
    throw DimensionError("backward: trace does not belong to this model");

  Gradients grads;
  Matrix dropped1 = hadamard(trace.post1, trace.mask1);
  Matrix dropped2 = hadamard(trace.post2, trace.mask2);

  // Layer 3 (no activation on logits).
  matmul_atb(dlogits, dropped2, grads.w3);
  grads.b3 = column_sums(dlogits);
  Matrix ddropped2;
  matmul_ab(dlogits, model.l3.weights, ddropped2);

  // Layer 2 through its dropout and ReLU.
  Matrix dz2 = gate_backward(ddropped2, trace.mask2, trace.pre2);
  matmul_atb(dz2, dropped1, grads.w2);
  grads.b2 = column_sums(dz2);
  Matrix ddropped1;
  matmul_ab(dz2, model.l2.weights, ddropped1);

  // Layer 1.
  Matrix dz1 = gate_backward(ddropped1, trace.mask1, trace.pre1);
  matmul_atb(dz1, trace.input, grads.w1);
  grads.b1 = column_sums(dz1);

  return grads;
}

std::array<double, 2> softmax2(double logit0, double logit1) {
  double m = std::max(logit0, logit1);
  double e0 = std::exp(logit0 - m);
  double e1 = std::exp(logit1 - m);
  double sum = e0 + e1;
  return {e0 / sum, e1 / sum};
}

std::pair<double, double> predict_proba(const MlpModel& model,
                                        const UrlVector& vector) {
  if (model.l3.out_dim() != 2)
    throw DimensionError("predict_proba: model does not have 2 classes");
  Matrix batch(1, vector.size());
  for (std::size_t i = 0; i < vector.size(); ++i) batch(0, i) = vector[i];
  ForwardTrace trace = forward(model, batch, RunMode::kEval);
  auto probs = softmax2(trace.logits(0, 0), trace.logits(0, 1));
  return {probs[0], probs[1]};
}

std::vector<std::span<double>> param_views(MlpModel& model) {
  return {model.l1.weights.flat(), std::span<double>(model.l1.bias),
          model.l2.weights.flat(), std::span<double>(model.l2.bias),
          model.l3.weights.flat(), std::span<double>(model.l3.bias)};
}

std::vector<std::span<const double>> grad_views(const Gradients& grads) {
  return {grads.w1.flat(), std::span<const double>(grads.b1),
          grads.w2.flat(), std::span<const double>(grads.b2),
          grads.w3.flat(), std::span<const double>(grads.b3)};
}

}  // namespace boburl
