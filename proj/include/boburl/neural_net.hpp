#ifndef BOBURL_NEURAL_NET_HPP
#define BOBURL_NEURAL_NET_HPP

#include <array>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "boburl/matrix.hpp"
#include "boburl/rng.hpp"
#include "boburl/url_vectorizer.hpp"

namespace boburl {

inline constexpr std::size_t kInputDim = kUrlVectorDim;  // 512
inline constexpr std::size_t kHiddenDim = 256;
inline constexpr std::size_t kNumClasses = 2;
inline constexpr double kDefaultDropoutRatio = 0.75;

// One fully connected layer: out = weights * in + bias.
struct DenseLayer {
  Matrix weights;             // out_dim x in_dim
  std::vector<double> bias;   // out_dim

  std::size_t in_dim() const { return weights.cols(); }
  std::size_t out_dim() const { return weights.rows(); }
};

// Three dense layers with ReLU + dropout after the first two. The
// canonical classifier is 512 -> 256 -> 256 -> 2; toy dimensions are
// allowed so the same layer code can be gradient-checked at small sizes.
struct MlpModel {
  DenseLayer l1;
  DenseLayer l2;
  DenseLayer l3;
  double dropout_ratio = kDefaultDropoutRatio;

  bool has_canonical_dims() const {
    return l1.in_dim() == kInputDim && l1.out_dim() == kHiddenDim &&
           l2.in_dim() == kHiddenDim && l2.out_dim() == kHiddenDim &&
           l3.in_dim() == kHiddenDim && l3.out_dim() == kNumClasses;
  }
};

enum class RunMode { kTrain, kEval };

// Everything backward() needs, recorded during forward(). Mask entries
// hold the multiplier applied at the dropout site: 0 for dropped units,
// 1/(1 - ratio) for survivors, 1 everywhere in eval mode.
struct ForwardTrace {
  Matrix input;   // batch x in
  Matrix pre1;    // batch x h1, before ReLU
  Matrix post1;   // batch x h1, after ReLU, before dropout
  Matrix mask1;
  Matrix pre2;
  Matrix post2;
  Matrix mask2;
  Matrix logits;  // batch x classes
};

struct Gradients {
  Matrix w1, w2, w3;
  std::vector<double> b1, b2, b3;
};

struct LossGrad {
  double loss = 0.0;
  Matrix dlogits;  // (softmax - onehot) / batch
};

// Weights i.i.d. zero-mean Gaussian with std 1/sqrt(fan_in), biases zero,
// fully determined by seed.
MlpModel make_model(std::size_t in_dim, std::size_t hidden1,
                    std::size_t hidden2, std::size_t classes,
                    double dropout_ratio, std::uint64_t seed);

// The canonical 512 -> 256 -> 256 -> 2 model at dropout ratio 0.75.
MlpModel init_model(std::uint64_t seed);

// logits = l3(drop(relu(l2(drop(relu(l1(x))))))). Dropout is inverted: in
// train mode each activation is zeroed with probability dropout_ratio and
// survivors are scaled by 1/(1 - dropout_ratio); eval mode is the
// identity. rng is required in train mode.
ForwardTrace forward(const MlpModel& model, const Matrix& batch, RunMode mode,
                     RandomStream* rng = nullptr);

// Mean negative log softmax likelihood, max-subtracted for stability.
// Labels must be in {0, 1}.
LossGrad softmax_cross_entropy(const Matrix& logits,
                               std::span<const int> labels);

// Exact gradients through the recorded trace. ReLU passes gradient only
// at strictly positive pre-activations.
Gradients backward(const MlpModel& model, const ForwardTrace& trace,
                   const Matrix& dlogits);

// softmax of a two-logit pair; the outputs sum to 1.
std::array<double, 2> softmax2(double logit0, double logit1);

// (p_benign, p_malicious) from an eval-mode forward pass.
std::pair<double, double> predict_proba(const MlpModel& model,
                                        const UrlVector& vector);

// Parameter and gradient arrays in a fixed order (w1, b1, w2, b2, w3, b3)
// for the optimizer.
std::vector<std::span<double>> param_views(MlpModel& model);
std::vector<std::span<const double>> grad_views(const Gradients& grads);

}  // namespace boburl

#endif  // BOBURL_NEURAL_NET_HPP
