#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dlgrowth::hcnet {

// Encoder -> single-unit bottleneck -> per-outcome affine heads. Encoder
// blocks are affine -> batch-norm -> GELU; the bottleneck is ReLU-activated;
// each head is an affine function of (bottleneck activation, publication
// date) and nothing else.
struct HCNetworkSpec {
    int input_dim = 64;
    std::vector<int> encoder_layers = {128, 64, 32};
    std::vector<bool> batch_norm;  // per encoder layer; empty = all on
    std::vector<std::string> heads = {"cit_t1", "cit_t2", "cit_t3", "cit_t5", "sjr"};
    int frozen_prefix = 0;  // leading encoder blocks excluded from updates
    double bn_momentum = 0.99;
    double bn_eps = 1e-5;

    void validate() const;
    bool bn_at(size_t layer) const { return batch_norm.empty() || batch_norm[layer]; }
    size_t head_index(const std::string& name) const;
};

struct TrainStep {
    std::vector<std::string> active_heads;
    int batch_size = 256;
    double learning_rate = 5e-4;
    int epochs = 90;
};

struct Batch {
    Eigen::MatrixXd features;  // n x input_dim
    Eigen::VectorXd dates;     // n
    Eigen::MatrixXd targets;   // n x heads, NaN = missing
};

enum class Mode { Train, Eval };

struct Linear {
    Eigen::MatrixXd weight;  // out x in
    Eigen::VectorXd bias;    // out
};

struct BatchNorm {
    Eigen::VectorXd gamma, beta;
    Eigen::VectorXd running_mean, running_var;
};

struct EncoderBlock {
    Linear linear;
    std::optional<BatchNorm> bn;
};

struct LinearGrad {
    Eigen::MatrixXd weight;
    Eigen::VectorXd bias;
};

struct BatchNormGrad {
    Eigen::VectorXd gamma, beta;
};

struct BlockGrad {
    LinearGrad linear;
    std::optional<BatchNormGrad> bn;
};

struct Gradients {
    std::vector<BlockGrad> encoder;
    LinearGrad bottleneck;
    std::vector<LinearGrad> heads;
};

struct ForwardResult {
    Eigen::MatrixXd head_out;    // n x heads
    Eigen::VectorXd bottleneck;  // n (post-ReLU)
};

struct TrainOutput {
    double loss = 0.0;
    ForwardResult forward;
    Gradients grads;
};

class HCNetwork {
public:
    HCNetwork(HCNetworkSpec spec, uint64_t seed);

    const HCNetworkSpec& spec() const { return spec_; }

    // Eval mode uses the batch-norm running statistics; train mode uses the
    // batch statistics (and, through train_step, updates the running ones).
    ForwardResult forward(const Eigen::MatrixXd& features, const Eigen::VectorXd& dates,
                          Mode mode) const;

    // Forward in train mode, masked multi-head MSE loss, backprop. Gradients
    // for frozen encoder blocks are exactly zero. Updates running BN stats.
    TrainOutput train_batch(const Batch& batch, const std::vector<size_t>& active_heads,
                            const Eigen::VectorXd& head_weights);

    // Bottleneck activations in eval mode (the human-capital scalars).
    Eigen::VectorXd extract_hc(const Eigen::MatrixXd& features) const;

    // Explicit standardization transform applied before the activations are
    // consumed as log human capital downstream.
    void set_hc_standardization(double mean, double sd);
    double hc_mean() const { return hc_mean_; }
    double hc_sd() const { return hc_sd_; }
    Eigen::VectorXd standardize_hc(const Eigen::VectorXd& raw) const;

    void save(std::ostream& out) const;
    static HCNetwork load(std::istream& in);

    // Parameter traversal in a fixed order (optimizer, tests, IO).
    template <typename Fn>
    void visit_params(Fn&& fn);  // fn(Eigen::MatrixXd& or VectorXd&, bool frozen)

    std::vector<EncoderBlock>& encoder() { return encoder_; }
    Linear& bottleneck_layer() { return bottleneck_; }
    std::vector<Linear>& head_layers() { return heads_; }

private:
    friend struct NetAccess;
    HCNetworkSpec spec_;
    std::vector<EncoderBlock> encoder_;
    Linear bottleneck_;
    std::vector<Linear> heads_;
    double hc_mean_ = 0.0;
    double hc_sd_ = 1.0;
};

// Adamax: m <- b1 m + (1-b1) g, u <- max(b2 u, |g|),
// w <- w - lr/(1-b1^t) * m/u with u floored at 1e-8.
class Adamax {
public:
    explicit Adamax(double beta1 = 0.9, double beta2 = 0.999);

    void step(HCNetwork& net, const Gradients& grads, double lr);
    long steps_taken() const { return t_; }

private:
    double beta1_, beta2_;
    long t_ = 0;
    std::vector<Eigen::VectorXd> m_, u_;
    bool initialized_ = false;
};

struct TrainHistory {
    // epoch_losses[step][epoch]
    std::vector<std::vector<double>> epoch_losses;
    bool diverged = false;
    std::string note;
};

// Runs the staged schedule in order. Deterministic for a given seed; halts
// with the history so far if the loss becomes non-finite.
TrainHistory train(HCNetwork& net, Adamax& optimizer, const Batch& dataset,
                   const std::vector<TrainStep>& schedule, uint64_t seed);

// GELU and its derivative (exact erf form); exposed for the gradient tests.
double gelu(double x);
double gelu_grad(double x);

template <typename Fn>
void HCNetwork::visit_params(Fn&& fn) {
    for (size_t i = 0; i < encoder_.size(); ++i) {
        const bool frozen = static_cast<int>(i) < spec_.frozen_prefix;
        fn(encoder_[i].linear.weight, frozen);
        fn(encoder_[i].linear.bias, frozen);
        if (encoder_[i].bn) {
            fn(encoder_[i].bn->gamma, frozen);
            fn(encoder_[i].bn->beta, frozen);
        }
    }
    fn(bottleneck_.weight, false);
    fn(bottleneck_.bias, false);
    for (auto& head : heads_) {
        fn(head.weight, false);
        fn(head.bias, false);
    }
}

}  // namespace dlgrowth::hcnet
