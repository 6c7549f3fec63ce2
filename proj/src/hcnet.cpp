#include "dlgrowth/hcnet.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <numbers>
#include <numeric>
#include <ostream>

#include "dlgrowth/errors.hpp"
#include "dlgrowth/rng.hpp"

namespace dlgrowth::hcnet {

namespace {

constexpr char kMagic[] = "DLGROWTH-HCNET-v1";

double phi(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }
double Phi(double x) { return 0.5 * (1.0 + std::erf(x / std::numbers::sqrt2)); }

struct BlockCache {
    const Eigen::MatrixXd* input = nullptr;  // borrowed
    Eigen::MatrixXd lin_out;
    Eigen::MatrixXd xhat;      // BN only
    Eigen::ArrayXd invstd;     // BN only
    Eigen::MatrixXd act_in;    // GELU input (BN output, or lin_out)
    Eigen::MatrixXd act_out;
};

struct ParamView {
    double* value;
    const double* grad;
    Eigen::Index size;
};

void push_view(std::vector<ParamView>& views, Eigen::MatrixXd& value,
               const Eigen::MatrixXd& grad) {
    views.push_back({value.data(), grad.data(), value.size()});
}
void push_view(std::vector<ParamView>& views, Eigen::VectorXd& value,
               const Eigen::VectorXd& grad) {
    views.push_back({value.data(), grad.data(), value.size()});
}

std::vector<ParamView> make_views(HCNetwork& net, const Gradients& grads) {
    std::vector<ParamView> views;
    auto& encoder = net.encoder();
    for (size_t i = 0; i < encoder.size(); ++i) {
        push_view(views, encoder[i].linear.weight, grads.encoder[i].linear.weight);
        push_view(views, encoder[i].linear.bias, grads.encoder[i].linear.bias);
        if (encoder[i].bn) {
            push_view(views, encoder[i].bn->gamma, grads.encoder[i].bn->gamma);
            push_view(views, encoder[i].bn->beta, grads.encoder[i].bn->beta);
        }
    }
    push_view(views, net.bottleneck_layer().weight, grads.bottleneck.weight);
    push_view(views, net.bottleneck_layer().bias, grads.bottleneck.bias);
    auto& heads = net.head_layers();
    for (size_t h = 0; h < heads.size(); ++h) {
        push_view(views, heads[h].weight, grads.heads[h].weight);
        push_view(views, heads[h].bias, grads.heads[h].bias);
    }
    return views;
}

void write_bytes(std::ostream& out, const void* p, size_t bytes) {
    out.write(static_cast<const char*>(p), static_cast<std::streamsize>(bytes));
}
void read_bytes(std::istream& in, void* p, size_t bytes) {
    in.read(static_cast<char*>(p), static_cast<std::streamsize>(bytes));
    if (!in) throw ValidationError("truncated network artifact");
}
void write_i64(std::ostream& out, int64_t v) { write_bytes(out, &v, sizeof v); }
int64_t read_i64(std::istream& in) {
    int64_t v = 0;
    read_bytes(in, &v, sizeof v);
    return v;
}
void write_f64(std::ostream& out, double v) { write_bytes(out, &v, sizeof v); }
double read_f64(std::istream& in) {
    double v = 0;
    read_bytes(in, &v, sizeof v);
    return v;
}
void write_string(std::ostream& out, const std::string& s) {
    write_i64(out, static_cast<int64_t>(s.size()));
    write_bytes(out, s.data(), s.size());
}
std::string read_string(std::istream& in) {
    const auto len = static_cast<size_t>(read_i64(in));
    require(len < (1u << 20), "corrupt network artifact");
    std::string s(len, '\0');
    read_bytes(in, s.data(), len);
    return s;
}
void write_matrix(std::ostream& out, const Eigen::MatrixXd& m) {
    write_i64(out, m.rows());
    write_i64(out, m.cols());
    write_bytes(out, m.data(), sizeof(double) * static_cast<size_t>(m.size()));
}
Eigen::MatrixXd read_matrix(std::istream& in) {
    const auto rows = read_i64(in);
    const auto cols = read_i64(in);
    require(rows >= 0 && cols >= 0 && rows * cols < (1ll << 28), "corrupt network artifact");
    Eigen::MatrixXd m(rows, cols);
    read_bytes(in, m.data(), sizeof(double) * static_cast<size_t>(m.size()));
    return m;
}
void write_vector(std::ostream& out, const Eigen::VectorXd& v) {
    write_i64(out, v.size());
    write_bytes(out, v.data(), sizeof(double) * static_cast<size_t>(v.size()));
}
Eigen::VectorXd read_vector(std::istream& in) {
    const auto size = read_i64(in);
    require(size >= 0 && size < (1ll << 28), "corrupt network artifact");
    Eigen::VectorXd v(size);
    read_bytes(in, v.data(), sizeof(double) * static_cast<size_t>(v.size()));
    return v;
}

}  // namespace

double gelu(double x) { return x * Phi(x); }
double gelu_grad(double x) { return Phi(x) + x * phi(x); }

void HCNetworkSpec::validate() const {
    require(input_dim >= 1, "input_dim must be >= 1");
    require(!encoder_layers.empty(), "need at least one encoder layer");
    for (int w : encoder_layers) require(w >= 1, "encoder widths must be >= 1");
    require(batch_norm.empty() || batch_norm.size() == encoder_layers.size(),
            "batch_norm flags must match encoder layers");
    require(!heads.empty(), "need at least one head");
    require(frozen_prefix >= 0 && frozen_prefix <= static_cast<int>(encoder_layers.size()),
            "frozen_prefix out of range");
    require(bn_momentum > 0.0 && bn_momentum < 1.0, "bn_momentum must lie in (0,1)");
    require(bn_eps > 0.0, "bn_eps must be > 0");
}

size_t HCNetworkSpec::head_index(const std::string& name) const {
    for (size_t h = 0; h < heads.size(); ++h)
        if (heads[h] == name) return h;
    throw ValidationError("unknown head '" + name + "'");
}

HCNetwork::HCNetwork(HCNetworkSpec spec, uint64_t seed) : spec_(std::move(spec)) {
    spec_.validate();
    Rng rng(derive_seed(seed, "hcnet_init"));
    auto init_linear = [&](int out, int in) {
        Linear layer;
        layer.weight.resize(out, in);
        const double sd = std::sqrt(1.0 / static_cast<double>(in));
        for (Eigen::Index i = 0; i < layer.weight.size(); ++i)
            layer.weight.data()[i] = rng.normal(0.0, sd);
        layer.bias = Eigen::VectorXd::Zero(out);
        return layer;
    };

    int in = spec_.input_dim;
    for (size_t i = 0; i < spec_.encoder_layers.size(); ++i) {
        const int out = spec_.encoder_layers[i];
        EncoderBlock block;
        block.linear = init_linear(out, in);
        if (spec_.bn_at(i)) {
            BatchNorm bn;
            bn.gamma = Eigen::VectorXd::Ones(out);
            bn.beta = Eigen::VectorXd::Zero(out);
            bn.running_mean = Eigen::VectorXd::Zero(out);
            bn.running_var = Eigen::VectorXd::Ones(out);
            block.bn = std::move(bn);
        }
        encoder_.push_back(std::move(block));
        in = out;
    }
    bottleneck_ = init_linear(1, in);
    for (size_t h = 0; h < spec_.heads.size(); ++h)
        heads_.push_back(init_linear(1, 2));  // (bottleneck, date)
}

namespace {

// Shared forward pass; fills caches and optionally updates the running
// batch-norm statistics (train mode only).
ForwardResult run_forward(const HCNetworkSpec& spec, std::vector<EncoderBlock>& encoder,
                          const Linear& bottleneck, const std::vector<Linear>& heads,
                          const Eigen::MatrixXd& features, const Eigen::VectorXd& dates,
                          Mode mode, bool update_running, std::vector<BlockCache>* caches,
                          Eigen::MatrixXd* z_out) {
    require(features.cols() == spec.input_dim, "feature dimension mismatch");
    require(dates.size() == features.rows(), "dates length mismatch");
    const auto n = features.rows();
    require(n >= 1, "empty batch");
    if (mode == Mode::Train) require(n >= 2, "train mode needs a batch of at least 2");

    const Eigen::MatrixXd* current = &features;
    Eigen::MatrixXd buffer;
    if (caches) caches->resize(encoder.size());

    for (size_t i = 0; i < encoder.size(); ++i) {
        EncoderBlock& block = encoder[i];
        BlockCache local;
        BlockCache& cache = caches ? (*caches)[i] : local;
        cache.input = current;
        cache.lin_out = (*current) * block.linear.weight.transpose();
        cache.lin_out.rowwise() += block.linear.bias.transpose();

        if (block.bn) {
            const double dn = static_cast<double>(n);
            const Eigen::RowVectorXd mean = cache.lin_out.colwise().mean();
            Eigen::MatrixXd centered = cache.lin_out.rowwise() - mean;
            const Eigen::RowVectorXd var = centered.array().square().colwise().sum() / dn;
            if (mode == Mode::Train) {
                cache.invstd = (var.transpose().array() + spec.bn_eps).rsqrt();
                cache.xhat = centered.array().rowwise() * cache.invstd.transpose();
                if (update_running) {
                    block.bn->running_mean = spec.bn_momentum * block.bn->running_mean +
                                             (1.0 - spec.bn_momentum) * mean.transpose();
                    block.bn->running_var = spec.bn_momentum * block.bn->running_var +
                                            (1.0 - spec.bn_momentum) * var.transpose();
                }
            } else {
                const Eigen::ArrayXd inv =
                    (block.bn->running_var.array() + spec.bn_eps).rsqrt();
                cache.xhat = (cache.lin_out.rowwise() - block.bn->running_mean.transpose())
                                 .array()
                                 .rowwise() *
                             inv.transpose();
                cache.invstd = inv;
            }
            cache.act_in = cache.xhat.array().rowwise() * block.bn->gamma.transpose().array();
            cache.act_in.rowwise() += block.bn->beta.transpose();
        } else {
            cache.act_in = cache.lin_out;
        }

        cache.act_out = cache.act_in.unaryExpr([](double x) { return gelu(x); });
        current = &cache.act_out;
        if (!caches) buffer = std::move(local.act_out), current = &buffer;
    }

    Eigen::MatrixXd z = (*current) * bottleneck.weight.transpose();
    z.array() += bottleneck.bias(0);

    ForwardResult out;
    out.bottleneck = z.col(0).cwiseMax(0.0);
    out.head_out.resize(n, static_cast<Eigen::Index>(heads.size()));
    for (size_t h = 0; h < heads.size(); ++h) {
        out.head_out.col(static_cast<Eigen::Index>(h)) =
            heads[h].weight(0, 0) * out.bottleneck + heads[h].weight(0, 1) * dates +
            Eigen::VectorXd::Constant(n, heads[h].bias(0));
    }
    if (z_out) *z_out = std::move(z);
    return out;
}

}  // namespace

ForwardResult HCNetwork::forward(const Eigen::MatrixXd& features, const Eigen::VectorXd& dates,
                                 Mode mode) const {
    auto& self = const_cast<HCNetwork&>(*this);  // running stats untouched here
    return run_forward(spec_, self.encoder_, bottleneck_, heads_, features, dates, mode,
                       /*update_running=*/false, nullptr, nullptr);
}

Eigen::VectorXd HCNetwork::extract_hc(const Eigen::MatrixXd& features) const {
    const Eigen::VectorXd dates = Eigen::VectorXd::Zero(features.rows());
    return forward(features, dates, Mode::Eval).bottleneck;
}

void HCNetwork::set_hc_standardization(double mean, double sd) {
    require(sd > 0.0, "standardization sd must be > 0");
    hc_mean_ = mean;
    hc_sd_ = sd;
}

Eigen::VectorXd HCNetwork::standardize_hc(const Eigen::VectorXd& raw) const {
    return (raw.array() - hc_mean_) / hc_sd_;
}

TrainOutput HCNetwork::train_batch(const Batch& batch, const std::vector<size_t>& active_heads,
                                   const Eigen::VectorXd& head_weights) {
    require(!active_heads.empty(), "active head set is empty");
    require(head_weights.size() == static_cast<Eigen::Index>(spec_.heads.size()),
            "head_weights length mismatch");
    require(batch.targets.rows() == batch.features.rows() &&
                batch.targets.cols() == static_cast<Eigen::Index>(spec_.heads.size()),
            "targets shape mismatch");

    std::vector<BlockCache> caches;
    Eigen::MatrixXd z;
    TrainOutput out;
    out.forward = run_forward(spec_, encoder_, bottleneck_, heads_, batch.features, batch.dates,
                              Mode::Train, /*update_running=*/true, &caches, &z);

    const auto n = batch.features.rows();
    const double dn = static_cast<double>(n);

    // Masked per-head MSE, weighted across heads that have any targets.
    double weight_total = 0.0;
    std::vector<double> head_count(spec_.heads.size(), 0.0);
    for (size_t h : active_heads) {
        double m = 0.0;
        for (Eigen::Index i = 0; i < n; ++i)
            if (!std::isnan(batch.targets(i, static_cast<Eigen::Index>(h)))) m += 1.0;
        head_count[h] = m;
        if (m > 0.0) weight_total += head_weights(static_cast<Eigen::Index>(h));
    }
    if (weight_total <= 0.0)
        throw ValidationError("undefined loss: all targets missing for the active heads");

    out.grads.encoder.resize(encoder_.size());
    for (size_t i = 0; i < encoder_.size(); ++i) {
        out.grads.encoder[i].linear.weight =
            Eigen::MatrixXd::Zero(encoder_[i].linear.weight.rows(),
                                  encoder_[i].linear.weight.cols());
        out.grads.encoder[i].linear.bias =
            Eigen::VectorXd::Zero(encoder_[i].linear.bias.size());
        if (encoder_[i].bn) {
            BatchNormGrad g;
            g.gamma = Eigen::VectorXd::Zero(encoder_[i].bn->gamma.size());
            g.beta = Eigen::VectorXd::Zero(encoder_[i].bn->beta.size());
            out.grads.encoder[i].bn = std::move(g);
        }
    }
    out.grads.bottleneck.weight = Eigen::MatrixXd::Zero(1, bottleneck_.weight.cols());
    out.grads.bottleneck.bias = Eigen::VectorXd::Zero(1);
    out.grads.heads.resize(heads_.size());
    for (size_t h = 0; h < heads_.size(); ++h) {
        out.grads.heads[h].weight = Eigen::MatrixXd::Zero(1, 2);
        out.grads.heads[h].bias = Eigen::VectorXd::Zero(1);
    }

    double loss = 0.0;
    Eigen::VectorXd d_bottleneck = Eigen::VectorXd::Zero(n);
    for (size_t h : active_heads) {
        if (head_count[h] == 0.0) continue;
        const auto col = static_cast<Eigen::Index>(h);
        const double w = head_weights(col) / weight_total;
        double sse = 0.0;
        Eigen::VectorXd dpred = Eigen::VectorXd::Zero(n);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double target = batch.targets(i, col);
            if (std::isnan(target)) continue;
            const double r = out.forward.head_out(i, col) - target;
            sse += r * r;
            dpred(i) = w * 2.0 * r / head_count[h];
        }
        loss += w * sse / head_count[h];
        out.grads.heads[h].weight(0, 0) = dpred.dot(out.forward.bottleneck);
        out.grads.heads[h].weight(0, 1) = dpred.dot(batch.dates);
        out.grads.heads[h].bias(0) = dpred.sum();
        d_bottleneck += heads_[h].weight(0, 0) * dpred;
    }
    out.loss = loss;

    // ReLU bottleneck.
    Eigen::VectorXd dz = (z.col(0).array() > 0.0).select(d_bottleneck, 0.0);
    out.grads.bottleneck.weight = dz.transpose() * caches.back().act_out;
    out.grads.bottleneck.bias(0) = dz.sum();
    Eigen::MatrixXd dx = dz * bottleneck_.weight;  // n x last_width

    for (size_t idx = encoder_.size(); idx-- > 0;) {
        const EncoderBlock& block = encoder_[idx];
        const BlockCache& cache = caches[idx];
        // GELU
        Eigen::MatrixXd dpre =
            dx.array() * cache.act_in.unaryExpr([](double x) { return gelu_grad(x); }).array();
        Eigen::MatrixXd dlin;
        if (block.bn) {
            BatchNormGrad& bn_grad = *out.grads.encoder[idx].bn;
            bn_grad.gamma = (dpre.array() * cache.xhat.array()).colwise().sum();
            bn_grad.beta = dpre.colwise().sum();
            const Eigen::MatrixXd dxhat =
                dpre.array().rowwise() * block.bn->gamma.transpose().array();
            const Eigen::RowVectorXd sum_dxhat = dxhat.colwise().sum();
            const Eigen::RowVectorXd sum_dxhat_xhat =
                (dxhat.array() * cache.xhat.array()).colwise().sum();
            dlin = (dn * dxhat.array() -
                    (Eigen::MatrixXd::Ones(n, 1) * sum_dxhat).array() -
                    cache.xhat.array() * (Eigen::MatrixXd::Ones(n, 1) * sum_dxhat_xhat).array());
            dlin = dlin.array().rowwise() * (cache.invstd.transpose() / dn);
        } else {
            dlin = dpre;
        }
        out.grads.encoder[idx].linear.weight = dlin.transpose() * (*cache.input);
        out.grads.encoder[idx].linear.bias = dlin.colwise().sum();
        if (idx > 0) dx = dlin * block.linear.weight;
    }

    // Frozen prefix receives no updates.
    for (int i = 0; i < spec_.frozen_prefix; ++i) {
        auto& g = out.grads.encoder[static_cast<size_t>(i)];
        g.linear.weight.setZero();
        g.linear.bias.setZero();
        if (g.bn) {
            g.bn->gamma.setZero();
            g.bn->beta.setZero();
        }
    }
    return out;
}

Adamax::Adamax(double beta1, double beta2) : beta1_(beta1), beta2_(beta2) {}

void Adamax::step(HCNetwork& net, const Gradients& grads, double lr) {
    require(lr > 0.0, "learning rate must be > 0");
    auto views = make_views(net, grads);
    if (!initialized_) {
        m_.resize(views.size());
        u_.resize(views.size());
        for (size_t i = 0; i < views.size(); ++i) {
            m_[i] = Eigen::VectorXd::Zero(views[i].size);
            u_[i] = Eigen::VectorXd::Zero(views[i].size);
        }
        initialized_ = true;
    }
    require(m_.size() == views.size(), "optimizer state does not match network");

    for (const auto& view : views)
        for (Eigen::Index j = 0; j < view.size; ++j)
            if (!std::isfinite(view.grad[j]))
                throw NumericalError("non-finite gradient: aborting optimizer step");

    ++t_;
    const double correction = 1.0 - std::pow(beta1_, static_cast<double>(t_));
    for (size_t i = 0; i < views.size(); ++i) {
        auto& view = views[i];
        for (Eigen::Index j = 0; j < view.size; ++j) {
            const double g = view.grad[j];
            m_[i](j) = beta1_ * m_[i](j) + (1.0 - beta1_) * g;
            u_[i](j) = std::max(beta2_ * u_[i](j), std::abs(g));
            view.value[j] -= lr / correction * m_[i](j) / std::max(u_[i](j), 1e-8);
        }
    }
}

TrainHistory train(HCNetwork& net, Adamax& optimizer, const Batch& dataset,
                   const std::vector<TrainStep>& schedule, uint64_t seed) {
    TrainHistory history;
    const auto n = dataset.features.rows();
    require(n >= 2, "training set too small");

    for (size_t step_idx = 0; step_idx < schedule.size(); ++step_idx) {
        const TrainStep& step = schedule[step_idx];
        require(!step.active_heads.empty(), "training step has no active heads");
        require(step.batch_size >= 2, "batch_size must be >= 2");
        require(step.learning_rate > 0.0, "learning_rate must be > 0");
        require(step.epochs >= 0, "epochs must be >= 0");
        std::vector<size_t> active;
        active.reserve(step.active_heads.size());
        for (const auto& name : step.active_heads) active.push_back(net.spec().head_index(name));
        const Eigen::VectorXd weights =
            Eigen::VectorXd::Ones(static_cast<Eigen::Index>(net.spec().heads.size()));

        history.epoch_losses.emplace_back();
        for (int epoch = 0; epoch < step.epochs; ++epoch) {
            Rng rng(derive_seed(seed, "hc_epoch", step_idx * 1000003 + static_cast<size_t>(epoch)));
            std::vector<Eigen::Index> order(static_cast<size_t>(n));
            std::iota(order.begin(), order.end(), 0);
            rng.shuffle(order);

            double loss_sum = 0.0;
            double weight_sum = 0.0;
            for (Eigen::Index start = 0; start < n; start += step.batch_size) {
                const Eigen::Index size = std::min<Eigen::Index>(step.batch_size, n - start);
                if (size < 2) continue;  // batch-norm needs at least two rows
                Batch minibatch;
                minibatch.features.resize(size, dataset.features.cols());
                minibatch.dates.resize(size);
                minibatch.targets.resize(size, dataset.targets.cols());
                for (Eigen::Index i = 0; i < size; ++i) {
                    const Eigen::Index row = order[static_cast<size_t>(start + i)];
                    minibatch.features.row(i) = dataset.features.row(row);
                    minibatch.dates(i) = dataset.dates(row);
                    minibatch.targets.row(i) = dataset.targets.row(row);
                }
                const TrainOutput result = net.train_batch(minibatch, active, weights);
                if (!std::isfinite(result.loss)) {
                    history.diverged = true;
                    history.note = "loss became non-finite; training halted";
                    return history;
                }
                optimizer.step(net, result.grads, step.learning_rate);
                loss_sum += result.loss * static_cast<double>(size);
                weight_sum += static_cast<double>(size);
            }
            history.epoch_losses.back().push_back(weight_sum > 0 ? loss_sum / weight_sum : 0.0);
        }
    }
    return history;
}

void HCNetwork::save(std::ostream& out) const {
    write_string(out, kMagic);
    write_i64(out, spec_.input_dim);
    write_i64(out, static_cast<int64_t>(spec_.encoder_layers.size()));
    for (int w : spec_.encoder_layers) write_i64(out, w);
    for (size_t i = 0; i < spec_.encoder_layers.size(); ++i)
        write_i64(out, spec_.bn_at(i) ? 1 : 0);
    write_i64(out, static_cast<int64_t>(spec_.heads.size()));
    for (const auto& h : spec_.heads) write_string(out, h);
    write_i64(out, spec_.frozen_prefix);
    write_f64(out, spec_.bn_momentum);
    write_f64(out, spec_.bn_eps);
    write_f64(out, hc_mean_);
    write_f64(out, hc_sd_);
    for (const auto& block : encoder_) {
        write_matrix(out, block.linear.weight);
        write_vector(out, block.linear.bias);
        if (block.bn) {
            write_vector(out, block.bn->gamma);
            write_vector(out, block.bn->beta);
            write_vector(out, block.bn->running_mean);
            write_vector(out, block.bn->running_var);
        }
    }
    write_matrix(out, bottleneck_.weight);
    write_vector(out, bottleneck_.bias);
    for (const auto& head : heads_) {
        write_matrix(out, head.weight);
        write_vector(out, head.bias);
    }
}

HCNetwork HCNetwork::load(std::istream& in) {
    require(read_string(in) == kMagic, "not a network artifact (bad version tag)");
    HCNetworkSpec spec;
    spec.input_dim = static_cast<int>(read_i64(in));
    const auto n_layers = static_cast<size_t>(read_i64(in));
    require(n_layers > 0 && n_layers < 1024, "corrupt network artifact");
    spec.encoder_layers.resize(n_layers);
    for (auto& w : spec.encoder_layers) w = static_cast<int>(read_i64(in));
    spec.batch_norm.resize(n_layers);
    for (size_t i = 0; i < n_layers; ++i) spec.batch_norm[i] = read_i64(in) != 0;
    const auto n_heads = static_cast<size_t>(read_i64(in));
    require(n_heads > 0 && n_heads < 1024, "corrupt network artifact");
    spec.heads.clear();
    for (size_t h = 0; h < n_heads; ++h) spec.heads.push_back(read_string(in));
    spec.frozen_prefix = static_cast<int>(read_i64(in));
    spec.bn_momentum = read_f64(in);
    spec.bn_eps = read_f64(in);

    HCNetwork net(spec, /*seed=*/0);
    net.hc_mean_ = read_f64(in);
    net.hc_sd_ = read_f64(in);
    for (auto& block : net.encoder_) {
        block.linear.weight = read_matrix(in);
        block.linear.bias = read_vector(in);
        if (block.bn) {
            block.bn->gamma = read_vector(in);
            block.bn->beta = read_vector(in);
            block.bn->running_mean = read_vector(in);
            block.bn->running_var = read_vector(in);
        }
    }
    net.bottleneck_.weight = read_matrix(in);
    net.bottleneck_.bias = read_vector(in);
    for (auto& head : net.heads_) {
        head.weight = read_matrix(in);
        head.bias = read_vector(in);
    }
    return net;
}

}  // namespace dlgrowth::hcnet
