#include "vlcn/cae/train.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

#include "vlcn/error.hpp"

namespace vlcn::cae {

namespace {

Tensor1D to_tensor(const std::vector<double>& signal) {
    return Tensor1D::from_signal(signal);
}

void check_finite(const Tensor1D& t, std::size_t layer_index) {
    for (double v : t.data) {
        if (!std::isfinite(v)) {
            throw NumericalError("non-finite activation after layer " +
                                 std::to_string(layer_index));
        }
    }
}

void validate_pairs(std::span<const SignalPair> pairs, std::size_t input_length) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (pairs[i].noisy.size() != input_length || pairs[i].clean.size() != input_length) {
            throw ValidationError("pair " + std::to_string(i) + " length does not match model "
                                  "input_length " + std::to_string(input_length));
        }
        for (double v : pairs[i].noisy) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw ValidationError("pair " + std::to_string(i) +
                                      ": noisy signal not normalized to [0,1]");
            }
        }
        for (double v : pairs[i].clean) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw ValidationError("pair " + std::to_string(i) +
                                      ": clean signal not normalized to [0,1]");
            }
        }
    }
}

}  // namespace

void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamConfig& cfg) {
    if (params.size() != grads.size()) {
        throw ValidationError("adam_step: parameter/gradient size mismatch");
    }
    if (state.m.empty()) {
        state.m.assign(params.size(), 0.0);
        state.v.assign(params.size(), 0.0);
    }
    if (state.m.size() != params.size()) {
        throw ValidationError("adam_step: state dimension mismatch");
    }
    state.t += 1;
    const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(state.t));
    for (std::size_t i = 0; i < params.size(); ++i) {
        state.m[i] = cfg.beta1 * state.m[i] + (1.0 - cfg.beta1) * grads[i];
        state.v[i] = cfg.beta2 * state.v[i] + (1.0 - cfg.beta2) * grads[i] * grads[i];
        const double mhat = state.m[i] / bc1;
        const double vhat = state.v[i] / bc2;
        params[i] -= cfg.lr * mhat / (std::sqrt(vhat) + cfg.epsilon);
    }
}

double batch_loss_and_grads(const CaeModel& model, std::span<const SignalPair> batch,
                            ModelGrads& grads) {
    if (batch.empty()) {
        throw ValidationError("batch_loss_and_grads: empty batch");
    }
    const auto& layers = model.layers();
    grads.layers.assign(layers.size(), LayerGrads{});
    for (std::size_t li = 0; li < layers.size(); ++li) {
        grads.layers[li].w.assign(layers[li].weights().size(), 0.0);
        grads.layers[li].b.assign(layers[li].biases().size(), 0.0);
    }

    // Per-sample gradients are computed at full scale and scaled by 1/batch
    // only when folded into the accumulator, in sample-index order. Besides
    // fixing the reduction order, this makes duplicating a sample an exact
    // no-op for the mean gradient.
    const double inv_batch = 1.0 / static_cast<double>(batch.size());
    double loss = 0.0;
    std::vector<LayerCache> caches(layers.size());
    std::vector<LayerGrads> sample(layers.size());
    for (const SignalPair& pair : batch) {
        Tensor1D cur = to_tensor(pair.noisy);
        for (std::size_t li = 0; li < layers.size(); ++li) {
            cur = layers[li].forward_cached(cur, caches[li]);
            check_finite(cur, li);
        }
        const Tensor1D target = to_tensor(pair.clean);
        loss += bce_loss(cur, target) * inv_batch;

        for (std::size_t li = 0; li < layers.size(); ++li) {
            sample[li].w.assign(layers[li].weights().size(), 0.0);
            sample[li].b.assign(layers[li].biases().size(), 0.0);
        }
        Tensor1D grad = bce_grad(cur, target);
        for (std::size_t li = layers.size(); li-- > 0;) {
            grad = layers[li].backward(caches[li], grad, sample[li]);
        }
        for (std::size_t li = 0; li < layers.size(); ++li) {
            for (std::size_t i = 0; i < sample[li].w.size(); ++i) {
                grads.layers[li].w[i] += sample[li].w[i] * inv_batch;
            }
            for (std::size_t i = 0; i < sample[li].b.size(); ++i) {
                grads.layers[li].b[i] += sample[li].b[i] * inv_batch;
            }
        }
    }
    return loss;
}

double mean_loss(const CaeModel& model, std::span<const SignalPair> pairs) {
    if (pairs.empty()) {
        throw ValidationError("mean_loss: no pairs");
    }
    double acc = 0.0;
    for (const SignalPair& pair : pairs) {
        const Tensor1D out = model.forward(to_tensor(pair.noisy));
        acc += bce_loss(out, to_tensor(pair.clean));
    }
    return acc / static_cast<double>(pairs.size());
}

TrainHistory train(CaeModel& model, const std::vector<SignalPair>& dataset,
                   const TrainConfig& cfg) {
    if (cfg.batch_size == 0) {
        throw ValidationError("train: batch_size must be >= 1");
    }
    if (dataset.size() < cfg.batch_size) {
        throw ValidationError("train: dataset smaller than one batch (" +
                              std::to_string(dataset.size()) + " < " +
                              std::to_string(cfg.batch_size) + ")");
    }
    if (!(cfg.holdout_fraction >= 0.0) || !(cfg.holdout_fraction < 1.0)) {
        throw ValidationError("train: holdout_fraction must lie in [0,1)");
    }
    validate_pairs(dataset, model.architecture().input_length);

    // All randomness (split, then one shuffle per epoch) flows from this one
    // generator in a fixed draw order.
    std::mt19937_64 eng(cfg.seed);
    std::vector<std::size_t> perm(dataset.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), eng);

    const auto holdout_count =
        static_cast<std::size_t>(std::floor(cfg.holdout_fraction * dataset.size()));
    std::vector<std::size_t> train_idx(perm.begin(), perm.end() - holdout_count);
    std::vector<std::size_t> holdout_idx(perm.end() - holdout_count, perm.end());
    if (train_idx.size() < cfg.batch_size) {
        throw ValidationError("train: training split smaller than one batch");
    }

    std::vector<SignalPair> holdout;
    holdout.reserve(holdout_idx.size());
    for (auto i : holdout_idx) holdout.push_back(dataset[i]);

    TrainHistory history;
    history.holdout_indices = holdout_idx;

    auto& layers = model.layers();
    std::vector<AdamState> w_state(layers.size());
    std::vector<AdamState> b_state(layers.size());

    ModelGrads grads;
    std::vector<SignalPair> batch;
    for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
        std::shuffle(train_idx.begin(), train_idx.end(), eng);
        double epoch_loss = 0.0;
        std::size_t seen = 0;
        for (std::size_t start = 0; start < train_idx.size(); start += cfg.batch_size) {
            const std::size_t end = std::min(start + cfg.batch_size, train_idx.size());
            batch.clear();
            for (std::size_t i = start; i < end; ++i) batch.push_back(dataset[train_idx[i]]);

            const double loss = batch_loss_and_grads(model, batch, grads);
            if (!std::isfinite(loss)) {
                throw NumericalError("train: non-finite loss at epoch " + std::to_string(epoch) +
                                     ", batch " + std::to_string(start / cfg.batch_size));
            }
            epoch_loss += loss * static_cast<double>(batch.size());
            seen += batch.size();

            for (std::size_t li = 0; li < layers.size(); ++li) {
                adam_step(layers[li].weights(), grads.layers[li].w, w_state[li], cfg.adam);
                adam_step(layers[li].biases(), grads.layers[li].b, b_state[li], cfg.adam);
            }
            if (cfg.max_norm) {
                layers.front().clamp_filter_norms(*cfg.max_norm);
            }
        }
        history.train_loss.push_back(epoch_loss / static_cast<double>(seen));
        history.holdout_loss.push_back(holdout.empty() ? 0.0 : mean_loss(model, holdout));
    }
    model.set_epochs_seen(model.epochs_seen() + cfg.epochs);
    return history;
}

}  // namespace vlcn::cae
