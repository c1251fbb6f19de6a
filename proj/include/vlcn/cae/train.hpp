#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "vlcn/cae/loss.hpp"
#include "vlcn/cae/model.hpp"
#include "vlcn/dataset.hpp"

namespace vlcn::cae {

struct AdamConfig {
    double lr = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

/// First/second moment accumulators for one parameter vector.
struct AdamState {
    std::vector<double> m;
    std::vector<double> v;
    std::uint64_t t = 0;
};

/// One bias-corrected Adam update. state vectors are sized lazily on first use.
void adam_step(std::span<double> params, std::span<const double> grads, AdamState& state,
               const AdamConfig& cfg);

struct TrainConfig {
    std::size_t epochs = 100;
    std::size_t batch_size = 50;
    AdamConfig adam;
    std::uint64_t seed = 0;
    /// Max-norm constraint on the first encoder layer's filters; nullopt
    /// disables it.
    std::optional<double> max_norm = 4.0;
    double holdout_fraction = 0.30;
};

struct TrainHistory {
    std::vector<double> train_loss;    ///< mean BCE per epoch over training split
    std::vector<double> holdout_loss;  ///< mean BCE per epoch over held-out split
    std::vector<std::size_t> holdout_indices;  ///< dataset rows held out of training
};

/// Per-parameter-vector gradients for the whole model, in layer order.
struct ModelGrads {
    std::vector<LayerGrads> layers;
};

/// Mean BCE over the batch plus its exact gradient w.r.t. every parameter.
/// Gradients are accumulated in sample-index order, so results are
/// bit-deterministic. Throws NumericalError (naming the layer) if a forward
/// pass produces non-finite activations.
double batch_loss_and_grads(const CaeModel& model, std::span<const SignalPair> batch,
                            ModelGrads& grads);

/// Mean BCE over a set of pairs (no gradients).
[[nodiscard]] double mean_loss(const CaeModel& model, std::span<const SignalPair> pairs);

/// Mini-batch Adam training loop. The dataset is split 70/30 (train/holdout)
/// by a permutation drawn from cfg.seed; each epoch re-shuffles the training
/// split from the same generator, so identical seeds give bit-identical loss
/// histories and models. Signals must already be normalized to [0,1].
TrainHistory train(CaeModel& model, const std::vector<SignalPair>& dataset,
                   const TrainConfig& cfg);

}  // namespace vlcn::cae
