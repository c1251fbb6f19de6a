#pragma once

#include <span>

#include "vlcn/cae/tensor.hpp"

namespace vlcn::cae {

/// Clamp bound keeping log() finite in the cross-entropy; documented so loss
/// values are reproducible.
inline constexpr double kBceClamp = 1e-7;

/// Mean binary cross-entropy, -[t ln p + (1-t) ln(1-p)] averaged over all
/// elements, with predictions clamped to [kBceClamp, 1-kBceClamp].
[[nodiscard]] double bce_loss(const Tensor1D& pred, const Tensor1D& target);

/// Gradient of bce_loss w.r.t. pred (zero where the clamp is active).
[[nodiscard]] Tensor1D bce_grad(const Tensor1D& pred, const Tensor1D& target);

/// sqrt(mean squared difference); the denoising quality metric.
[[nodiscard]] double rmse(std::span<const double> a, std::span<const double> b);

}  // namespace vlcn::cae
