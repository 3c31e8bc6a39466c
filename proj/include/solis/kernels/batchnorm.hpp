#pragma once

#include <vector>

#include "solis/kernels/tensor.hpp"

namespace solis::kernels {

// BatchNorm over (n, h, w) per channel. Training mode normalizes with
// biased batch variance and updates running stats with the unbiased one
// (running = (1 - momentum) * running + momentum * batch_stat).
template <typename T>
void batchnorm_forward_train(const Tensor<T>& in, const std::vector<T>& gamma,
                             const std::vector<T>& beta, std::vector<T>& running_mean,
                             std::vector<T>& running_var, T momentum, T eps, Tensor<T>& out,
                             std::vector<T>& save_mean, std::vector<T>& save_invstd);

template <typename T>
void batchnorm_forward_eval(const Tensor<T>& in, const std::vector<T>& gamma,
                            const std::vector<T>& beta, const std::vector<T>& running_mean,
                            const std::vector<T>& running_var, T eps, Tensor<T>& out);

template <typename T>
void batchnorm_backward(const Tensor<T>& dout, const Tensor<T>& in,
                        const std::vector<T>& gamma, const std::vector<T>& save_mean,
                        const std::vector<T>& save_invstd, Tensor<T>& din,
                        std::vector<T>& dgamma, std::vector<T>& dbeta);

}  // namespace solis::kernels
