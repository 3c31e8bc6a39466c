#pragma once

#include <vector>

#include "solis/kernels/tensor.hpp"

namespace solis::kernels {

// Affine map on flattened features. in: [n, in_f], weight: [out_f, in_f],
// out: [n, out_f] (tensors with h = w = 1).
template <typename T>
void linear_forward(const Tensor<T>& in, const Tensor<T>& weight, const std::vector<T>& bias,
                    Tensor<T>& out);

template <typename T>
void linear_backward_input(const Tensor<T>& dout, const Tensor<T>& weight, Tensor<T>& din);

template <typename T>
void linear_backward_params(const Tensor<T>& dout, const Tensor<T>& in, Tensor<T>& dweight,
                            std::vector<T>& dbias);

}  // namespace solis::kernels
