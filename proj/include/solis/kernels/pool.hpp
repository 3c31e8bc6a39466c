#pragma once

#include <vector>

#include "solis/kernels/tensor.hpp"

namespace solis::kernels {

// Max pooling with implicit -inf padding; argmax stores the plane-local flat
// index of the winning input element (first in row-major scan on ties) for
// the backward pass.
template <typename T>
void maxpool2d_forward(const Tensor<T>& in, int k, int stride, int pad, Tensor<T>& out,
                       std::vector<int>& argmax);

template <typename T>
void maxpool2d_backward(const Tensor<T>& dout, const std::vector<int>& argmax, int in_h, int in_w,
                        Tensor<T>& din);

// Average pooling with zero padding; divisor is k*k regardless of padding.
template <typename T>
void avgpool2d_forward(const Tensor<T>& in, int k, int stride, int pad, Tensor<T>& out);

template <typename T>
void avgpool2d_backward(const Tensor<T>& dout, int k, int stride, int pad, int in_h, int in_w,
                        Tensor<T>& din);

// Global average pool: [n,c,h,w] -> [n,c,1,1].
template <typename T>
void global_avgpool_forward(const Tensor<T>& in, Tensor<T>& out);

template <typename T>
void global_avgpool_backward(const Tensor<T>& dout, int in_h, int in_w, Tensor<T>& din);

}  // namespace solis::kernels
