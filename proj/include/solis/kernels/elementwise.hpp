#pragma once

#include "solis/kernels/tensor.hpp"

namespace solis::kernels {

template <typename T>
void relu_forward(const Tensor<T>& in, Tensor<T>& out);

// din = dout where the forward input was positive, else zero.
template <typename T>
void relu_backward(const Tensor<T>& dout, const Tensor<T>& forward_in, Tensor<T>& din);

template <typename T>
void add(const Tensor<T>& a, const Tensor<T>& b, Tensor<T>& out);

template <typename T>
void scale_inplace(Tensor<T>& t, T s);

}  // namespace solis::kernels
