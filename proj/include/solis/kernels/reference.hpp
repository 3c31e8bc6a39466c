#pragma once

#include <vector>

#include "solis/kernels/conv2d.hpp"
#include "solis/kernels/tensor.hpp"

// Textbook single-threaded implementations of the hot kernels. They exist as
// an independent route for the parity tests and as the baseline in the
// kernel benchmark; nothing in the pipeline calls them.
namespace solis::kernels::reference {

template <typename T>
void conv2d_forward(const Tensor<T>& in, const Tensor<T>& weight, const std::vector<T>& bias,
                    const ConvGeom& g, Tensor<T>& out);

template <typename T>
void conv2d_backward_input(const Tensor<T>& dout, const Tensor<T>& weight, const ConvGeom& g,
                           int in_h, int in_w, Tensor<T>& din);

template <typename T>
void conv2d_backward_params(const Tensor<T>& dout, const Tensor<T>& in, const ConvGeom& g,
                            int kh, int kw, Tensor<T>& dweight, std::vector<T>& dbias);

template <typename T>
void linear_forward(const Tensor<T>& in, const Tensor<T>& weight, const std::vector<T>& bias,
                    Tensor<T>& out);

template <typename T>
void global_avgpool_forward(const Tensor<T>& in, Tensor<T>& out);

}  // namespace solis::kernels::reference
