#pragma once

#include <vector>

#include "solis/kernels/tensor.hpp"

namespace solis::kernels {

struct ConvGeom {
    int stride = 1;
    int pad_y = 0;
    int pad_x = 0;

    ConvGeom() = default;
    ConvGeom(int stride_, int pad_) : stride(stride_), pad_y(pad_), pad_x(pad_) {}
    ConvGeom(int stride_, int pad_y_, int pad_x_)
        : stride(stride_), pad_y(pad_y_), pad_x(pad_x_) {}
};

inline int conv_out_h(int in_h, int kh, const ConvGeom& g) {
    return (in_h + 2 * g.pad_y - kh) / g.stride + 1;
}
inline int conv_out_w(int in_w, int kw, const ConvGeom& g) {
    return (in_w + 2 * g.pad_x - kw) / g.stride + 1;
}

// weight layout: [out_channels, in_channels, kh, kw]; out is resized.
template <typename T>
void conv2d_forward(const Tensor<T>& in, const Tensor<T>& weight, const std::vector<T>& bias,
                    const ConvGeom& g, Tensor<T>& out);

// Gradient w.r.t. the input, gather form (race-free; each input element is
// written by exactly one iteration).
template <typename T>
void conv2d_backward_input(const Tensor<T>& dout, const Tensor<T>& weight, const ConvGeom& g,
                           int in_h, int in_w, Tensor<T>& din);

// Gradients w.r.t. weight and bias; accumulation order per weight element is
// fixed regardless of thread count.
template <typename T>
void conv2d_backward_params(const Tensor<T>& dout, const Tensor<T>& in, const ConvGeom& g,
                            int kh, int kw, Tensor<T>& dweight, std::vector<T>& dbias);

// Dot product with four fixed accumulation bins. The binned order is part of
// the kernel contract: serial and parallel callers produce identical bits.
template <typename T>
inline T dot_binned(const T* a, const T* b, int len) {
    T s0 = T(0), s1 = T(0), s2 = T(0), s3 = T(0);
    int i = 0;
    for (; i + 4 <= len; i += 4) {
        s0 += a[i] * b[i];
        s1 += a[i + 1] * b[i + 1];
        s2 += a[i + 2] * b[i + 2];
        s3 += a[i + 3] * b[i + 3];
    }
    T tail = T(0);
    for (; i < len; ++i) tail += a[i] * b[i];
    return ((s0 + s1) + (s2 + s3)) + tail;
}

}  // namespace solis::kernels
