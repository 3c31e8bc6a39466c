#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace solis::kernels {

// Dense NCHW tensor. 2-D data (linear layers) uses n x c with h = w = 1.
template <typename T>
struct Tensor {
    int n = 0, c = 0, h = 0, w = 0;
    std::vector<T> v;

    Tensor() = default;
    Tensor(int n_, int c_, int h_, int w_)
        : n(n_), c(c_), h(h_), w(w_),
          v(static_cast<std::size_t>(n_) * c_ * h_ * w_, T(0)) {}

    static Tensor zeros(int n_, int c_, int h_, int w_) { return Tensor(n_, c_, h_, w_); }

    std::size_t size() const { return v.size(); }

    std::size_t idx(int in, int ic, int iy, int ix) const {
        return ((static_cast<std::size_t>(in) * c + ic) * h + iy) * w + ix;
    }

    T& at(int in, int ic, int iy, int ix) { return v[idx(in, ic, iy, ix)]; }
    T at(int in, int ic, int iy, int ix) const { return v[idx(in, ic, iy, ix)]; }

    T* plane(int in, int ic) { return v.data() + (static_cast<std::size_t>(in) * c + ic) * h * w; }
    const T* plane(int in, int ic) const {
        return v.data() + (static_cast<std::size_t>(in) * c + ic) * h * w;
    }

    void fill(T x) { std::fill(v.begin(), v.end(), x); }

    std::array<int, 4> shape() const { return {n, c, h, w}; }
    bool same_shape(const Tensor& o) const {
        return n == o.n && c == o.c && h == o.h && w == o.w;
    }
};

using TensorF = Tensor<float>;
using TensorD = Tensor<double>;

}  // namespace solis::kernels
