#include "solis/kernels/pool.hpp"

#include <algorithm>
#include <limits>

#include "solis/kernels/parallel.hpp"

namespace solis::kernels {

template <typename T>
void maxpool2d_forward(const Tensor<T>& in, int k, int stride, int pad, Tensor<T>& out,
                       std::vector<int>& argmax) {
    const int n = in.n, cn = in.c, h = in.h, w = in.w;
    const int ho = (h + 2 * pad - k) / stride + 1, wo = (w + 2 * pad - k) / stride + 1;
    out = Tensor<T>(n, cn, ho, wo);
    argmax.assign(out.size(), 0);
    const bool par = parallel_enabled();

#pragma omp parallel for collapse(2) if (par)
    for (int in_i = 0; in_i < n; ++in_i) {
        for (int c = 0; c < cn; ++c) {
            const T* pl = in.plane(in_i, c);
            T* op = out.plane(in_i, c);
            int* ap = argmax.data() + (static_cast<std::size_t>(in_i) * cn + c) * ho * wo;
            for (int oy = 0; oy < ho; ++oy) {
                for (int ox = 0; ox < wo; ++ox) {
                    T best = -std::numeric_limits<T>::infinity();
                    int best_idx = 0;
                    for (int ky = 0; ky < k; ++ky) {
                        const int iy = oy * stride + ky - pad;
                        if (iy < 0 || iy >= h) continue;
                        const T* row = pl + static_cast<std::size_t>(iy) * w;
                        for (int kx = 0; kx < k; ++kx) {
                            const int ix = ox * stride + kx - pad;
                            if (ix < 0 || ix >= w) continue;
                            if (row[ix] > best) {
                                best = row[ix];
                                best_idx = iy * w + ix;
                            }
                        }
                    }
                    op[oy * wo + ox] = best;
                    ap[oy * wo + ox] = best_idx;
                }
            }
        }
    }
}

template <typename T>
void maxpool2d_backward(const Tensor<T>& dout, const std::vector<int>& argmax, int in_h, int in_w,
                        Tensor<T>& din) {
    const int n = dout.n, cn = dout.c, ho = dout.h, wo = dout.w;
    din = Tensor<T>(n, cn, in_h, in_w);
    const bool par = parallel_enabled();

    // Scatter is plane-local, so parallelizing over planes is race-free.
#pragma omp parallel for collapse(2) if (par)
    for (int in_i = 0; in_i < n; ++in_i) {
        for (int c = 0; c < cn; ++c) {
            const T* dop = dout.plane(in_i, c);
            const int* ap = argmax.data() + (static_cast<std::size_t>(in_i) * cn + c) * ho * wo;
            T* dp = din.plane(in_i, c);
            for (int i = 0; i < ho * wo; ++i) dp[ap[i]] += dop[i];
        }
    }
}

template <typename T>
void avgpool2d_forward(const Tensor<T>& in, int k, int stride, int pad, Tensor<T>& out) {
    const int n = in.n, cn = in.c, h = in.h, w = in.w;
    const int ho = (h + 2 * pad - k) / stride + 1, wo = (w + 2 * pad - k) / stride + 1;
    out = Tensor<T>(n, cn, ho, wo);
    const T inv = T(1) / static_cast<T>(k * k);
    const bool par = parallel_enabled();

#pragma omp parallel for collapse(2) if (par)
    for (int in_i = 0; in_i < n; ++in_i) {
        for (int c = 0; c < cn; ++c) {
            const T* pl = in.plane(in_i, c);
            T* op = out.plane(in_i, c);
            for (int oy = 0; oy < ho; ++oy) {
                for (int ox = 0; ox < wo; ++ox) {
                    T s = T(0);
                    for (int ky = 0; ky < k; ++ky) {
                        const int iy = oy * stride + ky - pad;
                        if (iy < 0 || iy >= h) continue;
                        const T* row = pl + static_cast<std::size_t>(iy) * w;
                        for (int kx = 0; kx < k; ++kx) {
                            const int ix = ox * stride + kx - pad;
                            if (ix < 0 || ix >= w) continue;
                            s += row[ix];
                        }
                    }
                    op[oy * wo + ox] = s * inv;
                }
            }
        }
    }
}

template <typename T>
void avgpool2d_backward(const Tensor<T>& dout, int k, int stride, int pad, int in_h, int in_w,
                        Tensor<T>& din) {
    const int n = dout.n, cn = dout.c, ho = dout.h, wo = dout.w;
    din = Tensor<T>(n, cn, in_h, in_w);
    const T inv = T(1) / static_cast<T>(k * k);
    const bool par = parallel_enabled();

    // Gather form: each input element sums the windows that cover it.
#pragma omp parallel for collapse(2) if (par)
    for (int in_i = 0; in_i < n; ++in_i) {
        for (int c = 0; c < cn; ++c) {
            const T* dop = dout.plane(in_i, c);
            T* dp = din.plane(in_i, c);
            for (int iy = 0; iy < in_h; ++iy) {
                const int oy_lo = std::max(0, (iy + pad - k + stride) / stride);
                const int oy_hi = std::min(ho - 1, (iy + pad) / stride);
                for (int ix = 0; ix < in_w; ++ix) {
                    const int ox_lo = std::max(0, (ix + pad - k + stride) / stride);
                    const int ox_hi = std::min(wo - 1, (ix + pad) / stride);
                    T s = T(0);
                    for (int oy = oy_lo; oy <= oy_hi; ++oy)
                        for (int ox = ox_lo; ox <= ox_hi; ++ox)
                            s += dop[oy * wo + ox];
                    dp[static_cast<std::size_t>(iy) * in_w + ix] = s * inv;
                }
            }
        }
    }
}

template <typename T>
void global_avgpool_forward(const Tensor<T>& in, Tensor<T>& out) {
    const int n = in.n, cn = in.c;
    const int plane = in.h * in.w;
    out = Tensor<T>(n, cn, 1, 1);
    const T inv = T(1) / static_cast<T>(plane);
    const bool par = parallel_enabled();

#pragma omp parallel for collapse(2) if (par)
    for (int in_i = 0; in_i < n; ++in_i) {
        for (int c = 0; c < cn; ++c) {
            const T* pl = in.plane(in_i, c);
            T s0 = T(0), s1 = T(0);
            int i = 0;
            for (; i + 2 <= plane; i += 2) {
                s0 += pl[i];
                s1 += pl[i + 1];
            }
            if (i < plane) s0 += pl[i];
            out.at(in_i, c, 0, 0) = (s0 + s1) * inv;
        }
    }
}

template <typename T>
void global_avgpool_backward(const Tensor<T>& dout, int in_h, int in_w, Tensor<T>& din) {
    const int n = dout.n, cn = dout.c;
    din = Tensor<T>(n, cn, in_h, in_w);
    const T inv = T(1) / static_cast<T>(in_h * in_w);
    const bool par = parallel_enabled();

#pragma omp parallel for collapse(2) if (par)
    for (int in_i = 0; in_i < n; ++in_i) {
        for (int c = 0; c < cn; ++c) {
            const T g = dout.at(in_i, c, 0, 0) * inv;
            T* dp = din.plane(in_i, c);
            for (int i = 0; i < in_h * in_w; ++i) dp[i] = g;
        }
    }
}

#define SOLIS_INSTANTIATE_POOL(T)                                                              \
    template void maxpool2d_forward<T>(const Tensor<T>&, int, int, int, Tensor<T>&,            \
                                       std::vector<int>&);                                     \
    template void maxpool2d_backward<T>(const Tensor<T>&, const std::vector<int>&, int, int,   \
                                        Tensor<T>&);                                           \
    template void avgpool2d_forward<T>(const Tensor<T>&, int, int, int, Tensor<T>&);           \
    template void avgpool2d_backward<T>(const Tensor<T>&, int, int, int, int, int, Tensor<T>&); \
    template void global_avgpool_forward<T>(const Tensor<T>&, Tensor<T>&);                     \
    template void global_avgpool_backward<T>(const Tensor<T>&, int, int, Tensor<T>&);

SOLIS_INSTANTIATE_POOL(float)
SOLIS_INSTANTIATE_POOL(double)
#undef SOLIS_INSTANTIATE_POOL

}  // namespace solis::kernels
