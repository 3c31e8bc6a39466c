#include "solis/kernels/conv2d.hpp"

#include <algorithm>
#include <cstring>

#include "solis/kernels/parallel.hpp"
#include "solis/util/errors.hpp"

namespace solis::kernels {

namespace {

// Zero-padded copy of one input plane; removes bounds checks from the hot
// loops so the per-row accumulators vectorize.
template <typename T>
void pad_plane(const T* src, int h, int w, int pad_y, int pad_x, T* dst, int wp) {
    std::memset(dst, 0, sizeof(T) * static_cast<std::size_t>(h + 2 * pad_y) * wp);
    for (int y = 0; y < h; ++y)
        std::memcpy(dst + static_cast<std::size_t>(y + pad_y) * wp + pad_x,
                    src + static_cast<std::size_t>(y) * w, sizeof(T) * w);
}

}  // namespace

template <typename T>
void conv2d_forward(const Tensor<T>& in, const Tensor<T>& weight, const std::vector<T>& bias,
                    const ConvGeom& g, Tensor<T>& out) {
    const int n = in.n, ci_n = in.c, h = in.h, w = in.w;
    const int co_n = weight.n, kh = weight.h, kw = weight.w;
    if (weight.c != ci_n) throw Error("conv2d_forward: channel mismatch");
    const int ho = conv_out_h(h, kh, g), wo = conv_out_w(w, kw, g);
    out = Tensor<T>(n, co_n, ho, wo);

    const int hp = h + 2 * g.pad_y, wp = w + 2 * g.pad_x;
    Tensor<T> padded(n, ci_n, hp, wp);
    const bool par = parallel_enabled();

#pragma omp parallel for collapse(2) if (par)
    for (int in_i = 0; in_i < n; ++in_i)
        for (int c = 0; c < ci_n; ++c)
            pad_plane(in.plane(in_i, c), h, w, g.pad_y, g.pad_x, padded.plane(in_i, c), wp);

#pragma omp parallel for collapse(2) if (par)
    for (int in_i = 0; in_i < n; ++in_i) {
        for (int co = 0; co < co_n; ++co) {
            std::vector<T> acc(wo);
            for (int oy = 0; oy < ho; ++oy) {
                for (int ox = 0; ox < wo; ++ox) acc[ox] = bias[co];
                for (int c = 0; c < ci_n; ++c) {
                    const T* pl = padded.plane(in_i, c);
                    for (int ky = 0; ky < kh; ++ky) {
                        const T* row = pl + static_cast<std::size_t>(oy * g.stride + ky) * wp;
                        const T* wrow = weight.plane(co, c) + static_cast<std::size_t>(ky) * kw;
                        for (int kx = 0; kx < kw; ++kx) {
                            const T wv = wrow[kx];
                            const T* r = row + kx;
                            if (g.stride == 1) {
                                for (int ox = 0; ox < wo; ++ox) acc[ox] += wv * r[ox];
                            } else {
                                for (int ox = 0; ox < wo; ++ox) acc[ox] += wv * r[ox * g.stride];
                            }
                        }
                    }
                }
                std::memcpy(out.plane(in_i, co) + static_cast<std::size_t>(oy) * wo, acc.data(),
                            sizeof(T) * wo);
            }
        }
    }
}

template <typename T>
void conv2d_backward_input(const Tensor<T>& dout, const Tensor<T>& weight, const ConvGeom& g,
                           int in_h, int in_w, Tensor<T>& din) {
    const int n = dout.n, co_n = dout.c, ho = dout.h, wo = dout.w;
    const int ci_n = weight.c, kh = weight.h, kw = weight.w;
    din = Tensor<T>(n, ci_n, in_h, in_w);
    const bool par = parallel_enabled();

#pragma omp parallel for collapse(2) if (par)
    for (int in_i = 0; in_i < n; ++in_i) {
        for (int c = 0; c < ci_n; ++c) {
            std::vector<T> acc(in_w);
            T* dplane = din.plane(in_i, c);
            for (int iy = 0; iy < in_h; ++iy) {
                for (int ix = 0; ix < in_w; ++ix) acc[ix] = T(0);
                for (int co = 0; co < co_n; ++co) {
                    const T* dop = dout.plane(in_i, co);
                    const T* wpl = weight.plane(co, c);
                    for (int ky = 0; ky < kh; ++ky) {
                        const int ty = iy + g.pad_y - ky;
                        if (ty < 0 || ty % g.stride != 0) continue;
                        const int oy = ty / g.stride;
                        if (oy >= ho) continue;
                        const T* drow = dop + static_cast<std::size_t>(oy) * wo;
                        const T* wrow = wpl + static_cast<std::size_t>(ky) * kw;
                        for (int kx = 0; kx < kw; ++kx) {
                            const T wv = wrow[kx];
                            if (g.stride == 1) {
                                // ox = ix + pad_x - kx must lie in [0, wo)
                                const int ix_lo = std::max(0, kx - g.pad_x);
                                const int ix_hi = std::min(in_w, wo - g.pad_x + kx);
                                const T* dr = drow + g.pad_x - kx;
                                for (int ix = ix_lo; ix < ix_hi; ++ix) acc[ix] += wv * dr[ix];
                            } else {
                                for (int ix = 0; ix < in_w; ++ix) {
                                    const int tx = ix + g.pad_x - kx;
                                    if (tx < 0 || tx % g.stride != 0) continue;
                                    const int ox = tx / g.stride;
                                    if (ox >= wo) continue;
                                    acc[ix] += wv * drow[ox];
                                }
                            }
                        }
                    }
                }
                std::memcpy(dplane + static_cast<std::size_t>(iy) * in_w, acc.data(),
                            sizeof(T) * in_w);
            }
        }
    }
}

template <typename T>
void conv2d_backward_params(const Tensor<T>& dout, const Tensor<T>& in, const ConvGeom& g,
                            int kh, int kw, Tensor<T>& dweight, std::vector<T>& dbias) {
    const int n = in.n, ci_n = in.c, h = in.h, w = in.w;
    const int co_n = dout.c, ho = dout.h, wo = dout.w;
    dweight = Tensor<T>(co_n, ci_n, kh, kw);
    dbias.assign(co_n, T(0));

    const int hp = h + 2 * g.pad_y, wp = w + 2 * g.pad_x;
    Tensor<T> padded(n, ci_n, hp, wp);
    const bool par = parallel_enabled();

#pragma omp parallel for collapse(2) if (par)
    for (int in_i = 0; in_i < n; ++in_i)
        for (int c = 0; c < ci_n; ++c)
            pad_plane(in.plane(in_i, c), h, w, g.pad_y, g.pad_x, padded.plane(in_i, c), wp);

#pragma omp parallel for if (par)
    for (int co = 0; co < co_n; ++co) {
        T bsum = T(0);
        for (int in_i = 0; in_i < n; ++in_i) {
            const T* dop = dout.plane(in_i, co);
            for (int oy = 0; oy < ho; ++oy) {
                const T* drow = dop + static_cast<std::size_t>(oy) * wo;
                T rs0 = T(0), rs1 = T(0);
                int ox = 0;
                for (; ox + 2 <= wo; ox += 2) {
                    rs0 += drow[ox];
                    rs1 += drow[ox + 1];
                }
                if (ox < wo) rs0 += drow[ox];
                bsum += rs0 + rs1;
            }
        }
        dbias[co] = bsum;

        for (int c = 0; c < ci_n; ++c) {
            for (int ky = 0; ky < kh; ++ky) {
                for (int kx = 0; kx < kw; ++kx) {
                    T acc = T(0);
                    for (int in_i = 0; in_i < n; ++in_i) {
                        const T* dop = dout.plane(in_i, co);
                        const T* pl = padded.plane(in_i, c);
                        for (int oy = 0; oy < ho; ++oy) {
                            const T* drow = dop + static_cast<std::size_t>(oy) * wo;
                            const T* irow =
                                pl + static_cast<std::size_t>(oy * g.stride + ky) * wp + kx;
                            if (g.stride == 1) {
                                acc += dot_binned(drow, irow, wo);
                            } else {
                                T s = T(0);
                                for (int x = 0; x < wo; ++x) s += drow[x] * irow[x * g.stride];
                                acc += s;
                            }
                        }
                    }
                    dweight.at(co, c, ky, kx) = acc;
                }
            }
        }
    }
}

template void conv2d_forward<float>(const Tensor<float>&, const Tensor<float>&,
                                    const std::vector<float>&, const ConvGeom&, Tensor<float>&);
template void conv2d_forward<double>(const Tensor<double>&, const Tensor<double>&,
                                     const std::vector<double>&, const ConvGeom&, Tensor<double>&);
template void conv2d_backward_input<float>(const Tensor<float>&, const Tensor<float>&,
                                           const ConvGeom&, int, int, Tensor<float>&);
template void conv2d_backward_input<double>(const Tensor<double>&, const Tensor<double>&,
                                            const ConvGeom&, int, int, Tensor<double>&);
template void conv2d_backward_params<float>(const Tensor<float>&, const Tensor<float>&,
                                            const ConvGeom&, int, int, Tensor<float>&,
                                            std::vector<float>&);
template void conv2d_backward_params<double>(const Tensor<double>&, const Tensor<double>&,
                                             const ConvGeom&, int, int, Tensor<double>&,
                                             std::vector<double>&);

}  // namespace solis::kernels
