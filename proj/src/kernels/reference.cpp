#include "solis/kernels/reference.hpp"

namespace solis::kernels::reference {

template <typename T>
void conv2d_forward(const Tensor<T>& in, const Tensor<T>& weight, const std::vector<T>& bias,
                    const ConvGeom& g, Tensor<T>& out) {
    const int ho = conv_out_h(in.h, weight.h, g), wo = conv_out_w(in.w, weight.w, g);
    out = Tensor<T>(in.n, weight.n, ho, wo);
    for (int n = 0; n < in.n; ++n)
        for (int co = 0; co < weight.n; ++co)
            for (int oy = 0; oy < ho; ++oy)
                for (int ox = 0; ox < wo; ++ox) {
                    T acc = bias[co];
                    for (int c = 0; c < in.c; ++c)
                        for (int ky = 0; ky < weight.h; ++ky)
                            for (int kx = 0; kx < weight.w; ++kx) {
                                const int iy = oy * g.stride + ky - g.pad_y;
                                const int ix = ox * g.stride + kx - g.pad_x;
                                if (iy < 0 || iy >= in.h || ix < 0 || ix >= in.w) continue;
                                acc += weight.at(co, c, ky, kx) * in.at(n, c, iy, ix);
                            }
                    out.at(n, co, oy, ox) = acc;
                }
}

template <typename T>
void conv2d_backward_input(const Tensor<T>& dout, const Tensor<T>& weight, const ConvGeom& g,
                           int in_h, int in_w, Tensor<T>& din) {
    din = Tensor<T>(dout.n, weight.c, in_h, in_w);
    for (int n = 0; n < dout.n; ++n)
        for (int co = 0; co < dout.c; ++co)
            for (int oy = 0; oy < dout.h; ++oy)
                for (int ox = 0; ox < dout.w; ++ox) {
                    const T g_out = dout.at(n, co, oy, ox);
                    for (int c = 0; c < weight.c; ++c)
                        for (int ky = 0; ky < weight.h; ++ky)
                            for (int kx = 0; kx < weight.w; ++kx) {
                                const int iy = oy * g.stride + ky - g.pad_y;
                                const int ix = ox * g.stride + kx - g.pad_x;
                                if (iy < 0 || iy >= in_h || ix < 0 || ix >= in_w) continue;
                                din.at(n, c, iy, ix) += g_out * weight.at(co, c, ky, kx);
                            }
                }
}

template <typename T>
void conv2d_backward_params(const Tensor<T>& dout, const Tensor<T>& in, const ConvGeom& g,
                            int kh, int kw, Tensor<T>& dweight, std::vector<T>& dbias) {
    dweight = Tensor<T>(dout.c, in.c, kh, kw);
    dbias.assign(dout.c, T(0));
    for (int n = 0; n < dout.n; ++n)
        for (int co = 0; co < dout.c; ++co)
            for (int oy = 0; oy < dout.h; ++oy)
                for (int ox = 0; ox < dout.w; ++ox) {
                    const T g_out = dout.at(n, co, oy, ox);
                    dbias[co] += g_out;
                    for (int c = 0; c < in.c; ++c)
                        for (int ky = 0; ky < kh; ++ky)
                            for (int kx = 0; kx < kw; ++kx) {
                                const int iy = oy * g.stride + ky - g.pad_y;
                                const int ix = ox * g.stride + kx - g.pad_x;
                                if (iy < 0 || iy >= in.h || ix < 0 || ix >= in.w) continue;
                                dweight.at(co, c, ky, kx) += g_out * in.at(n, c, iy, ix);
                            }
                }
}

template <typename T>
void linear_forward(const Tensor<T>& in, const Tensor<T>& weight, const std::vector<T>& bias,
                    Tensor<T>& out) {
    out = Tensor<T>(in.n, weight.n, 1, 1);
    for (int i = 0; i < in.n; ++i)
        for (int j = 0; j < weight.n; ++j) {
            T acc = bias[j];
            for (int k = 0; k < in.c; ++k)
                acc += in.v[static_cast<std::size_t>(i) * in.c + k] *
                       weight.v[static_cast<std::size_t>(j) * in.c + k];
            out.v[static_cast<std::size_t>(i) * weight.n + j] = acc;
        }
}

template <typename T>
void global_avgpool_forward(const Tensor<T>& in, Tensor<T>& out) {
    out = Tensor<T>(in.n, in.c, 1, 1);
    for (int n = 0; n < in.n; ++n)
        for (int c = 0; c < in.c; ++c) {
            T s = T(0);
            const T* pl = in.plane(n, c);
            for (int i = 0; i < in.h * in.w; ++i) s += pl[i];
            out.at(n, c, 0, 0) = s / static_cast<T>(in.h * in.w);
        }
}

#define SOLIS_INSTANTIATE_REF(T)                                                            \
    template void conv2d_forward<T>(const Tensor<T>&, const Tensor<T>&,                     \
                                    const std::vector<T>&, const ConvGeom&, Tensor<T>&);    \
    template void conv2d_backward_input<T>(const Tensor<T>&, const Tensor<T>&,              \
                                           const ConvGeom&, int, int, Tensor<T>&);          \
    template void conv2d_backward_params<T>(const Tensor<T>&, const Tensor<T>&,             \
                                            const ConvGeom&, int, int, Tensor<T>&,          \
                                            std::vector<T>&);                               \
    template void linear_forward<T>(const Tensor<T>&, const Tensor<T>&,                     \
                                    const std::vector<T>&, Tensor<T>&);                     \
    template void global_avgpool_forward<T>(const Tensor<T>&, Tensor<T>&);

SOLIS_INSTANTIATE_REF(float)
SOLIS_INSTANTIATE_REF(double)
#undef SOLIS_INSTANTIATE_REF

}  // namespace solis::kernels::reference
