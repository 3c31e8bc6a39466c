#include "solis/kernels/linear.hpp"

#include "solis/kernels/conv2d.hpp"
#include "solis/kernels/parallel.hpp"
#include "solis/util/errors.hpp"

namespace solis::kernels {

template <typename T>
void linear_forward(const Tensor<T>& in, const Tensor<T>& weight, const std::vector<T>& bias,
                    Tensor<T>& out) {
    const int n = in.n, in_f = in.c, out_f = weight.n;
    if (weight.c != in_f) throw Error("linear_forward: feature size mismatch");
    out = Tensor<T>(n, out_f, 1, 1);
    const bool par = parallel_enabled();

#pragma omp parallel for collapse(2) if (par)
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < out_f; ++j) {
            const T* x = in.v.data() + static_cast<std::size_t>(i) * in_f;
            const T* wrow = weight.v.data() + static_cast<std::size_t>(j) * in_f;
            out.v[static_cast<std::size_t>(i) * out_f + j] = bias[j] + dot_binned(x, wrow, in_f);
        }
    }
}

template <typename T>
void linear_backward_input(const Tensor<T>& dout, const Tensor<T>& weight, Tensor<T>& din) {
    const int n = dout.n, out_f = dout.c, in_f = weight.c;
    din = Tensor<T>(n, in_f, 1, 1);
    const bool par = parallel_enabled();

#pragma omp parallel for if (par)
    for (int i = 0; i < n; ++i) {
        T* dx = din.v.data() + static_cast<std::size_t>(i) * in_f;
        const T* dy = dout.v.data() + static_cast<std::size_t>(i) * out_f;
        for (int j = 0; j < out_f; ++j) {
            const T g = dy[j];
            const T* wrow = weight.v.data() + static_cast<std::size_t>(j) * in_f;
            for (int k = 0; k < in_f; ++k) dx[k] += g * wrow[k];
        }
    }
}

template <typename T>
void linear_backward_params(const Tensor<T>& dout, const Tensor<T>& in, Tensor<T>& dweight,
                            std::vector<T>& dbias) {
    const int n = dout.n, out_f = dout.c, in_f = in.c;
    dweight = Tensor<T>(out_f, in_f, 1, 1);
    dbias.assign(out_f, T(0));
    const bool par = parallel_enabled();

#pragma omp parallel for if (par)
    for (int j = 0; j < out_f; ++j) {
        T* dw = dweight.v.data() + static_cast<std::size_t>(j) * in_f;
        T bsum = T(0);
        for (int i = 0; i < n; ++i) {
            const T g = dout.v[static_cast<std::size_t>(i) * out_f + j];
            bsum += g;
            const T* x = in.v.data() + static_cast<std::size_t>(i) * in_f;
            for (int k = 0; k < in_f; ++k) dw[k] += g * x[k];
        }
        dbias[j] = bsum;
    }
}

#define SOLIS_INSTANTIATE_LINEAR(T)                                                      \
    template void linear_forward<T>(const Tensor<T>&, const Tensor<T>&,                  \
                                    const std::vector<T>&, Tensor<T>&);                  \
    template void linear_backward_input<T>(const Tensor<T>&, const Tensor<T>&, Tensor<T>&); \
    template void linear_backward_params<T>(const Tensor<T>&, const Tensor<T>&, Tensor<T>&, \
                                            std::vector<T>&);

SOLIS_INSTANTIATE_LINEAR(float)
SOLIS_INSTANTIATE_LINEAR(double)
#undef SOLIS_INSTANTIATE_LINEAR

}  // namespace solis::kernels
