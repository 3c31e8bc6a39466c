#include "solis/kernels/elementwise.hpp"

#include <cstdint>

#include "solis/kernels/parallel.hpp"
#include "solis/util/errors.hpp"

namespace solis::kernels {

template <typename T>
void relu_forward(const Tensor<T>& in, Tensor<T>& out) {
    out = Tensor<T>(in.n, in.c, in.h, in.w);
    const std::int64_t sz = static_cast<std::int64_t>(in.size());
    const bool par = parallel_enabled();
#pragma omp parallel for if (par)
    for (std::int64_t i = 0; i < sz; ++i) out.v[i] = in.v[i] > T(0) ? in.v[i] : T(0);
}

template <typename T>
void relu_backward(const Tensor<T>& dout, const Tensor<T>& forward_in, Tensor<T>& din) {
    din = Tensor<T>(dout.n, dout.c, dout.h, dout.w);
    const std::int64_t sz = static_cast<std::int64_t>(dout.size());
    const bool par = parallel_enabled();
#pragma omp parallel for if (par)
    for (std::int64_t i = 0; i < sz; ++i)
        din.v[i] = forward_in.v[i] > T(0) ? dout.v[i] : T(0);
}

template <typename T>
void add(const Tensor<T>& a, const Tensor<T>& b, Tensor<T>& out) {
    if (!a.same_shape(b)) throw Error("add: shape mismatch");
    out = Tensor<T>(a.n, a.c, a.h, a.w);
    const std::int64_t sz = static_cast<std::int64_t>(a.size());
    const bool par = parallel_enabled();
#pragma omp parallel for if (par)
    for (std::int64_t i = 0; i < sz; ++i) out.v[i] = a.v[i] + b.v[i];
}

template <typename T>
void scale_inplace(Tensor<T>& t, T s) {
    const std::int64_t sz = static_cast<std::int64_t>(t.size());
    const bool par = parallel_enabled();
#pragma omp parallel for if (par)
    for (std::int64_t i = 0; i < sz; ++i) t.v[i] *= s;
}

#define SOLIS_INSTANTIATE_EW(T)                                              \
    template void relu_forward<T>(const Tensor<T>&, Tensor<T>&);             \
    template void relu_backward<T>(const Tensor<T>&, const Tensor<T>&, Tensor<T>&); \
    template void add<T>(const Tensor<T>&, const Tensor<T>&, Tensor<T>&);    \
    template void scale_inplace<T>(Tensor<T>&, T);

SOLIS_INSTANTIATE_EW(float)
SOLIS_INSTANTIATE_EW(double)
#undef SOLIS_INSTANTIATE_EW

}  // namespace solis::kernels
