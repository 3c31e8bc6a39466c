#include "solis/kernels/batchnorm.hpp"

#include <cmath>

#include "solis/kernels/parallel.hpp"

namespace solis::kernels {

template <typename T>
void batchnorm_forward_train(const Tensor<T>& in, const std::vector<T>& gamma,
                             const std::vector<T>& beta, std::vector<T>& running_mean,
                             std::vector<T>& running_var, T momentum, T eps, Tensor<T>& out,
                             std::vector<T>& save_mean, std::vector<T>& save_invstd) {
    const int n = in.n, cn = in.c, plane = in.h * in.w;
    const std::size_t count = static_cast<std::size_t>(n) * plane;
    out = Tensor<T>(n, cn, in.h, in.w);
    save_mean.assign(cn, T(0));
    save_invstd.assign(cn, T(0));
    const bool par = parallel_enabled();

    // Per-channel reductions stay serial inside the channel loop so the
    // summation order is independent of thread count.
#pragma omp parallel for if (par)
    for (int c = 0; c < cn; ++c) {
        T sum = T(0);
        for (int i = 0; i < n; ++i) {
            const T* pl = in.plane(i, c);
            for (int p = 0; p < plane; ++p) sum += pl[p];
        }
        const T mean = sum / static_cast<T>(count);
        T sq = T(0);
        for (int i = 0; i < n; ++i) {
            const T* pl = in.plane(i, c);
            for (int p = 0; p < plane; ++p) {
                const T d = pl[p] - mean;
                sq += d * d;
            }
        }
        const T var_biased = sq / static_cast<T>(count);
        const T var_unbiased =
            count > 1 ? sq / static_cast<T>(count - 1) : var_biased;
        const T invstd = T(1) / std::sqrt(var_biased + eps);
        save_mean[c] = mean;
        save_invstd[c] = invstd;
        running_mean[c] = (T(1) - momentum) * running_mean[c] + momentum * mean;
        running_var[c] = (T(1) - momentum) * running_var[c] + momentum * var_unbiased;

        const T g = gamma[c], b = beta[c];
        for (int i = 0; i < n; ++i) {
            const T* pl = in.plane(i, c);
            T* op = out.plane(i, c);
            for (int p = 0; p < plane; ++p) op[p] = g * (pl[p] - mean) * invstd + b;
        }
    }
}

template <typename T>
void batchnorm_forward_eval(const Tensor<T>& in, const std::vector<T>& gamma,
                            const std::vector<T>& beta, const std::vector<T>& running_mean,
                            const std::vector<T>& running_var, T eps, Tensor<T>& out) {
    const int n = in.n, cn = in.c, plane = in.h * in.w;
    out = Tensor<T>(n, cn, in.h, in.w);
    const bool par = parallel_enabled();

#pragma omp parallel for collapse(2) if (par)
    for (int i = 0; i < n; ++i) {
        for (int c = 0; c < cn; ++c) {
            const T invstd = T(1) / std::sqrt(running_var[c] + eps);
            const T g = gamma[c] * invstd;
            const T b = beta[c] - running_mean[c] * g;
            const T* pl = in.plane(i, c);
            T* op = out.plane(i, c);
            for (int p = 0; p < plane; ++p) op[p] = g * pl[p] + b;
        }
    }
}

template <typename T>
void batchnorm_backward(const Tensor<T>& dout, const Tensor<T>& in,
                        const std::vector<T>& gamma, const std::vector<T>& save_mean,
                        const std::vector<T>& save_invstd, Tensor<T>& din,
                        std::vector<T>& dgamma, std::vector<T>& dbeta) {
    const int n = in.n, cn = in.c, plane = in.h * in.w;
    const T count = static_cast<T>(static_cast<std::size_t>(n) * plane);
    din = Tensor<T>(n, cn, in.h, in.w);
    dgamma.assign(cn, T(0));
    dbeta.assign(cn, T(0));
    const bool par = parallel_enabled();

#pragma omp parallel for if (par)
    for (int c = 0; c < cn; ++c) {
        const T mean = save_mean[c], invstd = save_invstd[c];
        T sum_dy = T(0), sum_dy_xhat = T(0);
        for (int i = 0; i < n; ++i) {
            const T* dop = dout.plane(i, c);
            const T* pl = in.plane(i, c);
            for (int p = 0; p < plane; ++p) {
                const T xhat = (pl[p] - mean) * invstd;
                sum_dy += dop[p];
                sum_dy_xhat += dop[p] * xhat;
            }
        }
        dgamma[c] = sum_dy_xhat;
        dbeta[c] = sum_dy;

        const T g = gamma[c];
        const T k1 = g * invstd;
        for (int i = 0; i < n; ++i) {
            const T* dop = dout.plane(i, c);
            const T* pl = in.plane(i, c);
            T* dp = din.plane(i, c);
            for (int p = 0; p < plane; ++p) {
                const T xhat = (pl[p] - mean) * invstd;
                dp[p] = k1 * (dop[p] - sum_dy / count - xhat * sum_dy_xhat / count);
            }
        }
    }
}

#define SOLIS_INSTANTIATE_BN(T)                                                               \
    template void batchnorm_forward_train<T>(const Tensor<T>&, const std::vector<T>&,         \
                                             const std::vector<T>&, std::vector<T>&,          \
                                             std::vector<T>&, T, T, Tensor<T>&,               \
                                             std::vector<T>&, std::vector<T>&);               \
    template void batchnorm_forward_eval<T>(const Tensor<T>&, const std::vector<T>&,          \
                                            const std::vector<T>&, const std::vector<T>&,     \
                                            const std::vector<T>&, T, Tensor<T>&);            \
    template void batchnorm_backward<T>(const Tensor<T>&, const Tensor<T>&,                   \
                                        const std::vector<T>&, const std::vector<T>&,         \
                                        const std::vector<T>&, Tensor<T>&, std::vector<T>&,   \
                                        std::vector<T>&);

SOLIS_INSTANTIATE_BN(float)
SOLIS_INSTANTIATE_BN(double)
#undef SOLIS_INSTANTIATE_BN

}  // namespace solis::kernels
