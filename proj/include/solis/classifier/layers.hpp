#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "solis/kernels/batchnorm.hpp"
#include "solis/kernels/conv2d.hpp"
#include "solis/kernels/elementwise.hpp"
#include "solis/kernels/linear.hpp"
#include "solis/kernels/pool.hpp"
#include "solis/kernels/tensor.hpp"
#include "solis/util/errors.hpp"
#include "solis/util/rng.hpp"

namespace solis {

template <typename T>
struct ParamRef {
    std::string name;
    kernels::Tensor<T>* value;
    kernels::Tensor<T>* grad;  // null for buffers
    bool trainable;
};

// Minimal autograd-free module: forward caches whatever backward needs;
// backward overwrites this layer's parameter gradients and returns the
// gradient w.r.t. its input. One owner trains a module at a time.
template <typename T>
class Module {
public:
    virtual ~Module() = default;
    virtual kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) = 0;
    virtual kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) = 0;
    virtual void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& params) {
        (void)prefix;
        (void)params;
    }
    virtual void collect_buffers(const std::string& prefix, std::vector<ParamRef<T>>& buffers) {
        (void)prefix;
        (void)buffers;
    }
};

template <typename T>
using ModulePtr = std::unique_ptr<Module<T>>;

namespace detail {

// Uniform fan-in init: U(-1/sqrt(fan_in), 1/sqrt(fan_in)).
template <typename T>
void init_uniform_fan_in(kernels::Tensor<T>& t, int fan_in, RngStream& rng) {
    const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in));
    for (auto& v : t.v) v = static_cast<T>(rng.uniform(-bound, bound));
}

}  // namespace detail

template <typename T>
class Conv2d : public Module<T> {
public:
    Conv2d(int in_c, int out_c, int kh, int kw, kernels::ConvGeom geom, bool with_bias,
           RngStream& rng)
        : geom_(geom), with_bias_(with_bias), weight_(out_c, in_c, kh, kw),
          wgrad_(out_c, in_c, kh, kw), bias_(out_c, 1, 1, 1), bgrad_(out_c, 1, 1, 1) {
        detail::init_uniform_fan_in(weight_, in_c * kh * kw, rng);
        if (with_bias_) detail::init_uniform_fan_in(bias_, in_c * kh * kw, rng);
    }

    Conv2d(int in_c, int out_c, int k, kernels::ConvGeom geom, bool with_bias, RngStream& rng)
        : Conv2d(in_c, out_c, k, k, geom, with_bias, rng) {}

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        if (train) input_ = x;
        kernels::Tensor<T> y;
        kernels::conv2d_forward(x, weight_, bias_.v, geom_, y);
        if (!train) input_ = kernels::Tensor<T>();
        return y;
    }

    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        std::vector<T> db;
        kernels::conv2d_backward_params(dy, input_, geom_, weight_.h, weight_.w, wgrad_, db);
        if (with_bias_) bgrad_.v = std::move(db);
        kernels::Tensor<T> dx;
        kernels::conv2d_backward_input(dy, weight_, geom_, input_.h, input_.w, dx);
        return dx;
    }

    void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& params) override {
        params.push_back({prefix + ".weight", &weight_, &wgrad_, true});
        if (with_bias_) params.push_back({prefix + ".bias", &bias_, &bgrad_, true});
    }

private:
    kernels::ConvGeom geom_;
    bool with_bias_;
    kernels::Tensor<T> weight_, wgrad_, bias_, bgrad_;
    kernels::Tensor<T> input_;
};

template <typename T>
class BatchNorm2d : public Module<T> {
public:
    explicit BatchNorm2d(int c)
        : gamma_(c, 1, 1, 1), ggrad_(c, 1, 1, 1), beta_(c, 1, 1, 1), bgrad_(c, 1, 1, 1),
          running_mean_(c, 1, 1, 1), running_var_(c, 1, 1, 1) {
        gamma_.fill(T(1));
        running_var_.fill(T(1));
    }

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        kernels::Tensor<T> y;
        if (train) {
            input_ = x;
            kernels::batchnorm_forward_train(x, gamma_.v, beta_.v, running_mean_.v,
                                             running_var_.v, T(0.1), T(1e-5), y, save_mean_,
                                             save_invstd_);
        } else {
            input_ = kernels::Tensor<T>();
            kernels::batchnorm_forward_eval(x, gamma_.v, beta_.v, running_mean_.v,
                                            running_var_.v, T(1e-5), y);
        }
        return y;
    }

    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        if (input_.size() == 0) throw Error("batchnorm backward without train-mode forward");
        kernels::Tensor<T> dx;
        std::vector<T> dg, db;
        kernels::batchnorm_backward(dy, input_, gamma_.v, save_mean_, save_invstd_, dx, dg, db);
        ggrad_.v = std::move(dg);
        bgrad_.v = std::move(db);
        return dx;
    }

    void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& params) override {
        params.push_back({prefix + ".weight", &gamma_, &ggrad_, true});
        params.push_back({prefix + ".bias", &beta_, &bgrad_, true});
    }

    void collect_buffers(const std::string& prefix, std::vector<ParamRef<T>>& buffers) override {
        buffers.push_back({prefix + ".running_mean", &running_mean_, nullptr, false});
        buffers.push_back({prefix + ".running_var", &running_var_, nullptr, false});
    }

private:
    kernels::Tensor<T> gamma_, ggrad_, beta_, bgrad_;
    kernels::Tensor<T> running_mean_, running_var_;
    std::vector<T> save_mean_, save_invstd_;
    kernels::Tensor<T> input_;
};

template <typename T>
class ReLU : public Module<T> {
public:
    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        if (train) input_ = x;
        kernels::Tensor<T> y;
        kernels::relu_forward(x, y);
        return y;
    }
    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        kernels::Tensor<T> dx;
        kernels::relu_backward(dy, input_, dx);
        return dx;
    }

private:
    kernels::Tensor<T> input_;
};

template <typename T>
class MaxPool2d : public Module<T> {
public:
    MaxPool2d(int k, int stride, int pad = 0) : k_(k), stride_(stride), pad_(pad) {}

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        kernels::Tensor<T> y;
        kernels::maxpool2d_forward(x, k_, stride_, pad_, y, argmax_);
        if (train) {
            in_h_ = x.h;
            in_w_ = x.w;
        }
        return y;
    }
    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        kernels::Tensor<T> dx;
        kernels::maxpool2d_backward(dy, argmax_, in_h_, in_w_, dx);
        return dx;
    }

private:
    int k_, stride_, pad_;
    int in_h_ = 0, in_w_ = 0;
    std::vector<int> argmax_;
};

template <typename T>
class AvgPool2d : public Module<T> {
public:
    AvgPool2d(int k, int stride, int pad = 0) : k_(k), stride_(stride), pad_(pad) {}

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        (void)train;
        in_h_ = x.h;
        in_w_ = x.w;
        kernels::Tensor<T> y;
        kernels::avgpool2d_forward(x, k_, stride_, pad_, y);
        return y;
    }
    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        kernels::Tensor<T> dx;
        kernels::avgpool2d_backward(dy, k_, stride_, pad_, in_h_, in_w_, dx);
        return dx;
    }

private:
    int k_, stride_, pad_;
    int in_h_ = 0, in_w_ = 0;
};

template <typename T>
class GlobalAvgPool : public Module<T> {
public:
    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        (void)train;
        in_h_ = x.h;
        in_w_ = x.w;
        kernels::Tensor<T> y;
        kernels::global_avgpool_forward(x, y);
        return y;
    }
    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        kernels::Tensor<T> dx;
        kernels::global_avgpool_backward(dy, in_h_, in_w_, dx);
        return dx;
    }

private:
    int in_h_ = 0, in_w_ = 0;
};

// Reshapes [n,c,h,w] to [n,c*h*w,1,1]; no copy semantics beyond the vector.
template <typename T>
class Flatten : public Module<T> {
public:
    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        (void)train;
        c_ = x.c;
        h_ = x.h;
        w_ = x.w;
        kernels::Tensor<T> y;
        y.n = x.n;
        y.c = x.c * x.h * x.w;
        y.h = 1;
        y.w = 1;
        y.v = x.v;
        return y;
    }
    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        kernels::Tensor<T> dx;
        dx.n = dy.n;
        dx.c = c_;
        dx.h = h_;
        dx.w = w_;
        dx.v = dy.v;
        return dx;
    }

private:
    int c_ = 0, h_ = 0, w_ = 0;
};

template <typename T>
class Linear : public Module<T> {
public:
    Linear(int in_f, int out_f, RngStream& rng)
        : weight_(out_f, in_f, 1, 1), wgrad_(out_f, in_f, 1, 1), bias_(out_f, 1, 1, 1),
          bgrad_(out_f, 1, 1, 1) {
        detail::init_uniform_fan_in(weight_, in_f, rng);
        detail::init_uniform_fan_in(bias_, in_f, rng);
    }

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        if (train) input_ = x;
        kernels::Tensor<T> y;
        kernels::linear_forward(x, weight_, bias_.v, y);
        return y;
    }
    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        std::vector<T> db;
        kernels::linear_backward_params(dy, input_, wgrad_, db);
        bgrad_.v = std::move(db);
        kernels::Tensor<T> dx;
        kernels::linear_backward_input(dy, weight_, dx);
        return dx;
    }

    void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& params) override {
        params.push_back({prefix + ".weight", &weight_, &wgrad_, true});
        params.push_back({prefix + ".bias", &bias_, &bgrad_, true});
    }

    int in_features() const { return weight_.c; }
    int out_features() const { return weight_.n; }

private:
    kernels::Tensor<T> weight_, wgrad_, bias_, bgrad_;
    kernels::Tensor<T> input_;
};

// Inverted dropout; identity in eval mode. Mask draws come from an internal
// stream reseeded per forward call index, so runs are reproducible.
template <typename T>
class Dropout : public Module<T> {
public:
    Dropout(double p, std::uint64_t seed) : p_(p), seed_(seed) {}

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        if (!train || p_ <= 0.0) {
            mask_.clear();
            return x;
        }
        RngStream rng = RngStream::derive(seed_, {rng_tag::kDropout, call_});
        ++call_;
        mask_.resize(x.size());
        kernels::Tensor<T> y = x;
        const T scale = static_cast<T>(1.0 / (1.0 - p_));
        for (std::size_t i = 0; i < x.size(); ++i) {
            mask_[i] = rng.uniform01() >= p_ ? 1 : 0;
            y.v[i] = mask_[i] ? x.v[i] * scale : T(0);
        }
        return y;
    }
    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        if (mask_.empty()) return dy;
        kernels::Tensor<T> dx = dy;
        const T scale = static_cast<T>(1.0 / (1.0 - p_));
        for (std::size_t i = 0; i < dx.size(); ++i)
            dx.v[i] = mask_[i] ? dy.v[i] * scale : T(0);
        return dx;
    }

private:
    double p_;
    std::uint64_t seed_;
    std::uint64_t call_ = 0;
    std::vector<std::uint8_t> mask_;
};

// Named chain of modules; parameter names are "<child>.<param>".
template <typename T>
class Sequential : public Module<T> {
public:
    Sequential() = default;

    Module<T>& add(const std::string& name, ModulePtr<T> m) {
        children_.emplace_back(name, std::move(m));
        return *children_.back().second;
    }

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        kernels::Tensor<T> cur = x;
        for (auto& [name, m] : children_) cur = m->forward(cur, train);
        return cur;
    }
    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        kernels::Tensor<T> cur = dy;
        for (auto it = children_.rbegin(); it != children_.rend(); ++it)
            cur = it->second->backward(cur);
        return cur;
    }
    void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& params) override {
        for (auto& [name, m] : children_) m->collect_params(prefix + "." + name, params);
    }
    void collect_buffers(const std::string& prefix, std::vector<ParamRef<T>>& buffers) override {
        for (auto& [name, m] : children_) m->collect_buffers(prefix + "." + name, buffers);
    }

    std::size_t size() const { return children_.size(); }

private:
    std::vector<std::pair<std::string, ModulePtr<T>>> children_;
};

// Concatenation of parallel branches along the channel axis.
template <typename T>
class BranchConcat : public Module<T> {
public:
    Module<T>& add_branch(const std::string& name, ModulePtr<T> m) {
        branches_.emplace_back(name, std::move(m));
        return *branches_.back().second;
    }

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        std::vector<kernels::Tensor<T>> outs;
        outs.reserve(branches_.size());
        widths_.clear();
        for (auto& [name, m] : branches_) {
            outs.push_back(m->forward(x, train));
            widths_.push_back(outs.back().c);
        }
        const int n = outs.front().n, h = outs.front().h, w = outs.front().w;
        int total_c = 0;
        for (const auto& o : outs) {
            if (o.h != h || o.w != w) throw Error("branch concat: spatial mismatch");
            total_c += o.c;
        }
        kernels::Tensor<T> y(n, total_c, h, w);
        int c_off = 0;
        for (const auto& o : outs) {
            for (int in_i = 0; in_i < n; ++in_i)
                std::copy(o.plane(in_i, 0), o.plane(in_i, 0) + static_cast<std::size_t>(o.c) * h * w,
                          y.plane(in_i, c_off));
            c_off += o.c;
        }
        return y;
    }

    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        kernels::Tensor<T> dx;
        int c_off = 0;
        for (std::size_t b = 0; b < branches_.size(); ++b) {
            const int bc = widths_[b];
            kernels::Tensor<T> slice(dy.n, bc, dy.h, dy.w);
            for (int in_i = 0; in_i < dy.n; ++in_i)
                std::copy(dy.plane(in_i, c_off),
                          dy.plane(in_i, c_off) + static_cast<std::size_t>(bc) * dy.h * dy.w,
                          slice.plane(in_i, 0));
            kernels::Tensor<T> dxb = branches_[b].second->backward(slice);
            if (b == 0) {
                dx = std::move(dxb);
            } else {
                kernels::Tensor<T> sum;
                kernels::add(dx, dxb, sum);
                dx = std::move(sum);
            }
            c_off += bc;
        }
        return dx;
    }

    void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& params) override {
        for (auto& [name, m] : branches_) m->collect_params(prefix + "." + name, params);
    }
    void collect_buffers(const std::string& prefix, std::vector<ParamRef<T>>& buffers) override {
        for (auto& [name, m] : branches_) m->collect_buffers(prefix + "." + name, buffers);
    }

private:
    std::vector<std::pair<std::string, ModulePtr<T>>> branches_;
    std::vector<int> widths_;
};

}  // namespace solis
