#pragma once

#include <memory>
#include <string>

#include "solis/classifier/layers.hpp"

namespace solis {

// Residual basic block (two 3x3 convs, optional 1x1 downsample path).
template <typename T>
class BasicBlock : public Module<T> {
public:
    BasicBlock(int in_c, int out_c, int stride, RngStream& rng)
        : conv1_(in_c, out_c, 3, kernels::ConvGeom(stride, 1), false, rng), bn1_(out_c),
          conv2_(out_c, out_c, 3, kernels::ConvGeom(1, 1), false, rng), bn2_(out_c) {
        if (stride != 1 || in_c != out_c) {
            down_conv_ = std::make_unique<Conv2d<T>>(in_c, out_c, 1,
                                                     kernels::ConvGeom(stride, 0), false, rng);
            down_bn_ = std::make_unique<BatchNorm2d<T>>(out_c);
        }
    }

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        kernels::Tensor<T> identity =
            down_conv_ ? down_bn_->forward(down_conv_->forward(x, train), train) : x;
        kernels::Tensor<T> y = bn1_.forward(conv1_.forward(x, train), train);
        y = relu1_.forward(y, train);
        y = bn2_.forward(conv2_.forward(y, train), train);
        kernels::Tensor<T> s;
        kernels::add(y, identity, s);
        return relu_out_.forward(s, train);
    }

    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        kernels::Tensor<T> ds = relu_out_.backward(dy);
        kernels::Tensor<T> dmain = conv1_.backward(
            bn1_.backward(relu1_.backward(conv2_.backward(bn2_.backward(ds)))));
        kernels::Tensor<T> did =
            down_conv_ ? down_conv_->backward(down_bn_->backward(ds)) : ds;
        kernels::Tensor<T> dx;
        kernels::add(dmain, did, dx);
        return dx;
    }

    void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& params) override {
        conv1_.collect_params(prefix + ".conv1", params);
        bn1_.collect_params(prefix + ".bn1", params);
        conv2_.collect_params(prefix + ".conv2", params);
        bn2_.collect_params(prefix + ".bn2", params);
        if (down_conv_) {
            down_conv_->collect_params(prefix + ".downsample.0", params);
            down_bn_->collect_params(prefix + ".downsample.1", params);
        }
    }
    void collect_buffers(const std::string& prefix, std::vector<ParamRef<T>>& buffers) override {
        bn1_.collect_buffers(prefix + ".bn1", buffers);
        bn2_.collect_buffers(prefix + ".bn2", buffers);
        if (down_bn_) down_bn_->collect_buffers(prefix + ".downsample.1", buffers);
    }

private:
    Conv2d<T> conv1_;
    BatchNorm2d<T> bn1_;
    ReLU<T> relu1_;
    Conv2d<T> conv2_;
    BatchNorm2d<T> bn2_;
    ReLU<T> relu_out_;
    std::unique_ptr<Conv2d<T>> down_conv_;
    std::unique_ptr<BatchNorm2d<T>> down_bn_;
};

// DenseNet layer: produces `growth` new channels from the running feature
// stack; the enclosing block handles concatenation.
template <typename T>
class DenseLayer : public Module<T> {
public:
    DenseLayer(int in_c, int growth, int bn_size, RngStream& rng)
        : bn1_(in_c), conv1_(in_c, bn_size * growth, 1, kernels::ConvGeom(1, 0), false, rng),
          bn2_(bn_size * growth),
          conv2_(bn_size * growth, growth, 3, kernels::ConvGeom(1, 1), false, rng) {}

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        kernels::Tensor<T> y = relu1_.forward(bn1_.forward(x, train), train);
        y = conv1_.forward(y, train);
        y = relu2_.forward(bn2_.forward(y, train), train);
        return conv2_.forward(y, train);
    }
    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        kernels::Tensor<T> d = conv2_.backward(dy);
        d = bn2_.backward(relu2_.backward(d));
        d = conv1_.backward(d);
        return bn1_.backward(relu1_.backward(d));
    }
    void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& params) override {
        bn1_.collect_params(prefix + ".norm1", params);
        conv1_.collect_params(prefix + ".conv1", params);
        bn2_.collect_params(prefix + ".norm2", params);
        conv2_.collect_params(prefix + ".conv2", params);
    }
    void collect_buffers(const std::string& prefix, std::vector<ParamRef<T>>& buffers) override {
        bn1_.collect_buffers(prefix + ".norm1", buffers);
        bn2_.collect_buffers(prefix + ".norm2", buffers);
    }

private:
    BatchNorm2d<T> bn1_;
    ReLU<T> relu1_;
    Conv2d<T> conv1_;
    BatchNorm2d<T> bn2_;
    ReLU<T> relu2_;
    Conv2d<T> conv2_;
};

template <typename T>
kernels::Tensor<T> concat_channels(const kernels::Tensor<T>& a, const kernels::Tensor<T>& b) {
    kernels::Tensor<T> y(a.n, a.c + b.c, a.h, a.w);
    for (int i = 0; i < a.n; ++i) {
        std::copy(a.plane(i, 0), a.plane(i, 0) + static_cast<std::size_t>(a.c) * a.h * a.w,
                  y.plane(i, 0));
        std::copy(b.plane(i, 0), b.plane(i, 0) + static_cast<std::size_t>(b.c) * b.h * b.w,
                  y.plane(i, a.c));
    }
    return y;
}

template <typename T>
std::pair<kernels::Tensor<T>, kernels::Tensor<T>> split_channels(const kernels::Tensor<T>& t,
                                                                 int c_first) {
    kernels::Tensor<T> a(t.n, c_first, t.h, t.w);
    kernels::Tensor<T> b(t.n, t.c - c_first, t.h, t.w);
    for (int i = 0; i < t.n; ++i) {
        std::copy(t.plane(i, 0), t.plane(i, 0) + static_cast<std::size_t>(c_first) * t.h * t.w,
                  a.plane(i, 0));
        std::copy(t.plane(i, c_first),
                  t.plane(i, c_first) + static_cast<std::size_t>(t.c - c_first) * t.h * t.w,
                  b.plane(i, 0));
    }
    return {std::move(a), std::move(b)};
}

template <typename T>
class DenseBlock : public Module<T> {
public:
    DenseBlock(int in_c, int n_layers, int growth, int bn_size, RngStream& rng)
        : growth_(growth) {
        int c = in_c;
        for (int i = 0; i < n_layers; ++i) {
            layers_.push_back(std::make_unique<DenseLayer<T>>(c, growth, bn_size, rng));
            c += growth;
        }
        out_c_ = c;
    }

    kernels::Tensor<T> forward(const kernels::Tensor<T>& x, bool train) override {
        kernels::Tensor<T> feats = x;
        for (auto& layer : layers_) {
            kernels::Tensor<T> fresh = layer->forward(feats, train);
            feats = concat_channels(feats, fresh);
        }
        return feats;
    }

    kernels::Tensor<T> backward(const kernels::Tensor<T>& dy) override {
        kernels::Tensor<T> dfeats = dy;
        for (auto it = layers_.rbegin(); it != layers_.rend(); ++it) {
            auto [dprev, dfresh] = split_channels(dfeats, dfeats.c - growth());
            kernels::Tensor<T> dthrough = (*it)->backward(dfresh);
            kernels::add(dprev, dthrough, dfeats);
        }
        return dfeats;
    }

    void collect_params(const std::string& prefix, std::vector<ParamRef<T>>& params) override {
        for (std::size_t i = 0; i < layers_.size(); ++i)
            layers_[i]->collect_params(prefix + ".denselayer" + std::to_string(i + 1), params);
    }
    void collect_buffers(const std::string& prefix, std::vector<ParamRef<T>>& buffers) override {
        for (std::size_t i = 0; i < layers_.size(); ++i)
            layers_[i]->collect_buffers(prefix + ".denselayer" + std::to_string(i + 1), buffers);
    }

    int out_channels() const { return out_c_; }

private:
    int growth() const { return growth_; }
    int growth_;
    std::vector<std::unique_ptr<DenseLayer<T>>> layers_;
    int out_c_ = 0;
};

// Backbone factories. Each returns a module mapping [n,3,H,W] to
// [n,feature_dim,1,1] with seeded random init.
template <typename T>
ModulePtr<T> build_tinycnn_backbone(RngStream& rng);
template <typename T>
ModulePtr<T> build_resnet18_backbone(RngStream& rng);
template <typename T>
ModulePtr<T> build_vgg11_backbone(RngStream& rng, std::uint64_t dropout_seed);
template <typename T>
ModulePtr<T> build_densenet121_backbone(RngStream& rng);
template <typename T>
ModulePtr<T> build_inceptionv3_backbone(RngStream& rng, std::uint64_t dropout_seed);

}  // namespace solis
