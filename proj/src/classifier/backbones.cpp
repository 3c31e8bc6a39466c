#include "solis/classifier/backbones.hpp"

namespace solis {

namespace {

template <typename T>
ModulePtr<T> conv_bn_relu(int in_c, int out_c, int kh, int kw, kernels::ConvGeom geom,
                          RngStream& rng) {
    auto seq = std::make_unique<Sequential<T>>();
    seq->add("conv", std::make_unique<Conv2d<T>>(in_c, out_c, kh, kw, geom, false, rng));
    seq->add("bn", std::make_unique<BatchNorm2d<T>>(out_c));
    seq->add("relu", std::make_unique<ReLU<T>>());
    return seq;
}

template <typename T>
ModulePtr<T> conv_bn_relu(int in_c, int out_c, int k, kernels::ConvGeom geom, RngStream& rng) {
    return conv_bn_relu<T>(in_c, out_c, k, k, geom, rng);
}

}  // namespace

template <typename T>
ModulePtr<T> build_tinycnn_backbone(RngStream& rng) {
    auto seq = std::make_unique<Sequential<T>>();
    seq->add("conv1", std::make_unique<Conv2d<T>>(3, 16, 3, kernels::ConvGeom(1, 1), true, rng));
    seq->add("relu1", std::make_unique<ReLU<T>>());
    seq->add("pool1", std::make_unique<MaxPool2d<T>>(2, 2));
    seq->add("conv2", std::make_unique<Conv2d<T>>(16, 32, 3, kernels::ConvGeom(1, 1), true, rng));
    seq->add("relu2", std::make_unique<ReLU<T>>());
    seq->add("pool2", std::make_unique<MaxPool2d<T>>(2, 2));
    seq->add("conv3", std::make_unique<Conv2d<T>>(32, 64, 3, kernels::ConvGeom(1, 1), true, rng));
    seq->add("relu3", std::make_unique<ReLU<T>>());
    seq->add("pool3", std::make_unique<MaxPool2d<T>>(2, 2));
    seq->add("gap", std::make_unique<GlobalAvgPool<T>>());
    return seq;
}

template <typename T>
ModulePtr<T> build_resnet18_backbone(RngStream& rng) {
    auto seq = std::make_unique<Sequential<T>>();
    seq->add("conv1", std::make_unique<Conv2d<T>>(3, 64, 7, kernels::ConvGeom(2, 3), false, rng));
    seq->add("bn1", std::make_unique<BatchNorm2d<T>>(64));
    seq->add("relu", std::make_unique<ReLU<T>>());
    seq->add("maxpool", std::make_unique<MaxPool2d<T>>(3, 2, 1));

    const int widths[4] = {64, 128, 256, 512};
    int in_c = 64;
    for (int stage = 0; stage < 4; ++stage) {
        auto layer = std::make_unique<Sequential<T>>();
        const int stride = stage == 0 ? 1 : 2;
        layer->add("0", std::make_unique<BasicBlock<T>>(in_c, widths[stage], stride, rng));
        layer->add("1", std::make_unique<BasicBlock<T>>(widths[stage], widths[stage], 1, rng));
        seq->add("layer" + std::to_string(stage + 1), std::move(layer));
        in_c = widths[stage];
    }
    seq->add("avgpool", std::make_unique<GlobalAvgPool<T>>());
    return seq;
}

template <typename T>
ModulePtr<T> build_vgg11_backbone(RngStream& rng, std::uint64_t dropout_seed) {
    auto seq = std::make_unique<Sequential<T>>();
    const int cfg[] = {64, -1, 128, -1, 256, 256, -1, 512, 512, -1, 512, 512, -1};
    int in_c = 3, idx = 0;
    for (int v : cfg) {
        if (v < 0) {
            seq->add("pool" + std::to_string(idx), std::make_unique<MaxPool2d<T>>(2, 2));
        } else {
            seq->add("conv" + std::to_string(idx),
                     std::make_unique<Conv2d<T>>(in_c, v, 3, kernels::ConvGeom(1, 1), true, rng));
            seq->add("relu" + std::to_string(idx), std::make_unique<ReLU<T>>());
            in_c = v;
        }
        ++idx;
    }
    seq->add("flatten", std::make_unique<Flatten<T>>());
    seq->add("fc1", std::make_unique<Linear<T>>(512 * 7 * 7, 4096, rng));
    seq->add("fc1_relu", std::make_unique<ReLU<T>>());
    seq->add("drop1", std::make_unique<Dropout<T>>(0.5, dropout_seed));
    seq->add("fc2", std::make_unique<Linear<T>>(4096, 4096, rng));
    seq->add("fc2_relu", std::make_unique<ReLU<T>>());
    seq->add("drop2", std::make_unique<Dropout<T>>(0.5, dropout_seed ^ 0x9E3779B9ull));
    return seq;
}

template <typename T>
ModulePtr<T> build_densenet121_backbone(RngStream& rng) {
    auto seq = std::make_unique<Sequential<T>>();
    seq->add("conv0", std::make_unique<Conv2d<T>>(3, 64, 7, kernels::ConvGeom(2, 3), false, rng));
    seq->add("norm0", std::make_unique<BatchNorm2d<T>>(64));
    seq->add("relu0", std::make_unique<ReLU<T>>());
    seq->add("pool0", std::make_unique<MaxPool2d<T>>(3, 2, 1));

    const int block_layers[4] = {6, 12, 24, 16};
    int c = 64;
    for (int b = 0; b < 4; ++b) {
        auto block = std::make_unique<DenseBlock<T>>(c, block_layers[b], 32, 4, rng);
        c = block->out_channels();
        seq->add("denseblock" + std::to_string(b + 1), std::move(block));
        if (b < 3) {
            auto trans = std::make_unique<Sequential<T>>();
            trans->add("norm", std::make_unique<BatchNorm2d<T>>(c));
            trans->add("relu", std::make_unique<ReLU<T>>());
            trans->add("conv",
                       std::make_unique<Conv2d<T>>(c, c / 2, 1, kernels::ConvGeom(1, 0), false, rng));
            trans->add("pool", std::make_unique<AvgPool2d<T>>(2, 2));
            seq->add("transition" + std::to_string(b + 1), std::move(trans));
            c /= 2;
        }
    }
    seq->add("norm5", std::make_unique<BatchNorm2d<T>>(c));
    seq->add("relu5", std::make_unique<ReLU<T>>());
    seq->add("avgpool", std::make_unique<GlobalAvgPool<T>>());
    return seq;
}

namespace {

// Inception blocks as channel-concatenated branches.
template <typename T>
ModulePtr<T> inception_a(int in_c, int pool_c, RngStream& rng) {
    auto cat = std::make_unique<BranchConcat<T>>();
    cat->add_branch("branch1x1", conv_bn_relu<T>(in_c, 64, 1, kernels::ConvGeom(1, 0), rng));
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("0", conv_bn_relu<T>(in_c, 48, 1, kernels::ConvGeom(1, 0), rng));
        b->add("1", conv_bn_relu<T>(48, 64, 5, kernels::ConvGeom(1, 2), rng));
        cat->add_branch("branch5x5", std::move(b));
    }
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("0", conv_bn_relu<T>(in_c, 64, 1, kernels::ConvGeom(1, 0), rng));
        b->add("1", conv_bn_relu<T>(64, 96, 3, kernels::ConvGeom(1, 1), rng));
        b->add("2", conv_bn_relu<T>(96, 96, 3, kernels::ConvGeom(1, 1), rng));
        cat->add_branch("branch3x3dbl", std::move(b));
    }
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("pool", std::make_unique<AvgPool2d<T>>(3, 1, 1));
        b->add("conv", conv_bn_relu<T>(in_c, pool_c, 1, kernels::ConvGeom(1, 0), rng));
        cat->add_branch("branch_pool", std::move(b));
    }
    return cat;
}

template <typename T>
ModulePtr<T> inception_b(int in_c, RngStream& rng) {
    auto cat = std::make_unique<BranchConcat<T>>();
    cat->add_branch("branch3x3", conv_bn_relu<T>(in_c, 384, 3, kernels::ConvGeom(2, 0), rng));
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("0", conv_bn_relu<T>(in_c, 64, 1, kernels::ConvGeom(1, 0), rng));
        b->add("1", conv_bn_relu<T>(64, 96, 3, kernels::ConvGeom(1, 1), rng));
        b->add("2", conv_bn_relu<T>(96, 96, 3, kernels::ConvGeom(2, 0), rng));
        cat->add_branch("branch3x3dbl", std::move(b));
    }
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("pool", std::make_unique<MaxPool2d<T>>(3, 2));
        cat->add_branch("branch_pool", std::move(b));
    }
    return cat;
}

template <typename T>
ModulePtr<T> inception_c(int in_c, int c7, RngStream& rng) {
    auto cat = std::make_unique<BranchConcat<T>>();
    cat->add_branch("branch1x1", conv_bn_relu<T>(in_c, 192, 1, kernels::ConvGeom(1, 0), rng));
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("0", conv_bn_relu<T>(in_c, c7, 1, kernels::ConvGeom(1, 0), rng));
        b->add("1", conv_bn_relu<T>(c7, c7, 1, 7, kernels::ConvGeom(1, 0, 3), rng));
        b->add("2", conv_bn_relu<T>(c7, 192, 7, 1, kernels::ConvGeom(1, 3, 0), rng));
        cat->add_branch("branch7x7", std::move(b));
    }
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("0", conv_bn_relu<T>(in_c, c7, 1, kernels::ConvGeom(1, 0), rng));
        b->add("1", conv_bn_relu<T>(c7, c7, 7, 1, kernels::ConvGeom(1, 3, 0), rng));
        b->add("2", conv_bn_relu<T>(c7, c7, 1, 7, kernels::ConvGeom(1, 0, 3), rng));
        b->add("3", conv_bn_relu<T>(c7, c7, 7, 1, kernels::ConvGeom(1, 3, 0), rng));
        b->add("4", conv_bn_relu<T>(c7, 192, 1, 7, kernels::ConvGeom(1, 0, 3), rng));
        cat->add_branch("branch7x7dbl", std::move(b));
    }
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("pool", std::make_unique<AvgPool2d<T>>(3, 1, 1));
        b->add("conv", conv_bn_relu<T>(in_c, 192, 1, kernels::ConvGeom(1, 0), rng));
        cat->add_branch("branch_pool", std::move(b));
    }
    return cat;
}

template <typename T>
ModulePtr<T> inception_d(int in_c, RngStream& rng) {
    auto cat = std::make_unique<BranchConcat<T>>();
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("0", conv_bn_relu<T>(in_c, 192, 1, kernels::ConvGeom(1, 0), rng));
        b->add("1", conv_bn_relu<T>(192, 320, 3, kernels::ConvGeom(2, 0), rng));
        cat->add_branch("branch3x3", std::move(b));
    }
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("0", conv_bn_relu<T>(in_c, 192, 1, kernels::ConvGeom(1, 0), rng));
        b->add("1", conv_bn_relu<T>(192, 192, 1, 7, kernels::ConvGeom(1, 0, 3), rng));
        b->add("2", conv_bn_relu<T>(192, 192, 7, 1, kernels::ConvGeom(1, 3, 0), rng));
        b->add("3", conv_bn_relu<T>(192, 192, 3, kernels::ConvGeom(2, 0), rng));
        cat->add_branch("branch7x7x3", std::move(b));
    }
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("pool", std::make_unique<MaxPool2d<T>>(3, 2));
        cat->add_branch("branch_pool", std::move(b));
    }
    return cat;
}

template <typename T>
ModulePtr<T> inception_e(int in_c, RngStream& rng) {
    auto cat = std::make_unique<BranchConcat<T>>();
    cat->add_branch("branch1x1", conv_bn_relu<T>(in_c, 320, 1, kernels::ConvGeom(1, 0), rng));
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("0", conv_bn_relu<T>(in_c, 384, 1, kernels::ConvGeom(1, 0), rng));
        auto split = std::make_unique<BranchConcat<T>>();
        split->add_branch("a", conv_bn_relu<T>(384, 384, 1, 3, kernels::ConvGeom(1, 0, 1), rng));
        split->add_branch("b", conv_bn_relu<T>(384, 384, 3, 1, kernels::ConvGeom(1, 1, 0), rng));
        b->add("1", std::move(split));
        cat->add_branch("branch3x3", std::move(b));
    }
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("0", conv_bn_relu<T>(in_c, 448, 1, kernels::ConvGeom(1, 0), rng));
        b->add("1", conv_bn_relu<T>(448, 384, 3, kernels::ConvGeom(1, 1), rng));
        auto split = std::make_unique<BranchConcat<T>>();
        split->add_branch("a", conv_bn_relu<T>(384, 384, 1, 3, kernels::ConvGeom(1, 0, 1), rng));
        split->add_branch("b", conv_bn_relu<T>(384, 384, 3, 1, kernels::ConvGeom(1, 1, 0), rng));
        b->add("2", std::move(split));
        cat->add_branch("branch3x3dbl", std::move(b));
    }
    {
        auto b = std::make_unique<Sequential<T>>();
        b->add("pool", std::make_unique<AvgPool2d<T>>(3, 1, 1));
        b->add("conv", conv_bn_relu<T>(in_c, 192, 1, kernels::ConvGeom(1, 0), rng));
        cat->add_branch("branch_pool", std::move(b));
    }
    return cat;
}

}  // namespace

template <typename T>
ModulePtr<T> build_inceptionv3_backbone(RngStream& rng, std::uint64_t dropout_seed) {
    auto seq = std::make_unique<Sequential<T>>();
    seq->add("Conv2d_1a_3x3", conv_bn_relu<T>(3, 32, 3, kernels::ConvGeom(2, 0), rng));
    seq->add("Conv2d_2a_3x3", conv_bn_relu<T>(32, 32, 3, kernels::ConvGeom(1, 0), rng));
    seq->add("Conv2d_2b_3x3", conv_bn_relu<T>(32, 64, 3, kernels::ConvGeom(1, 1), rng));
    seq->add("maxpool1", std::make_unique<MaxPool2d<T>>(3, 2));
    seq->add("Conv2d_3b_1x1", conv_bn_relu<T>(64, 80, 1, kernels::ConvGeom(1, 0), rng));
    seq->add("Conv2d_4a_3x3", conv_bn_relu<T>(80, 192, 3, kernels::ConvGeom(1, 0), rng));
    seq->add("maxpool2", std::make_unique<MaxPool2d<T>>(3, 2));
    seq->add("Mixed_5b", inception_a<T>(192, 32, rng));
    seq->add("Mixed_5c", inception_a<T>(256, 64, rng));
    seq->add("Mixed_5d", inception_a<T>(288, 64, rng));
    seq->add("Mixed_6a", inception_b<T>(288, rng));
    seq->add("Mixed_6b", inception_c<T>(768, 128, rng));
    seq->add("Mixed_6c", inception_c<T>(768, 160, rng));
    seq->add("Mixed_6d", inception_c<T>(768, 160, rng));
    seq->add("Mixed_6e", inception_c<T>(768, 192, rng));
    seq->add("Mixed_7a", inception_d<T>(768, rng));
    seq->add("Mixed_7b", inception_e<T>(1280, rng));
    seq->add("Mixed_7c", inception_e<T>(2048, rng));
    seq->add("avgpool", std::make_unique<GlobalAvgPool<T>>());
    seq->add("dropout", std::make_unique<Dropout<T>>(0.5, dropout_seed));
    return seq;
}

template ModulePtr<float> build_tinycnn_backbone<float>(RngStream&);
template ModulePtr<double> build_tinycnn_backbone<double>(RngStream&);
template ModulePtr<float> build_resnet18_backbone<float>(RngStream&);
template ModulePtr<float> build_vgg11_backbone<float>(RngStream&, std::uint64_t);
template ModulePtr<float> build_densenet121_backbone<float>(RngStream&);
template ModulePtr<float> build_inceptionv3_backbone<float>(RngStream&, std::uint64_t);

}  // namespace solis
