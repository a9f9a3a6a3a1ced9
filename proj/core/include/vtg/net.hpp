#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <cstdint>
#include <limits>

#include "vtg/error.hpp"
#include "vtg/rng.hpp"

namespace vtg {

// Encoder-decoder acting on D^3 occupancy grids:
//   conv3d 1->c1, kernel 4, stride 2, pad 1, ReLU
//   conv3d c1->c2, kernel 4, stride 2, pad 1, ReLU
//   dense -> hidden, ReLU
//   dense -> D^3, sigmoid
struct NetConfig {
    int grid_dim = 40;
    int conv1_channels = 8;
    int conv2_channels = 16;
    int hidden = 512;

    void require_valid() const {
        if (grid_dim < 4 || grid_dim % 4 != 0)
            throw InvalidInputError("NetConfig: grid_dim must be a positive multiple of 4");
        if (conv1_channels <= 0 || conv2_channels <= 0 || hidden <= 0)
            throw InvalidInputError("NetConfig: channel and hidden sizes must be positive");
    }
    int spatial1() const { return grid_dim / 2; }
    int spatial2() const { return grid_dim / 4; }
    long long flat_dim() const {
        const long long s = spatial2();
        return conv2_channels * s * s * s;
    }
    long long out_dim() const {
        const long long d = grid_dim;
        return d * d * d;
    }
};

template <typename T>
struct NetParamsT {
    using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
    using Vec = Eigen::Matrix<T, Eigen::Dynamic, 1>;
    Mat conv1_w;  // c1 x 64
    Vec conv1_b;
    Mat conv2_w;  // c2 x (c1*64)
    Vec conv2_b;
    Mat fc1_w;    // hidden x flat
    Vec fc1_b;
    Mat fc2_w;    // D^3 x hidden
    Vec fc2_b;

    template <typename F>
    void for_each_tensor(F&& f) {
        f(conv1_w);
        f(conv1_b);
        f(conv2_w);
        f(conv2_b);
        f(fc1_w);
        f(fc1_b);
        f(fc2_w);
        f(fc2_b);
    }
    template <typename F>
    void for_each_tensor(F&& f) const {
        f(conv1_w);
        f(conv1_b);
        f(conv2_w);
        f(conv2_b);
        f(fc1_w);
        f(fc1_b);
        f(fc2_w);
        f(fc2_b);
    }
    long long parameter_count() const {
        long long n = 0;
        for_each_tensor([&n](const auto& t) { n += t.size(); });
        return n;
    }
    bool all_finite() const {
        bool ok = true;
        for_each_tensor([&ok](const auto& t) { ok = ok && t.allFinite(); });
        return ok;
    }
};
using NetParams = NetParamsT<float>;

namespace detail {

template <typename T>
void zero_like(NetParamsT<T>& g, const NetConfig& cfg) {
    using Mat = typename NetParamsT<T>::Mat;
    using Vec = typename NetParamsT<T>::Vec;
    g.conv1_w = Mat::Zero(cfg.conv1_channels, 64);
    g.conv1_b = Vec::Zero(cfg.conv1_channels);
    g.conv2_w = Mat::Zero(cfg.conv2_channels, 64LL * cfg.conv1_channels);
    g.conv2_b = Vec::Zero(cfg.conv2_channels);
    g.fc1_w = Mat::Zero(cfg.hidden, cfg.flat_dim());
    g.fc1_b = Vec::Zero(cfg.hidden);
    g.fc2_w = Mat::Zero(cfg.out_dim(), cfg.hidden);
    g.fc2_b = Vec::Zero(cfg.out_dim());
}

// Feature columns hold one sample each, laid out channel-major:
// row = c*S^3 + (x + S*(y + S*z)).
//
// Patch extraction for kernel 4, stride 2, pad 1: output voxel (ox,oy,oz)
// reads the input window with origin (2*ox-1, 2*oy-1, 2*oz-1); out-of-range
// taps contribute zero. Column order: col = b*O^3 + (ox + O*(oy + O*oz));
// row = c*64 + (kz*16 + ky*4 + kx).
template <typename T>
void im2col(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& feat, int channels,
            int s_in, Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& cols) {
    const int s_out = s_in / 2;
    const long long o3 = 1LL * s_out * s_out * s_out;
    const long long s2 = 1LL * s_in * s_in;
    const Eigen::Index batch = feat.cols();
    cols.resize(64LL * channels, batch * o3);
    for (Eigen::Index b = 0; b < batch; ++b) {
        for (int oz = 0; oz < s_out; ++oz)
            for (int oy = 0; oy < s_out; ++oy)
                for (int ox = 0; ox < s_out; ++ox) {
                    const Eigen::Index col =
                        b * o3 + (ox + 1LL * s_out * (oy + 1LL * s_out * oz));
                    T* dst = cols.col(col).data();
                    for (int c = 0; c < channels; ++c) {
                        const T* src = feat.col(b).data() + 1LL * c * s_in * s2;
                        for (int kz = 0; kz < 4; ++kz) {
                            const int iz = 2 * oz - 1 + kz;
                            for (int ky = 0; ky < 4; ++ky) {
                                const int iy = 2 * oy - 1 + ky;
                                const bool plane_ok =
                                    iz >= 0 && iz < s_in && iy >= 0 && iy < s_in;
                                for (int kx = 0; kx < 4; ++kx) {
                                    const int ix = 2 * ox - 1 + kx;
                                    *dst++ = (plane_ok && ix >= 0 && ix < s_in)
                                                 ? src[ix + s_in * iy + s2 * iz]
                                                 : T(0);
                                }
                            }
                        }
                    }
                }
    }
}

// Adjoint of im2col: scatter-adds column gradients back onto the feature
// tensor (overlapping taps accumulate).
template <typename T>
void col2im_add(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& cols, int channels,
                int s_in, Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& feat) {
    const int s_out = s_in / 2;
    const long long o3 = 1LL * s_out * s_out * s_out;
    const long long s2 = 1LL * s_in * s_in;
    const Eigen::Index batch = feat.cols();
    for (Eigen::Index b = 0; b < batch; ++b) {
        for (int oz = 0; oz < s_out; ++oz)
            for (int oy = 0; oy < s_out; ++oy)
                for (int ox = 0; ox < s_out; ++ox) {
                    const Eigen::Index col =
                        b * o3 + (ox + 1LL * s_out * (oy + 1LL * s_out * oz));
                    const T* src = cols.col(col).data();
                    for (int c = 0; c < channels; ++c) {
                        T* dst = feat.col(b).data() + 1LL * c * s_in * s2;
                        for (int kz = 0; kz < 4; ++kz) {
                            const int iz = 2 * oz - 1 + kz;
                            for (int ky = 0; ky < 4; ++ky) {
                                const int iy = 2 * oy - 1 + ky;
                                const bool plane_ok =
                                    iz >= 0 && iz < s_in && iy >= 0 && iy < s_in;
                                for (int kx = 0; kx < 4; ++kx) {
                                    const int ix = 2 * ox - 1 + kx;
                                    const T v = *src++;
                                    if (plane_ok && ix >= 0 && ix < s_in)
                                        dst[ix + s_in * iy + s2 * iz] += v;
                                }
                            }
                        }
                    }
                }
    }
}

// Conv layout (C x batch*O^3) <-> feature layout (C*O^3 x batch).
template <typename T>
void conv_to_feat(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& y, long long o3,
                  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& feat) {
    const Eigen::Index channels = y.rows();
    const Eigen::Index batch = y.cols() / o3;
    feat.resize(channels * o3, batch);
    for (Eigen::Index b = 0; b < batch; ++b)
        for (Eigen::Index c = 0; c < channels; ++c)
            for (long long o = 0; o < o3; ++o) feat(c * o3 + o, b) = y(c, b * o3 + o);
}

template <typename T>
void feat_to_conv(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& feat,
                  Eigen::Index channels, long long o3,
                  Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& y) {
    const Eigen::Index batch = feat.cols();
    y.resize(channels, batch * o3);
    for (Eigen::Index b = 0; b < batch; ++b)
        for (Eigen::Index c = 0; c < channels; ++c)
            for (long long o = 0; o < o3; ++o) y(c, b * o3 + o) = feat(c * o3 + o, b);
}

template <typename T>
T sigmoid_strict(T z) {
    // Strictly inside (0,1) even when the exact sigmoid rounds to 0 or 1.
    const T p = T(1) / (T(1) + std::exp(-z));
    const T lo = std::numeric_limits<T>::min();
    const T hi = T(1) - std::numeric_limits<T>::epsilon() / T(2);
    return std::min(hi, std::max(lo, p));
}

}  // namespace detail

// He-normal for the ReLU layers, Glorot-uniform for the sigmoid output
// layer, zero biases. Weight tensors are drawn in declaration order and
// filled in storage (column-major) order.
template <typename T>
NetParamsT<T> init_params_t(const NetConfig& cfg, uint64_t seed) {
    cfg.require_valid();
    NetParamsT<T> p;
    detail::zero_like(p, cfg);
    Rng rng(seed);
    auto fill_he = [&rng](auto& w, double fan_in) {
        const double std_dev = std::sqrt(2.0 / fan_in);
        for (Eigen::Index i = 0; i < w.size(); ++i)
            w.data()[i] = static_cast<T>(rng.normal() * std_dev);
    };
    fill_he(p.conv1_w, 64.0);
    fill_he(p.conv2_w, 64.0 * cfg.conv1_channels);
    fill_he(p.fc1_w, static_cast<double>(cfg.flat_dim()));
    const double bound = std::sqrt(6.0 / (cfg.hidden + static_cast<double>(cfg.out_dim())));
    for (Eigen::Index i = 0; i < p.fc2_w.size(); ++i)
        p.fc2_w.data()[i] = static_cast<T>(rng.uniform_double(-bound, bound));
    return p;
}

inline NetParams init_params(const NetConfig& cfg, uint64_t seed) {
    return init_params_t<float>(cfg, seed);
}

// Intermediate activations kept for the backward pass.
template <typename T>
struct NetCache {
    using Mat = Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>;
    Mat x1;  // im2col of the input          64       x B*O1^3
    Mat a1;  // conv1 post-ReLU, conv layout c1       x B*O1^3
    Mat x2;  // im2col of conv1 features     c1*64    x B*O2^3
    Mat a2;  // conv2 post-ReLU, conv layout c2       x B*O2^3
    Mat f2;  // conv2 features, flat         c2*O2^3  x B
    Mat a3;  // dense hidden post-ReLU       hidden   x B
    Mat p;   // sigmoid output               D^3      x B
};

// Batched forward pass; `input` columns are flattened D^3 occupancy vectors.
// Returns probabilities strictly inside (0,1).
template <typename T>
void net_forward(const NetParamsT<T>& params, const NetConfig& cfg,
                 const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& input,
                 NetCache<T>& cache) {
    cfg.require_valid();
    if (input.rows() != cfg.out_dim())
        throw DimensionMismatchError("net_forward: input rows must equal grid_dim^3");
    const int s1 = cfg.spatial1(), s2 = cfg.spatial2();
    const long long o1 = 1LL * s1 * s1 * s1, o2 = 1LL * s2 * s2 * s2;

    detail::im2col(input, 1, cfg.grid_dim, cache.x1);
    cache.a1.noalias() = params.conv1_w * cache.x1;
    cache.a1.colwise() += params.conv1_b;
    cache.a1 = cache.a1.cwiseMax(T(0));

    typename NetCache<T>::Mat f1;
    detail::conv_to_feat(cache.a1, o1, f1);
    detail::im2col(f1, cfg.conv1_channels, s1, cache.x2);
    cache.a2.noalias() = params.conv2_w * cache.x2;
    cache.a2.colwise() += params.conv2_b;
    cache.a2 = cache.a2.cwiseMax(T(0));
    detail::conv_to_feat(cache.a2, o2, cache.f2);

    cache.a3.noalias() = params.fc1_w * cache.f2;
    cache.a3.colwise() += params.fc1_b;
    cache.a3 = cache.a3.cwiseMax(T(0));

    cache.p.noalias() = params.fc2_w * cache.a3;
    cache.p.colwise() += params.fc2_b;
    cache.p = cache.p.unaryExpr([](T z) { return detail::sigmoid_strict(z); });
}

// Mean cross-entropy over batch and voxels with probabilities clamped to
// [eps, 1-eps] inside the logs.
template <typename T>
double bce_loss(const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& pred,
                const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& target, double eps) {
    if (pred.rows() != target.rows() || pred.cols() != target.cols())
        throw DimensionMismatchError("bce_loss: prediction/target shape mismatch");
    double sum = 0.0;
    for (Eigen::Index j = 0; j < pred.cols(); ++j)
        for (Eigen::Index i = 0; i < pred.rows(); ++i) {
            const double q =
                std::min(1.0 - eps, std::max(eps, static_cast<double>(pred(i, j))));
            const double y = static_cast<double>(target(i, j));
            sum -= y * std::log(q) + (1.0 - y) * std::log(1.0 - q);
        }
    return sum / (static_cast<double>(pred.rows()) * static_cast<double>(pred.cols()));
}

// Gradient of bce_loss(net_forward(...)) with respect to every parameter.
// The clamps are differentiated honestly: saturated outputs get zero
// gradient because the clamped value no longer depends on the logit.
template <typename T>
void net_backward(const NetParamsT<T>& params, const NetConfig& cfg, const NetCache<T>& cache,
                  const Eigen::Matrix<T, Eigen::Dynamic, Eigen::Dynamic>& target, double eps,
                  NetParamsT<T>& grads) {
    using Mat = typename NetParamsT<T>::Mat;
    if (target.rows() != cache.p.rows() || target.cols() != cache.p.cols())
        throw DimensionMismatchError("net_backward: target shape mismatch");
    const int s1 = cfg.spatial1(), s2 = cfg.spatial2();
    const long long o1 = 1LL * s1 * s1 * s1, o2 = 1LL * s2 * s2 * s2;
    const T inv_n = T(1.0 / (static_cast<double>(cache.p.rows()) *
                             static_cast<double>(cache.p.cols())));

    Mat dz4(cache.p.rows(), cache.p.cols());
    const T lo = static_cast<T>(eps), hi = static_cast<T>(1.0 - eps);
    for (Eigen::Index j = 0; j < dz4.cols(); ++j)
        for (Eigen::Index i = 0; i < dz4.rows(); ++i) {
            const T p = cache.p(i, j);
            dz4(i, j) = (p > lo && p < hi) ? (p - target(i, j)) * inv_n : T(0);
        }

    grads.fc2_w.noalias() = dz4 * cache.a3.transpose();
    grads.fc2_b = dz4.rowwise().sum();
    Mat dz3 = params.fc2_w.transpose() * dz4;
    dz3.array() *= (cache.a3.array() > T(0)).template cast<T>();

    grads.fc1_w.noalias() = dz3 * cache.f2.transpose();
    grads.fc1_b = dz3.rowwise().sum();
    Mat df2 = params.fc1_w.transpose() * dz3;

    Mat dy2;
    detail::feat_to_conv(df2, cfg.conv2_channels, o2, dy2);
    dy2.array() *= (cache.a2.array() > T(0)).template cast<T>();
    grads.conv2_w.noalias() = dy2 * cache.x2.transpose();
    grads.conv2_b = dy2.rowwise().sum();

    Mat dx2 = params.conv2_w.transpose() * dy2;
    Mat df1 = Mat::Zero(1LL * cfg.conv1_channels * o1, cache.f2.cols());
    detail::col2im_add(dx2, cfg.conv1_channels, s1, df1);

    Mat dy1;
    detail::feat_to_conv(df1, cfg.conv1_channels, o1, dy1);
    dy1.array() *= (cache.a1.array() > T(0)).template cast<T>();
    grads.conv1_w.noalias() = dy1 * cache.x1.transpose();
    grads.conv1_b = dy1.rowwise().sum();
}

}  // namespace vtg
