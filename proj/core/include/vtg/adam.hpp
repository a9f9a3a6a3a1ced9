#pragma once

#include <cmath>
#include <cstdint>

#include "vtg/error.hpp"
#include "vtg/net.hpp"

namespace vtg {

struct TrainConfig {
    double learning_rate = 1e-4;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
    int batch_size = 32;
    int epochs = 30;
    uint64_t seed = 0;
    double clamp_eps = 1e-7;  // probability clamp inside the loss logs

    void require_valid() const {
        if (!(learning_rate > 0.0)) throw InvalidInputError("TrainConfig: learning_rate > 0");
        if (!(beta1 > 0.0 && beta1 < 1.0) || !(beta2 > 0.0 && beta2 < 1.0))
            throw InvalidInputError("TrainConfig: betas must lie in (0,1)");
        if (!(epsilon > 0.0)) throw InvalidInputError("TrainConfig: epsilon > 0");
        if (batch_size < 1) throw InvalidInputError("TrainConfig: batch_size >= 1");
        if (epochs < 0) throw InvalidInputError("TrainConfig: epochs >= 0");
        if (!(clamp_eps > 0.0 && clamp_eps < 0.5))
            throw InvalidInputError("TrainConfig: clamp_eps must lie in (0, 0.5)");
    }
};

// One Adam update of a single parameter; `m` and `v` are that parameter's
// moment accumulators and `t` the 1-based step count. Returns the updated
// parameter. The tensor update below applies exactly this function
// elementwise, so testing the scalar form exercises the production path.
template <typename T>
inline T adam_scalar_step(T theta, T g, T& m, T& v, long long t, const TrainConfig& cfg) {
    m = static_cast<T>(cfg.beta1) * m + static_cast<T>(1.0 - cfg.beta1) * g;
    v = static_cast<T>(cfg.beta2) * v + static_cast<T>(1.0 - cfg.beta2) * g * g;
    const T m_hat = m / static_cast<T>(1.0 - std::pow(cfg.beta1, static_cast<double>(t)));
    const T v_hat = v / static_cast<T>(1.0 - std::pow(cfg.beta2, static_cast<double>(t)));
    return theta - static_cast<T>(cfg.learning_rate) * m_hat /
                       (std::sqrt(v_hat) + static_cast<T>(cfg.epsilon));
}

template <typename T>
struct AdamStateT {
    NetParamsT<T> m;
    NetParamsT<T> v;
    long long t = 0;
};
using AdamState = AdamStateT<float>;

template <typename T>
AdamStateT<T> make_adam_state(const NetConfig& cfg) {
    AdamStateT<T> s;
    detail::zero_like(s.m, cfg);
    detail::zero_like(s.v, cfg);
    return s;
}

// In-place Adam update of every parameter tensor.
template <typename T>
void adam_step(AdamStateT<T>& state, NetParamsT<T>& params, const NetParamsT<T>& grads,
               const TrainConfig& cfg) {
    cfg.require_valid();
    if (!grads.all_finite()) throw TrainingError("adam_step: non-finite gradient");
    state.t += 1;
    const long long t = state.t;

    auto update = [&](auto& theta, auto& m, auto& v, const auto& g) {
        for (Eigen::Index i = 0; i < theta.size(); ++i)
            theta.data()[i] =
                adam_scalar_step(theta.data()[i], g.data()[i], m.data()[i], v.data()[i], t, cfg);
    };
    update(params.conv1_w, state.m.conv1_w, state.v.conv1_w, grads.conv1_w);
    update(params.conv1_b, state.m.conv1_b, state.v.conv1_b, grads.conv1_b);
    update(params.conv2_w, state.m.conv2_w, state.v.conv2_w, grads.conv2_w);
    update(params.conv2_b, state.m.conv2_b, state.v.conv2_b, grads.conv2_b);
    update(params.fc1_w, state.m.fc1_w, state.v.fc1_w, grads.fc1_w);
    update(params.fc1_b, state.m.fc1_b, state.v.fc1_b, grads.fc1_b);
    update(params.fc2_w, state.m.fc2_w, state.v.fc2_w, grads.fc2_w);
    update(params.fc2_b, state.m.fc2_b, state.v.fc2_b, grads.fc2_b);
}

}  // namespace vtg
