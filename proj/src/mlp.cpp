#include "rfdlc/mlp.hpp"

#include <algorithm>
#include <cmath>

#include "rfdlc/errors.hpp"
#include "rfdlc/rng.hpp"

namespace rfdlc {

int MlpArchitecture::max_width() const {
    return *std::max_element(layer_sizes.begin(), layer_sizes.end());
}

std::size_t MlpArchitecture::layer_param_count(int layer) const {
    const auto out = static_cast<std::size_t>(layer_sizes[layer + 1]);
    const auto in = static_cast<std::size_t>(layer_sizes[layer]);
    return out * in + out;
}

std::size_t MlpArchitecture::layer_offset(int layer) const {
    std::size_t off = 0;
    for (int l = 0; l < layer; ++l) off += layer_param_count(l);
    return off;
}

std::size_t MlpArchitecture::param_count() const {
    return layer_offset(num_layers());
}

std::size_t MlpArchitecture::trunk_param_count() const {
    return layer_offset(shared_trunk_layers);
}

void MlpArchitecture::validate() const {
    if (layer_sizes.size() < 2) {
        throw ConfigError("architecture needs at least input and output sizes");
    }
    for (int s : layer_sizes) {
        if (s < 1) throw ConfigError("layer sizes must be positive");
    }
    if (layer_sizes.back() < 2) {
        throw ConfigError("output layer must have at least 2 classes");
    }
    if (shared_trunk_layers < 0 || shared_trunk_layers >= num_layers()) {
        throw ConfigError("shared_trunk_layers must lie in [0, num_layers)");
    }
}

void ParticleEnsemble::validate() const {
    arch.validate();
    if (m < 1 || particles.size() != static_cast<std::size_t>(m)) {
        throw ConfigError("ensemble must hold m >= 1 particles");
    }
    const std::size_t p = arch.param_count();
    for (const auto& theta : particles) {
        if (theta.size() != p) throw ConfigError("particle length mismatch");
    }
    const std::size_t trunk = arch.trunk_param_count();
    for (int j = 1; j < m; ++j) {
        for (std::size_t c = 0; c < trunk; ++c) {
            if (particles[j][c] != particles[0][c]) {
                throw ConfigError("shared trunk diverged across particles");
            }
        }
    }
}

ParticleEnsemble init_ensemble(const MlpArchitecture& arch, int m,
                               std::uint64_t seed) {
    arch.validate();
    if (m < 1) throw ConfigError("ensemble needs m >= 1");

    ParticleEnsemble ens;
    ens.arch = arch;
    ens.m = m;
    ens.seed = seed;
    ens.particles.assign(m, std::vector<double>(arch.param_count(), 0.0));

    for (int j = 0; j < m; ++j) {
        Rng rng(splitmix64(seed + 0x9e3779b9ULL * static_cast<std::uint64_t>(j + 1)));
        auto& theta = ens.particles[j];
        for (int l = 0; l < arch.num_layers(); ++l) {
            const int out = arch.layer_sizes[l + 1];
            const int in = arch.layer_sizes[l];
            const double bound = std::sqrt(1.0 / in);
            double* w = theta.data() + arch.layer_offset(l);
            for (int i = 0; i < out * in; ++i) w[i] = rng.uniform(-bound, bound);
            // biases stay zero
        }
    }
    // Tie the trunk to particle 0's draw.
    const std::size_t trunk = arch.trunk_param_count();
    for (int j = 1; j < m; ++j) {
        std::copy_n(ens.particles[0].begin(), trunk, ens.particles[j].begin());
    }
    return ens;
}

void MlpScratch::resize(const MlpArchitecture& arch) {
    std::size_t total = 0;
    for (int l = 0; l < static_cast<int>(arch.layer_sizes.size()); ++l) {
        total += static_cast<std::size_t>(arch.layer_sizes[l]);
    }
    acts.resize(total);
    delta.resize(arch.max_width());
    delta_prev.resize(arch.max_width());
}

std::span<double> MlpScratch::activation(const MlpArchitecture& arch, int layer) {
    std::size_t off = 0;
    for (int l = 0; l < layer; ++l) off += static_cast<std::size_t>(arch.layer_sizes[l]);
    return {acts.data() + off, static_cast<std::size_t>(arch.layer_sizes[layer])};
}

std::span<double> MlpScratch::log_probs(const MlpArchitecture& arch) {
    return activation(arch, static_cast<int>(arch.layer_sizes.size()) - 1);
}

void forward_log_probs(const MlpArchitecture& arch, std::span<const double> theta,
                       std::span<const double> x, MlpScratch& scratch) {
    scratch.resize(arch);
    const int layers = arch.num_layers();
    std::copy(x.begin(), x.end(), scratch.activation(arch, 0).begin());

    for (int l = 0; l < layers; ++l) {
        const int out = arch.layer_sizes[l + 1];
        const int in = arch.layer_sizes[l];
        const double* w = theta.data() + arch.layer_offset(l);
        const double* b = w + static_cast<std::size_t>(out) * in;
        auto z_in = scratch.activation(arch, l);
        auto z_out = scratch.activation(arch, l + 1);
        for (int r = 0; r < out; ++r) {
            double acc = b[r];
            const double* wr = w + static_cast<std::size_t>(r) * in;
            for (int c = 0; c < in; ++c) acc += wr[c] * z_in[c];
            z_out[r] = (l + 1 < layers) ? std::tanh(acc) : acc;
        }
    }

    auto logits = scratch.log_probs(arch);
    double mx = logits[0];
    for (double v : logits) mx = std::max(mx, v);
    if (!std::isfinite(mx)) throw NumericError("non-finite activation in forward pass");
    double sum = 0.0;
    for (double v : logits) sum += std::exp(v - mx);
    const double lse = mx + std::log(sum);
    for (double& v : logits) v -= lse;
}

std::vector<double> forward_log_probs(const MlpArchitecture& arch,
                                      std::span<const double> theta,
                                      std::span<const double> x) {
    MlpScratch scratch;
    forward_log_probs(arch, theta, x, scratch);
    auto lp = scratch.log_probs(arch);
    return {lp.begin(), lp.end()};
}

void backward_from_logits(const MlpArchitecture& arch, std::span<const double> theta,
                          std::span<const double> dlogits, MlpScratch& scratch,
                          std::span<double> grad) {
    const int layers = arch.num_layers();
    std::copy(dlogits.begin(), dlogits.end(), scratch.delta.begin());

    for (int l = layers - 1; l >= 0; --l) {
        const int out = arch.layer_sizes[l + 1];
        const int in = arch.layer_sizes[l];
        const double* w = theta.data() + arch.layer_offset(l);
        double* gw = grad.data() + arch.layer_offset(l);
        double* gb = gw + static_cast<std::size_t>(out) * in;
        auto z_in = scratch.activation(arch, l);

        for (int r = 0; r < out; ++r) {
            const double d = scratch.delta[r];
            double* gwr = gw + static_cast<std::size_t>(r) * in;
            for (int c = 0; c < in; ++c) gwr[c] += d * z_in[c];
            gb[r] += d;
        }
        if (l > 0) {
            for (int c = 0; c < in; ++c) {
                double acc = 0.0;
                for (int r = 0; r < out; ++r) {
                    acc += scratch.delta[r] * w[static_cast<std::size_t>(r) * in + c];
                }
                scratch.delta_prev[c] = acc * (1.0 - z_in[c] * z_in[c]);
            }
            std::swap(scratch.delta, scratch.delta_prev);
        }
    }
}

std::vector<double> ensemble_log_probs(const ParticleEnsemble& ens,
                                       std::span<const double> x) {
    const int k = ens.arch.num_classes();
    std::vector<double> out(static_cast<std::size_t>(ens.m) * k);
    MlpScratch scratch;
    for (int j = 0; j < ens.m; ++j) {
        forward_log_probs(ens.arch, ens.particles[j], x, scratch);
        auto lp = scratch.log_probs(ens.arch);
        std::copy(lp.begin(), lp.end(), out.begin() + static_cast<std::size_t>(j) * k);
    }
    return out;
}

Predictive predictive_distribution(const ParticleEnsemble& ens,
                                   std::span<const double> x) {
    const int k = ens.arch.num_classes();
    const std::vector<double> lp = ensemble_log_probs(ens, x);
    Predictive pred;
    pred.probs.assign(k, 0.0);
    for (int j = 0; j < ens.m; ++j) {
        for (int c = 0; c < k; ++c) {
            pred.probs[c] += std::exp(lp[static_cast<std::size_t>(j) * k + c]);
        }
    }
    for (double& p : pred.probs) p /= ens.m;
    double h = 0.0;
    for (double p : pred.probs) {
        if (p > 0.0) h -= p * std::log(p);
    }
    pred.entropy = h;
    return pred;
}

} // namespace rfdlc
