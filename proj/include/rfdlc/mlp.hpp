#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace rfdlc {

// Fully connected stack (D, h_1, ..., h_L, K) with tanh hidden units and a
// log-softmax output. The first shared_trunk_layers affine layers are tied
// across particles.
struct MlpArchitecture {
    std::vector<int> layer_sizes;
    int shared_trunk_layers = 0;

    int num_layers() const { return static_cast<int>(layer_sizes.size()) - 1; }
    int input_dim() const { return layer_sizes.front(); }
    int num_classes() const { return layer_sizes.back(); }
    int max_width() const;

    // Parameter layout: per layer, row-major weights (out x in) then biases.
    std::size_t layer_param_count(int layer) const;
    std::size_t layer_offset(int layer) const;
    std::size_t param_count() const;
    std::size_t trunk_param_count() const;

    void validate() const;
    bool operator==(const MlpArchitecture&) const = default;
};

// M equally weighted parameter vectors realizing the particle variational
// distribution. Trunk coordinates are kept bit-identical across particles
// when shared_trunk_layers > 0.
struct ParticleEnsemble {
    MlpArchitecture arch;
    int m = 0;
    std::uint64_t seed = 0;
    std::vector<std::vector<double>> particles;

    std::size_t param_count() const { return arch.param_count(); }
    void validate() const;
};

// Scaled uniform fan-in initialization, distinct sub-seed per particle.
ParticleEnsemble init_ensemble(const MlpArchitecture& arch, int m,
                               std::uint64_t seed);

// Reusable per-thread buffers for forward/backward passes.
struct MlpScratch {
    std::vector<double> acts;   // z_0 .. z_{L-1} then log-probs, concatenated
    std::vector<double> delta;  // backprop buffers
    std::vector<double> delta_prev;

    void resize(const MlpArchitecture& arch);
    std::span<double> activation(const MlpArchitecture& arch, int layer);
    std::span<double> log_probs(const MlpArchitecture& arch);
};

// Log-softmax forward pass with max-shift stabilization. Activations for
// every layer are left in the scratch for a subsequent backward pass.
void forward_log_probs(const MlpArchitecture& arch, std::span<const double> theta,
                       std::span<const double> x, MlpScratch& scratch);

// Convenience allocating variant.
std::vector<double> forward_log_probs(const MlpArchitecture& arch,
                                      std::span<const double> theta,
                                      std::span<const double> x);

// Accumulates d(loss)/d(theta) into grad given d(loss)/d(logits), using the
// activations stored by the preceding forward_log_probs call.
void backward_from_logits(const MlpArchitecture& arch, std::span<const double> theta,
                          std::span<const double> dlogits, MlpScratch& scratch,
                          std::span<double> grad);

// M x K row-major matrix of per-particle log probabilities.
std::vector<double> ensemble_log_probs(const ParticleEnsemble& ens,
                                       std::span<const double> x);

struct Predictive {
    std::vector<double> probs;
    double entropy = 0.0;
};

// Mean of per-particle softmaxes and its Shannon entropy (nats).
Predictive predictive_distribution(const ParticleEnsemble& ens,
                                   std::span<const double> x);

} // namespace rfdlc
