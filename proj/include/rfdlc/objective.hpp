#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "rfdlc/dataset.hpp"
#include "rfdlc/mlp.hpp"
#include "rfdlc/utility_matrix.hpp"
#include "rfdlc/weights.hpp"

namespace rfdlc {

// Execution strategy for batch kernels. Serial is the reference
// implementation; parallel uses OpenMP over fixed-size sample blocks with an
// ordered block reduction, so results do not depend on the thread count.
enum class Exec { serial, parallel };

struct ObjectiveConfig {
    UtilityMatrix utility;
    WeightSpec weight;
    double alpha = 1.0;       // utility scaling, applies 1/alpha to the utility term
    double lambda = 0.0;      // L2 weight
    double tau = 1.0;         // annealing stride for the repulsive term
    double epsilon_var = 1e-8;

    void validate() const;
};

// log p(y|x,theta) + (1/alpha) * sum_y' u(y', y) * log p(y'|x,theta).
// The utility column is indexed by the true label (d_i = y_i in training).
double per_sample_term(std::span<const double> log_probs, int y,
                       const UtilityMatrix& u, double alpha);

// (lambda/M) * sum_j ||theta_j||^2, shared trunk included in every particle.
double l2_term(const ParticleEnsemble& ens, double lambda);

// -(1/2) * sum_k ln(max(var_k, eps)) over non-shared coordinates, with
// var_k the SWAG-diagonal particle variance. Zero for M = 1.
double repulsive_term(const ParticleEnsemble& ens, double epsilon_var);

// L2 plus unannealed repulsive part: the KL(q || p) surrogate.
double kl_regularizer(const ParticleEnsemble& ens, double lambda,
                      double epsilon_var);

// exp(-t / tau); multiplies only the repulsive part of the loss.
double anneal_weight(double t, double tau);

struct LossBreakdown {
    double total = 0.0;
    double data = 0.0;       // -(1/B) sum_i w_i (1/M) sum_j term_ij
    double l2 = 0.0;
    double repulsive = 0.0;  // unannealed
    double anneal = 1.0;
};

// Minimizing the total maximizes the integrated-gain lower bound.
LossBreakdown batch_loss_breakdown(const ParticleEnsemble& ens,
                                   const LabeledDataset& ds,
                                   std::span<const std::size_t> batch,
                                   const ClassCounts& counts,
                                   const ObjectiveConfig& cfg, double epoch,
                                   Exec exec = Exec::parallel);

double batch_loss(const ParticleEnsemble& ens, const LabeledDataset& ds,
                  std::span<const std::size_t> batch, const ClassCounts& counts,
                  const ObjectiveConfig& cfg, double epoch,
                  Exec exec = Exec::parallel);

// Exact reverse-mode gradient of batch_loss per particle. Shared trunk
// coordinates carry the tied (summed) gradient, identical across particles.
std::vector<std::vector<double>> batch_gradient(
    const ParticleEnsemble& ens, const LabeledDataset& ds,
    std::span<const std::size_t> batch, const ClassCounts& counts,
    const ObjectiveConfig& cfg, double epoch, Exec exec = Exec::parallel);

// Executable form of the one-hot reduction identity: with an identity
// utility, per_sample_term equals (1 + 1/alpha) * log p(y) for every sample
// and particle, within tol.
bool one_hot_reduction_check(const ParticleEnsemble& ens, const LabeledDataset& ds,
                             std::span<const std::size_t> batch, double alpha,
                             double tol = 1e-12);

struct GradCheckReport {
    double max_rel_err = 0.0;
    int worst_particle = -1;
    std::size_t worst_coord = 0;
    double analytic = 0.0;
    double numeric = 0.0;
    bool passed(double threshold = 1e-4) const { return max_rel_err < threshold; }
};

// Central finite differences against batch_gradient. Tied trunk coordinates
// are perturbed simultaneously across particles. corrupt_coord, when >= 0,
// offsets one analytic coordinate (negative-control hook).
GradCheckReport finite_difference_check(const ParticleEnsemble& ens,
                                        const LabeledDataset& ds,
                                        std::span<const std::size_t> batch,
                                        const ClassCounts& counts,
                                        const ObjectiveConfig& cfg, double epoch,
                                        double step = 1e-6,
                                        Exec exec = Exec::parallel,
                                        long long corrupt_coord = -1);

} // namespace rfdlc
