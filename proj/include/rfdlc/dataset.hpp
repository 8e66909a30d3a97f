#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rfdlc {

// Row-major feature matrix with integer labels in [0, num_classes).
// Immutable after construction; class index 0 is the most frequent class
// once make_long_tailed has run.
struct LabeledDataset {
    std::size_t n = 0;
    std::size_t dim = 0;
    int num_classes = 0;
    std::vector<double> features; // n * dim
    std::vector<int> labels;      // n
    std::string name;

    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * dim, dim};
    }
    void validate() const;
};

struct ClassCounts {
    std::vector<long long> counts;

    int num_classes() const { return static_cast<int>(counts.size()); }
    long long total() const;
};

// Balanced Gaussian mixture: class k is an isotropic unit-variance Gaussian
// centered on a lattice point scaled so means are at least `separation`
// apart. Deterministic in seed.
LabeledDataset synth_gaussian_mixture(int k, int dim, int per_class,
                                      double separation, std::uint64_t seed);

// Deterministic lattice of class means used by synth_gaussian_mixture.
std::vector<double> mixture_means(int k, int dim, double separation);

// Exponential-profile subsample: class k keeps round(n * rho^(-k/(K-1)))
// of its samples, chosen uniformly without replacement. Input must be
// balanced; output counts are non-increasing in the class index.
LabeledDataset make_long_tailed(const LabeledDataset& ds, double rho,
                                std::uint64_t seed);

ClassCounts class_counts(const LabeledDataset& ds);

struct RegionSplit {
    std::vector<int> head;
    std::vector<int> med;
    std::vector<int> tail;
};

// Head/med/tail of sizes floor(K/3), floor(K/3), remainder-to-tail.
RegionSplit region_split(int k);

// The last ceil(K * ratio) class indices, ratio in (0, 1).
std::vector<int> tail_set(int k, double ratio);

} // namespace rfdlc
