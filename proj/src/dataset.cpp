#include "rfdlc/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "rfdlc/errors.hpp"
#include "rfdlc/rng.hpp"

namespace rfdlc {

void LabeledDataset::validate() const {
    if (n < 1 || dim < 1) throw DataError("dataset must have n >= 1 and dim >= 1");
    if (num_classes < 2) throw DataError("dataset must have at least 2 classes");
    if (features.size() != n * dim) throw DataError("feature buffer size mismatch");
    if (labels.size() != n) throw DataError("label buffer size mismatch");
    for (int y : labels) {
        if (y < 0 || y >= num_classes) {
            throw DataError("label out of range: " + std::to_string(y));
        }
    }
    for (double v : features) {
        if (!std::isfinite(v)) throw DataError("non-finite feature value");
    }
}

long long ClassCounts::total() const {
    return std::accumulate(counts.begin(), counts.end(), 0LL);
}

std::vector<double> mixture_means(int k, int dim, double separation) {
    if (k < 2 || dim < 1) throw ConfigError("mixture needs k >= 2 and dim >= 1");
    if (!(separation > 0.0)) throw ConfigError("separation must be positive");
    // Lattice points in base m along each axis; distinct points differ by at
    // least `separation` in some coordinate.
    const double base = std::ceil(std::pow(static_cast<double>(k), 1.0 / dim));
    const auto m = static_cast<long long>(base);
    double capacity = 1.0;
    for (int d = 0; d < dim && capacity < static_cast<double>(k); ++d) {
        capacity *= static_cast<double>(m);
    }
    if (capacity < static_cast<double>(k)) {
        throw ConfigError("cannot place " + std::to_string(k) + " means in " +
                          std::to_string(dim) + " dimensions");
    }
    std::vector<double> means(static_cast<std::size_t>(k) * dim, 0.0);
    for (int c = 0; c < k; ++c) {
        long long rem = c;
        for (int d = 0; d < dim; ++d) {
            means[static_cast<std::size_t>(c) * dim + d] =
                static_cast<double>(rem % m) * separation;
            rem /= m;
        }
    }
    return means;
}

LabeledDataset synth_gaussian_mixture(int k, int dim, int per_class,
                                      double separation, std::uint64_t seed) {
    if (per_class < 2) throw ConfigError("per_class must be >= 2");
    const std::vector<double> means = mixture_means(k, dim, separation);

    LabeledDataset ds;
    ds.n = static_cast<std::size_t>(k) * per_class;
    ds.dim = static_cast<std::size_t>(dim);
    ds.num_classes = k;
    ds.features.resize(ds.n * ds.dim);
    ds.labels.resize(ds.n);
    ds.name = "gaussian_mixture";

    Rng rng(splitmix64(seed));
    std::size_t row = 0;
    for (int c = 0; c < k; ++c) {
        for (int s = 0; s < per_class; ++s, ++row) {
            for (std::size_t d = 0; d < ds.dim; ++d) {
                ds.features[row * ds.dim + d] =
                    means[static_cast<std::size_t>(c) * dim + d] + rng.normal();
            }
            ds.labels[row] = c;
        }
    }
    return ds;
}

LabeledDataset make_long_tailed(const LabeledDataset& ds, double rho,
                                std::uint64_t seed) {
    ds.validate();
    if (!(rho >= 1.0)) throw DataError("imbalance ratio must be >= 1");

    const int k = ds.num_classes;
    std::vector<std::vector<std::size_t>> by_class(k);
    for (std::size_t i = 0; i < ds.n; ++i) by_class[ds.labels[i]].push_back(i);

    const std::size_t per_class = by_class[0].size();
    for (const auto& idx : by_class) {
        if (idx.size() != per_class) {
            throw DataError("long-tail construction needs a balanced input");
        }
    }
    if (rho > static_cast<double>(per_class)) {
        throw DataError("infeasible imbalance: rho exceeds the per-class count");
    }

    // Kept counts follow the exponential profile; non-increasing in k.
    std::vector<long long> keep(k);
    for (int c = 0; c < k; ++c) {
        const double frac = std::pow(rho, -static_cast<double>(c) / (k - 1));
        keep[c] = std::llround(static_cast<double>(per_class) * frac);
        keep[c] = std::max(keep[c], 1LL);
    }

    Rng rng(splitmix64(seed ^ 0x6c745f7461696cULL));
    LabeledDataset out;
    out.dim = ds.dim;
    out.num_classes = k;
    out.name = ds.name + "_lt";
    for (int c = 0; c < k; ++c) {
        auto& idx = by_class[c];
        // Partial Fisher-Yates, then restore source order within the class.
        for (long long j = 0; j < keep[c]; ++j) {
            const std::size_t swap_with =
                static_cast<std::size_t>(j) + rng.below(idx.size() - j);
            std::swap(idx[j], idx[swap_with]);
        }
        idx.resize(keep[c]);
        std::sort(idx.begin(), idx.end());
        for (std::size_t i : idx) {
            out.features.insert(out.features.end(), ds.features.begin() + i * ds.dim,
                                ds.features.begin() + (i + 1) * ds.dim);
            out.labels.push_back(c);
        }
    }
    out.n = out.labels.size();
    return out;
}

ClassCounts class_counts(const LabeledDataset& ds) {
    ds.validate();
    ClassCounts cc;
    cc.counts.assign(ds.num_classes, 0);
    for (int y : ds.labels) ++cc.counts[y];
    return cc;
}

RegionSplit region_split(int k) {
    if (k < 2) throw ConfigError("region split needs k >= 2");
    const int third = k / 3;
    RegionSplit r;
    for (int c = 0; c < third; ++c) r.head.push_back(c);
    for (int c = third; c < 2 * third; ++c) r.med.push_back(c);
    for (int c = 2 * third; c < k; ++c) r.tail.push_back(c);
    return r;
}

std::vector<int> tail_set(int k, double ratio) {
    if (k < 2) throw ConfigError("tail set needs k >= 2");
    if (!(ratio > 0.0 && ratio < 1.0)) {
        throw ConfigError("tail ratio must lie in (0, 1)");
    }
    const int count = static_cast<int>(std::ceil(k * ratio));
    std::vector<int> tail;
    for (int c = k - count; c < k; ++c) tail.push_back(c);
    return tail;
}

} // namespace rfdlc
