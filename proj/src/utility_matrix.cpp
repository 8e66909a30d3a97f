#include "rfdlc/utility_matrix.hpp"

#include <cmath>
#include <set>
#include <stdexcept>
#include <utility>

#include "rfdlc/errors.hpp"

namespace rfdlc {

namespace {

std::vector<double> column_sums(int k, const std::vector<double>& values) {
    std::vector<double> sums(k, 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            sums[j] += values[static_cast<std::size_t>(i) * k + j];
        }
    }
    return sums;
}

} // namespace

UtilityMatrix::UtilityMatrix(int k, std::vector<double> values, Kind kind)
    : k_(k), values_(std::move(values)), kind_(kind) {
    if (k_ < 2) {
        throw ConfigError("utility matrix needs at least 2 classes, got " +
                          std::to_string(k_));
    }
    if (values_.size() != static_cast<std::size_t>(k_) * k_) {
        throw ConfigError("utility matrix values must be k*k");
    }
    for (double v : values_) {
        if (!std::isfinite(v)) throw ConfigError("utility matrix entry not finite");
    }
    for (int i = 0; i < k_; ++i) {
        if (at(i, i) <= 0.0) {
            throw ConfigError("utility matrix diagonal must be strictly positive");
        }
    }
    col_sums_ = column_sums(k_, values_);
}

bool UtilityMatrix::symmetric(double tol) const {
    for (int i = 0; i < k_; ++i) {
        for (int j = i + 1; j < k_; ++j) {
            if (std::abs(at(i, j) - at(j, i)) > tol) return false;
        }
    }
    return true;
}

UtilityMatrix build_one_hot(int k) {
    if (k < 2) throw ConfigError("one-hot utility needs k >= 2");
    std::vector<double> values(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) values[static_cast<std::size_t>(i) * k + i] = 1.0;
    return UtilityMatrix(k, std::move(values), UtilityMatrix::Kind::one_hot);
}

UtilityMatrix build_tail_sensitive(int k, double u) {
    if (u < -1.0 || u > 0.0) {
        throw ConfigError("tail-sensitive penalty must lie in [-1, 0], got " +
                          std::to_string(u));
    }
    std::vector<double> values(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) {
            values[static_cast<std::size_t>(i) * k + j] = (i == j) ? 1.0 : (i > j ? u : 0.0);
        }
    }
    UtilityMatrix m(k, std::move(values), UtilityMatrix::Kind::tail_sensitive);
    m.tail_penalty_ = u;
    return m;
}

UtilityMatrix build_penalized(int k, const std::vector<Penalty>& penalties) {
    if (k < 2) throw ConfigError("penalized utility needs k >= 2");
    std::vector<double> values(static_cast<std::size_t>(k) * k, 0.0);
    for (int i = 0; i < k; ++i) values[static_cast<std::size_t>(i) * k + i] = 1.0;

    std::set<std::pair<int, int>> seen;
    for (const Penalty& p : penalties) {
        if (p.true_class < 0 || p.true_class >= k || p.decision_class < 0 ||
            p.decision_class >= k) {
            throw ConfigError("penalty cell out of range: (" +
                              std::to_string(p.true_class) + ", " +
                              std::to_string(p.decision_class) + ")");
        }
        if (p.true_class == p.decision_class) {
            throw ConfigError("penalty on the diagonal is not allowed");
        }
        if (p.value < -1.0 || p.value >= 0.0) {
            throw ConfigError("penalty value must lie in [-1, 0)");
        }
        if (!seen.insert({p.true_class, p.decision_class}).second) {
            throw ConfigError("conflicting penalties for cell (" +
                              std::to_string(p.true_class) + ", " +
                              std::to_string(p.decision_class) + ")");
        }
        values[static_cast<std::size_t>(p.true_class) * k + p.decision_class] = p.value;
    }
    UtilityMatrix m(k, std::move(values), UtilityMatrix::Kind::penalized);
    m.penalties_ = penalties;
    return m;
}

std::vector<Penalty> block_penalties(const std::vector<int>& true_set,
                                     const std::vector<int>& decision_set,
                                     double value) {
    std::vector<Penalty> out;
    out.reserve(true_set.size() * decision_set.size());
    for (int t : true_set) {
        for (int d : decision_set) out.push_back({t, d, value});
    }
    return out;
}

void check_normalized(std::span<const double> log_probs, double tol) {
    double sum = 0.0;
    for (double lp : log_probs) sum += std::exp(lp);
    if (!(std::abs(sum - 1.0) <= tol)) {
        throw NumericError("log probabilities are not normalized: sum(exp) = " +
                           std::to_string(sum));
    }
}

double log_decision_gain(std::span<const double> log_probs, int d,
                         const UtilityMatrix& u) {
    const int k = u.num_classes();
    if (static_cast<int>(log_probs.size()) != k) {
        throw std::out_of_range("log_probs length does not match utility size");
    }
    if (d < 0 || d >= k) throw std::out_of_range("decision index out of range");
    check_normalized(log_probs);
    double gain = 0.0;
    for (int y = 0; y < k; ++y) gain += u.at(y, d) * log_probs[y];
    return gain;
}

std::string kind_name(UtilityMatrix::Kind kind) {
    switch (kind) {
        case UtilityMatrix::Kind::one_hot: return "one_hot";
        case UtilityMatrix::Kind::tail_sensitive: return "tail_sensitive";
        case UtilityMatrix::Kind::penalized: return "penalized";
        case UtilityMatrix::Kind::raw: return "raw";
    }
    throw ConfigError("unknown utility kind");
}

UtilityMatrix::Kind kind_from_name(const std::string& name) {
    if (name == "one_hot") return UtilityMatrix::Kind::one_hot;
    if (name == "tail_sensitive") return UtilityMatrix::Kind::tail_sensitive;
    if (name == "penalized") return UtilityMatrix::Kind::penalized;
    if (name == "raw") return UtilityMatrix::Kind::raw;
    throw ConfigError("unknown utility kind: " + name);
}

} // namespace rfdlc
