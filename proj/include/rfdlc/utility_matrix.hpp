#pragma once

#include <span>
#include <string>
#include <vector>

namespace rfdlc {

// One off-diagonal penalty cell: u(true_class, decision_class) = value.
struct Penalty {
    int true_class = 0;
    int decision_class = 0;
    double value = 0.0;
};

// K x K utility values, rows = true class y', columns = decision d.
// Entries are the exponents of the decision gain; immutable once built.
class UtilityMatrix {
public:
    enum class Kind { one_hot, tail_sensitive, penalized, raw };

    // Raw constructor: only finiteness and strictly-positive-diagonal checks.
    UtilityMatrix(int k, std::vector<double> values, Kind kind = Kind::raw);

    int num_classes() const { return k_; }
    double at(int true_class, int decision) const {
        return values_[static_cast<std::size_t>(true_class) * k_ + decision];
    }
    const std::vector<double>& values() const { return values_; }

    // Sum of column d, i.e. sum_y' u(y', d). Precomputed; used by gradients.
    double column_sum(int d) const { return col_sums_[d]; }

    Kind kind() const { return kind_; }
    double tail_penalty() const { return tail_penalty_; }
    const std::vector<Penalty>& penalties() const { return penalties_; }

    bool symmetric(double tol = 0.0) const;

private:
    friend UtilityMatrix build_tail_sensitive(int, double);
    friend UtilityMatrix build_penalized(int, const std::vector<Penalty>&);

    int k_;
    std::vector<double> values_; // row-major
    std::vector<double> col_sums_;
    Kind kind_ = Kind::raw;
    double tail_penalty_ = 0.0;       // tail_sensitive only
    std::vector<Penalty> penalties_;  // penalized only
};

// Identity utility: u(y', d) = 1 iff y' = d.
UtilityMatrix build_one_hot(int k);

// Lower-triangular tail-sensitive form: diagonal 1, entry [i][j] = u for
// i > j (true class tailer than the decision), 0 above the diagonal.
// Requires class index 0 to be the most frequent class.
UtilityMatrix build_tail_sensitive(int k, double u);

// Identity plus explicit off-diagonal penalty cells.
UtilityMatrix build_penalized(int k, const std::vector<Penalty>& penalties);

// Cartesian product of two class sets at a common value, for metaclass
// penalties (e.g. every (mammal, vehicle) pair set to -1).
std::vector<Penalty> block_penalties(const std::vector<int>& true_set,
                                     const std::vector<int>& decision_set,
                                     double value);

// log g(d | x, theta) = sum_y' u(y', d) * log p(y' | x, theta).
// log_probs must be the log of a normalized distribution.
double log_decision_gain(std::span<const double> log_probs, int d,
                         const UtilityMatrix& u);

// Throws NumericError unless sum_k exp(log_probs[k]) is within tol of 1.
void check_normalized(std::span<const double> log_probs, double tol = 1e-9);

std::string kind_name(UtilityMatrix::Kind kind);
UtilityMatrix::Kind kind_from_name(const std::string& name);

} // namespace rfdlc
