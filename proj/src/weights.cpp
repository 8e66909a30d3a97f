#include "rfdlc/weights.hpp"

#include <cmath>

#include "rfdlc/errors.hpp"

namespace rfdlc {

void WeightSpec::validate() const {
    if (form == WeightForm::effective_number && !(beta > 0.0 && beta < 1.0)) {
        throw ConfigError("effective_number beta must lie in (0, 1)");
    }
}

double importance_weight(const WeightSpec& spec, long long n_y) {
    if (n_y < 1) throw DataError("class count must be >= 1");
    const double n = static_cast<double>(n_y);
    switch (spec.form) {
        case WeightForm::linear:
            return 1.0 / n;
        case WeightForm::effective_number: {
            spec.validate();
            return (1.0 - spec.beta) / (1.0 - std::pow(spec.beta, n));
        }
        case WeightForm::sqrt:
            return 1.0 / std::sqrt(n);
        case WeightForm::log:
            if (n_y == 1) {
                throw DataError("singular weight: log form with n_y = 1");
            }
            return 1.0 / std::log(n);
        case WeightForm::constant:
            return 1.0;
    }
    throw ConfigError("unknown weight form");
}

std::string weight_form_name(WeightForm form) {
    switch (form) {
        case WeightForm::linear: return "linear";
        case WeightForm::effective_number: return "effective_number";
        case WeightForm::sqrt: return "sqrt";
        case WeightForm::log: return "log";
        case WeightForm::constant: return "constant";
    }
    throw ConfigError("unknown weight form");
}

WeightForm weight_form_from_name(const std::string& name) {
    if (name == "linear") return WeightForm::linear;
    if (name == "effective_number") return WeightForm::effective_number;
    if (name == "sqrt") return WeightForm::sqrt;
    if (name == "log") return WeightForm::log;
    if (name == "constant") return WeightForm::constant;
    throw ConfigError("unknown weight form: " + name);
}

} // namespace rfdlc
