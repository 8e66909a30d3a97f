#pragma once

#include <string>

namespace rfdlc {

// The f(n_y) forms; the importance weight is 1/f(n_y).
enum class WeightForm { linear, effective_number, sqrt, log, constant };

struct WeightSpec {
    WeightForm form = WeightForm::linear;
    double beta = 0.9995; // effective_number only

    void validate() const;
};

// 1/f(n_y): linear 1/n, effective_number (1-beta)/(1-beta^n), sqrt 1/sqrt(n),
// log 1/ln(n), constant 1.
double importance_weight(const WeightSpec& spec, long long n_y);

std::string weight_form_name(WeightForm form);
WeightForm weight_form_from_name(const std::string& name);

} // namespace rfdlc
