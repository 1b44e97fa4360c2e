#pragma once
#include <cmath>
#include <string>
#include <vector>

#include "graphnls/errors.hpp"

namespace graphnls {

enum class DeltaRule { Eps32, EpsLinear, Explicit };

// Flat key = value experiment configuration; '#' starts a comment. Unknown
// keys are rejected so typos die loudly.
struct ExperimentConfig {
    double p = 1.0;
    int N = 3;
    double L = 30.0;
    int M = 600;
    double dt = 5e-3;
    double t_end = 40.0;
    double epsilon = 0.05;
    DeltaRule delta_rule = DeltaRule::Eps32;
    double delta_value = 0.0;      // explicit rule
    double delta_coeff = 0.2;      // eps_linear rule: delta = delta_coeff * epsilon
    std::vector<double> direction; // coefficients on U^(1..N-1); empty = last mode
    double seed_phase = 0.0;
    std::string out = "runs/out";
    int stride = 10;
    double solver_tol = 1e-12;
    int max_fixed_point_iters = 100;
    std::vector<double> eps_list = {0.025, 0.05, 0.1};
    double dt_reduced = 1e-3;
    double delta_scale = 0.25; // reduced-run initial amplitude, ||gamma(0)|| = delta_scale*eps
    std::vector<double> snapshot_times;
    bool assert_escape = false;
    bool assert_slope = false;
    double slope_target = -0.5;
    double slope_tol = 0.15;

    double delta(double eps) const {
        switch (delta_rule) {
            case DeltaRule::Eps32: return std::pow(eps, 1.5);
            case DeltaRule::EpsLinear: return delta_coeff * eps;
            case DeltaRule::Explicit: return delta_value;
        }
        return 0.0;
    }

    void validate() const;
    std::string echo() const; // round-trippable key = value text

    static ExperimentConfig from_file(const std::string& path);
    static ExperimentConfig from_text(const std::string& text);
    void apply_override(const std::string& key_eq_value);
};

} // namespace graphnls
