#pragma once
#include <array>
#include <cmath>
#include <random>
#include <vector>

#include "graphnls/field.hpp"

namespace graphnls::test {

// smooth H1_Gamma field: one radial component shared by all edges plus
// per-edge bumps vanishing at the vertex; everything decays well before L
inline RealField random_smooth_field(const StarGraphGrid& g, std::mt19937& rng) {
    std::uniform_real_distribution<double> uni(-1.0, 1.0);
    const double a0 = uni(rng);
    const double x0 = 2.0 + 3.0 * std::abs(uni(rng));
    std::vector<std::array<double, 3>> per_edge;
    for (int j = 0; j < g.num_edges(); ++j)
        per_edge.push_back({uni(rng), 2.0 + 5.0 * std::abs(uni(rng)), 0.5 + std::abs(uni(rng))});
    return RealField::sample(g, [&](int j, double x) {
        double v = a0 * std::exp(-0.5 * (x - x0) * (x - x0));
        const auto& pe = per_edge[static_cast<std::size_t>(j)];
        v += pe[0] * (1.0 - std::exp(-x * x)) *
             std::exp(-(x - pe[1]) * (x - pe[1]) / (2.0 * pe[2] * pe[2]));
        return v;
    });
}

inline GraphField random_smooth_complex(const StarGraphGrid& g, std::mt19937& rng) {
    RealField re = random_smooth_field(g, rng);
    RealField im = random_smooth_field(g, rng);
    return to_complex(re, im);
}

inline GraphField gaussian_bump(const StarGraphGrid& g, int edge, double amp, double x0,
                                double width = 1.0) {
    return GraphField::sample(g, [=](int j, double x) {
        return j == edge ? cplx(amp * std::exp(-(x - x0) * (x - x0) / (width * width)), 0.0)
                         : cplx(0.0);
    });
}

inline double max_abs(const RealField& f) {
    double m = std::abs(f.vertex());
    for (double v : f.raw()) m = std::max(m, std::abs(v));
    return m;
}

} // namespace graphnls::test
