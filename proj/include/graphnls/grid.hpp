#pragma once
#include <cstddef>

#include "graphnls/errors.hpp"

namespace graphnls {

// Uniform discretization of the star graph: N truncated half-lines [0, L]
// glued at x = 0, with nodes x_k = k*h, h = L/M, k = 0..M. Node 0 is the
// common vertex, node M carries a homogeneous Dirichlet condition.
class StarGraphGrid {
public:
    StarGraphGrid(int num_edges, double edge_length, int points_per_edge)
        : num_edges_(num_edges), edge_length_(edge_length), points_per_edge_(points_per_edge) {
        if (num_edges < 3) throw DomainError("StarGraphGrid: N >= 3 required");
        if (!(edge_length > 0.0)) throw DomainError("StarGraphGrid: L > 0 required");
        if (points_per_edge < 16) throw DomainError("StarGraphGrid: M >= 16 required");
        h_ = edge_length_ / points_per_edge_;
    }

    int num_edges() const { return num_edges_; }
    double edge_length() const { return edge_length_; }
    int points_per_edge() const { return points_per_edge_; }
    double h() const { return h_; }
    double x(int k) const { return k * h_; }
    // number of interior nodes per edge (k = 1..M-1)
    std::size_t interior_size() const { return static_cast<std::size_t>(points_per_edge_ - 1); }

    bool operator==(const StarGraphGrid& o) const {
        return num_edges_ == o.num_edges_ && edge_length_ == o.edge_length_ &&
               points_per_edge_ == o.points_per_edge_;
    }
    bool operator!=(const StarGraphGrid& o) const { return !(*this == o); }

private:
    int num_edges_;
    double edge_length_;
    int points_per_edge_;
    double h_;
};

} // namespace graphnls
