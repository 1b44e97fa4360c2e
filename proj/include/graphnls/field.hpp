#pragma once
#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "graphnls/grid.hpp"
#include "graphnls/kernels.hpp"

namespace graphnls {

using cplx = std::complex<double>;

// A field on the discrete star graph. Vertex continuity (H1) is enforced by
// construction: all edges share a single storage slot for the value at x = 0.
// The outer boundary value at x = L is identically zero (Dirichlet truncation)
// and is not stored. Interior samples (k = 1..M-1) of all edges live in one
// contiguous array, edge-major, so the quadrature kernels can run over it
// in a single pass.
template <typename T>
class FieldT {
public:
    explicit FieldT(const StarGraphGrid& grid)
        : grid_(grid), vertex_(T{}),
          data_(static_cast<std::size_t>(grid.num_edges()) * grid.interior_size(), T{}) {}

    // Samples f(edge, x) at all nodes. The vertex value is taken from edge 0;
    // fun must be edge-continuous at x = 0 for this to be meaningful.
    static FieldT sample(const StarGraphGrid& grid, const std::function<T(int, double)>& fun) {
        FieldT f(grid);
        f.vertex_ = fun(0, 0.0);
        for (int j = 0; j < grid.num_edges(); ++j) {
            auto e = f.edge(j);
            for (std::size_t k = 0; k < e.size(); ++k)
                e[k] = fun(j, grid.x(static_cast<int>(k) + 1));
        }
        return f;
    }

    // Same profile on every edge, scaled per edge by weights[j]. Requires
    // profile(0)*weights[j] to agree across edges unless profile(0) == 0;
    // the vertex slot gets profile(0)*weights[0].
    static FieldT sample_profile(const StarGraphGrid& grid, const std::function<double(double)>& profile,
                                 const std::vector<double>& weights) {
        FieldT f(grid);
        std::vector<double> prof(grid.interior_size());
        for (std::size_t k = 0; k < prof.size(); ++k)
            prof[k] = profile(grid.x(static_cast<int>(k) + 1));
        f.vertex_ = static_cast<T>(profile(0.0) * weights[0]);
        for (int j = 0; j < grid.num_edges(); ++j) {
            auto e = f.edge(j);
            for (std::size_t k = 0; k < e.size(); ++k)
                e[k] = static_cast<T>(prof[k] * weights[static_cast<std::size_t>(j)]);
        }
        return f;
    }

    const StarGraphGrid& grid() const { return grid_; }

    T vertex() const { return vertex_; }
    T& vertex() { return vertex_; }

    std::span<T> edge(int j) {
        return {data_.data() + static_cast<std::size_t>(j) * grid_.interior_size(), grid_.interior_size()};
    }
    std::span<const T> edge(int j) const {
        return {data_.data() + static_cast<std::size_t>(j) * grid_.interior_size(), grid_.interior_size()};
    }

    // value at node k of edge j, with the boundary convention value(j, M) = 0
    T value(int j, int k) const {
        if (k == 0) return vertex_;
        if (k == grid_.points_per_edge()) return T{};
        return edge(j)[static_cast<std::size_t>(k - 1)];
    }

    std::span<T> raw() { return {data_.data(), data_.size()}; }
    std::span<const T> raw() const { return {data_.data(), data_.size()}; }

    void fill(T v) {
        vertex_ = v;
        for (auto& x : data_) x = v;
    }

    FieldT& operator*=(T s) {
        vertex_ *= s;
        for (auto& x : data_) x *= s;
        return *this;
    }

    FieldT& operator+=(const FieldT& o) {
        check_same_grid(o);
        vertex_ += o.vertex_;
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
        return *this;
    }

    FieldT& operator-=(const FieldT& o) {
        check_same_grid(o);
        vertex_ -= o.vertex_;
        for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
        return *this;
    }

    // this += alpha * x
    void axpy(T alpha, const FieldT& x);

    void check_same_grid(const FieldT& o) const {
        if (grid_ != o.grid_) throw DimensionError("fields live on different grids");
    }

private:
    StarGraphGrid grid_; // by value: fields own their geometry and stay valid on copy/move
    T vertex_;
    std::vector<T> data_;
};

template <>
inline void FieldT<double>::axpy(double alpha, const FieldT<double>& x) {
    check_same_grid(x);
    vertex_ += alpha * x.vertex_;
    kern::axpy(alpha, x.data_.data(), data_.data(), data_.size());
}

template <>
inline void FieldT<cplx>::axpy(cplx alpha, const FieldT<cplx>& x) {
    check_same_grid(x);
    vertex_ += alpha * x.vertex_;
    kern::caxpy(alpha, x.data_.data(), data_.data(), data_.size());
}

using RealField = FieldT<double>;
using GraphField = FieldT<cplx>;

inline GraphField to_complex(const RealField& re) {
    GraphField f(re.grid());
    f.vertex() = re.vertex();
    auto dst = f.raw();
    auto src = re.raw();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i];
    return f;
}

inline GraphField to_complex(const RealField& re, const RealField& im) {
    re.check_same_grid(im);
    GraphField f(re.grid());
    f.vertex() = {re.vertex(), im.vertex()};
    auto dst = f.raw();
    auto sre = re.raw();
    auto sim = im.raw();
    for (std::size_t i = 0; i < sre.size(); ++i) dst[i] = {sre[i], sim[i]};
    return f;
}

inline RealField real_part(const GraphField& f) {
    RealField r(f.grid());
    r.vertex() = f.vertex().real();
    auto dst = r.raw();
    auto src = f.raw();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i].real();
    return r;
}

inline RealField imag_part(const GraphField& f) {
    RealField r(f.grid());
    r.vertex() = f.vertex().imag();
    auto dst = r.raw();
    auto src = f.raw();
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i].imag();
    return r;
}

} // namespace graphnls
