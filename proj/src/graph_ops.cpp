#include "graphnls/graph_ops.hpp"

#include <cmath>
#include <vector>

namespace graphnls {

namespace {

template <typename T>
T l2_inner_impl(const FieldT<T>& f, const FieldT<T>& g) {
    f.check_same_grid(g);
    const auto& gr = f.grid();
    const double h = gr.h();
    T vertex_term;
    if constexpr (std::is_same_v<T, cplx>)
        vertex_term = std::conj(f.vertex()) * g.vertex();
    else
        vertex_term = f.vertex() * g.vertex();
    T interior;
    if constexpr (std::is_same_v<T, cplx>)
        interior = kern::cdot(f.raw().data(), g.raw().data(), f.raw().size());
    else
        interior = kern::dot(f.raw().data(), g.raw().data(), f.raw().size());
    // vertex weight is h/2 on each of the N edges; boundary node is zero
    return static_cast<double>(gr.num_edges()) * (h / 2.0) * vertex_term + h * interior;
}

// Fills d[k], k = 0..M, with the second-order difference derivative of one
// edge (u0 = vertex value, uM = 0).
template <typename T>
void edge_derivative(const FieldT<T>& f, int j, std::vector<T>& d) {
    const auto& gr = f.grid();
    const int M = gr.points_per_edge();
    const double inv2h = 1.0 / (2.0 * gr.h());
    auto u = f.edge(j);
    const T v = f.vertex();
    d.resize(static_cast<std::size_t>(M) + 1);
    d[0] = (-3.0 * v + 4.0 * u[0] - u[1]) * inv2h;
    d[1] = (u[1] - v) * inv2h;
    for (int k = 2; k <= M - 2; ++k) d[k] = (u[k] - u[k - 2]) * inv2h;
    d[M - 1] = (T{} - u[M - 3]) * inv2h; // u_M = 0
    d[M] = (u[M - 3] - 4.0 * u[M - 2]) * inv2h;
}

template <typename T>
T d_inner_impl(const FieldT<T>& f, const FieldT<T>& g) {
    f.check_same_grid(g);
    const auto& gr = f.grid();
    const double h = gr.h();
    const int M = gr.points_per_edge();
    T acc{};
    std::vector<T> df, dg;
    for (int j = 0; j < gr.num_edges(); ++j) {
        edge_derivative(f, j, df);
        edge_derivative(g, j, dg);
        T s;
        if constexpr (std::is_same_v<T, cplx>) {
            s = 0.5 * (std::conj(df[0]) * dg[0] + std::conj(df[M]) * dg[M]);
            s += kern::cdot(df.data() + 1, dg.data() + 1, static_cast<std::size_t>(M - 1));
        } else {
            s = 0.5 * (df[0] * dg[0] + df[M] * dg[M]);
            s += kern::dot(df.data() + 1, dg.data() + 1, static_cast<std::size_t>(M - 1));
        }
        acc += h * s;
    }
    return acc;
}

template <typename T>
FieldT<T> apply_hamiltonian_impl(const FieldT<T>& f) {
    const auto& gr = f.grid();
    const double inv_h2 = 1.0 / (gr.h() * gr.h());
    const int M = gr.points_per_edge();
    const int N = gr.num_edges();
    FieldT<T> out(f.grid());
    T mean_first{};
    for (int j = 0; j < N; ++j) mean_first += f.edge(j)[0];
    mean_first *= 1.0 / static_cast<double>(N);
    out.vertex() = 2.0 * inv_h2 * (f.vertex() - mean_first);
    for (int j = 0; j < N; ++j) {
        auto u = f.edge(j);
        auto r = out.edge(j);
        const T v = f.vertex();
        r[0] = -(v - 2.0 * u[0] + u[1]) * inv_h2;
        for (int k = 1; k < M - 2; ++k) r[k] = -(u[k - 1] - 2.0 * u[k] + u[k + 1]) * inv_h2;
        r[M - 2] = -(u[M - 3] - 2.0 * u[M - 2]) * inv_h2; // u_M = 0
    }
    return out;
}

} // namespace

cplx l2_inner(const GraphField& f, const GraphField& g) { return l2_inner_impl(f, g); }
double l2_inner(const RealField& f, const RealField& g) { return l2_inner_impl(f, g); }

cplx d_inner(const GraphField& f, const GraphField& g) { return d_inner_impl(f, g); }
double d_inner(const RealField& f, const RealField& g) { return d_inner_impl(f, g); }

cplx h1_inner(const GraphField& f, const GraphField& g) {
    return l2_inner_impl(f, g) + d_inner_impl(f, g);
}
double h1_inner(const RealField& f, const RealField& g) {
    return l2_inner_impl(f, g) + d_inner_impl(f, g);
}

double l2_norm(const GraphField& f) { return std::sqrt(std::max(0.0, l2_inner(f, f).real())); }
double l2_norm(const RealField& f) { return std::sqrt(std::max(0.0, l2_inner(f, f))); }
double h1_norm(const GraphField& f) { return std::sqrt(std::max(0.0, h1_inner(f, f).real())); }
double h1_norm(const RealField& f) { return std::sqrt(std::max(0.0, h1_inner(f, f))); }

double lp_integral(const GraphField& f, double q) {
    const auto& gr = f.grid();
    const double h = gr.h();
    const double qh = q / 2.0;
    auto data = f.raw();
    double s = 0.0;
    if (qh == 2.0) {
        for (auto z : data) {
            const double a2 = z.real() * z.real() + z.imag() * z.imag();
            s += a2 * a2;
        }
    } else {
        for (auto z : data) s += std::pow(z.real() * z.real() + z.imag() * z.imag(), qh);
    }
    const double av2 = f.vertex().real() * f.vertex().real() + f.vertex().imag() * f.vertex().imag();
    return h * s + gr.num_edges() * (h / 2.0) * std::pow(av2, qh);
}

double lp_integral(const RealField& f, double q) {
    const auto& gr = f.grid();
    const double h = gr.h();
    auto data = f.raw();
    double s = 0.0;
    if (q == 4.0) {
        for (auto x : data) {
            const double x2 = x * x;
            s += x2 * x2;
        }
    } else {
        for (auto x : data) s += std::pow(std::abs(x), q);
    }
    return h * s + gr.num_edges() * (h / 2.0) * std::pow(std::abs(f.vertex()), q);
}

GraphField apply_hamiltonian(const GraphField& f) { return apply_hamiltonian_impl(f); }
RealField apply_hamiltonian(const RealField& f) { return apply_hamiltonian_impl(f); }

double dirichlet_energy(const GraphField& f) {
    const auto& gr = f.grid();
    const double inv_h = 1.0 / gr.h();
    double s = 0.0;
    for (int j = 0; j < gr.num_edges(); ++j) {
        auto u = f.edge(j);
        s += std::norm(u[0] - f.vertex());
        s += kern::cdiff_sq_sum(u.data(), u.size());
        s += std::norm(u[u.size() - 1]); // step to u_M = 0
    }
    return inv_h * s;
}

double dirichlet_energy(const RealField& f) {
    const auto& gr = f.grid();
    const double inv_h = 1.0 / gr.h();
    double s = 0.0;
    for (int j = 0; j < gr.num_edges(); ++j) {
        auto u = f.edge(j);
        const double d0 = u[0] - f.vertex();
        s += d0 * d0;
        s += kern::diff_sq_sum(u.data(), u.size());
        s += u[u.size() - 1] * u[u.size() - 1];
    }
    return inv_h * s;
}

cplx kirchhoff_flux_sum(const GraphField& f) {
    const double inv2h = 1.0 / (2.0 * f.grid().h());
    cplx s = 0.0;
    for (int j = 0; j < f.grid().num_edges(); ++j) {
        auto u = f.edge(j);
        s += (-3.0 * f.vertex() + 4.0 * u[0] - u[1]) * inv2h;
    }
    return s;
}

double kirchhoff_flux_sum(const RealField& f) {
    const double inv2h = 1.0 / (2.0 * f.grid().h());
    double s = 0.0;
    for (int j = 0; j < f.grid().num_edges(); ++j) {
        auto u = f.edge(j);
        s += (-3.0 * f.vertex() + 4.0 * u[0] - u[1]) * inv2h;
    }
    return s;
}

double distance_to_orbit(const GraphField& psi, const GraphField& phi) {
    psi.check_same_grid(phi);
    if (h1_norm(phi) == 0.0) throw DomainError("distance_to_orbit: phi = 0 leaves the phase undefined");
    const cplx c = h1_inner(phi, psi);
    const double theta = std::arg(c);
    const cplx rot = std::polar(1.0, -theta);
    GraphField diff = psi;
    diff *= rot;
    diff -= phi;
    return h1_norm(diff);
}

double distance_to_orbit(const GraphField& psi, const RealField& phi) {
    return distance_to_orbit(psi, to_complex(phi));
}

} // namespace graphnls
