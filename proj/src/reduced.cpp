#include "graphnls/reduced.hpp"

#include <cmath>
#include <sstream>

namespace graphnls {

ReducedSystem::ReducedSystem(double p, int num_edges, std::vector<double> masses, CubicTensor tensor)
    : p_(p), num_edges_(num_edges), masses_(std::move(masses)), tensor_(std::move(tensor)) {
    if (static_cast<int>(masses_.size()) != num_edges_ - 1)
        throw DimensionError("ReducedSystem: mass count mismatch");
    for (double m : masses_)
        if (!(m > 0.0)) throw InconsistencyError("ReducedSystem: pairing <U,W> must be positive");
}

ReducedSystem ReducedSystem::build(double p, int num_edges, const StarGraphGrid& grid) {
    auto basis = neutral_basis(p, num_edges, 1.0, grid);
    return ReducedSystem(p, num_edges, basis.pairings, cubic_tensor(p, num_edges));
}

void ReducedSystem::acceleration(const std::vector<double>& gamma, std::vector<double>& acc) const {
    const int d = dim();
    const double kappa = p_ * (p_ + 1.0) * (2.0 * p_ + 1.0);
    acc.assign(static_cast<std::size_t>(d), 0.0);
    for (int j = 1; j <= d; ++j) {
        double s = 0.0;
        for (int k = 1; k <= d; ++k)
            for (int n = 1; n <= d; ++n)
                s += tensor_(k, n, j) * gamma[static_cast<std::size_t>(k - 1)] *
                     gamma[static_cast<std::size_t>(n - 1)];
        acc[static_cast<std::size_t>(j - 1)] = kappa * s / masses_[static_cast<std::size_t>(j - 1)];
    }
}

void ReducedSystem::rhs(const ReducedState& s, std::vector<double>& dgamma,
                        std::vector<double>& dbeta) const {
    if (static_cast<int>(s.gamma.size()) != dim() || static_cast<int>(s.beta.size()) != dim())
        throw DimensionError("ReducedSystem: state dimension mismatch");
    dgamma = s.beta;
    acceleration(s.gamma, dbeta);
}

double ReducedSystem::hamiltonian(const ReducedState& s) const {
    double h = m0(s.gamma, tensor_);
    for (std::size_t j = 0; j < masses_.size(); ++j) h += masses_[j] * s.beta[j] * s.beta[j];
    return h;
}

namespace {

double norm2(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

ReducedTrajectory integrate_reduced(const ReducedState& s0, const ReducedSystem& sys, double dt,
                                    double t_end, int record_stride) {
    if (!(dt > 0.0)) throw DomainError("integrate_reduced: dt > 0 required");
    if (static_cast<int>(s0.gamma.size()) != sys.dim() || static_cast<int>(s0.beta.size()) != sys.dim())
        throw DimensionError("integrate_reduced: state dimension mismatch");
    ReducedTrajectory tr;
    ReducedState s = s0;
    std::vector<double> acc, acc_new;
    sys.acceleration(s.gamma, acc);
    const long nsteps = std::lround(std::ceil((t_end - s0.t) / dt));
    tr.samples.push_back({s.t, s.gamma, s.beta, sys.hamiltonian(s)});
    for (long n = 0; n < nsteps; ++n) {
        for (std::size_t j = 0; j < s.gamma.size(); ++j)
            s.gamma[j] += dt * s.beta[j] + 0.5 * dt * dt * acc[j];
        sys.acceleration(s.gamma, acc_new);
        for (std::size_t j = 0; j < s.beta.size(); ++j)
            s.beta[j] += 0.5 * dt * (acc[j] + acc_new[j]);
        acc.swap(acc_new);
        s.t = s0.t + (n + 1) * dt;
        if ((n + 1) % record_stride == 0 || n + 1 == nsteps)
            tr.samples.push_back({s.t, s.gamma, s.beta, sys.hamiltonian(s)});
        if (norm2(s.gamma) > 10.0) {
            tr.diverged = true;
            break;
        }
    }
    return tr;
}

std::string reduced_to_csv(const ReducedTrajectory& tr, int dim) {
    std::ostringstream os;
    os << 't';
    for (int j = 1; j <= dim; ++j) os << ",gamma_" << j;
    for (int j = 1; j <= dim; ++j) os << ",beta_" << j;
    os << ",H0\n";
    os.precision(15);
    for (const auto& s : tr.samples) {
        os << s.t;
        for (double g : s.gamma) os << ',' << g;
        for (double b : s.beta) os << ',' << b;
        os << ',' << s.h0 << '\n';
    }
    return os.str();
}

double escape_time(const ReducedSystem& sys, double epsilon, const EscapeOptions& opts) {
    if (!(epsilon > 0.0 && epsilon <= 0.2))
        throw DomainError("escape_time: epsilon in (0, 0.2] required");
    const int d = sys.dim();
    // sign of the scalar-mode force coefficient; the repelling side has
    // gamma(0) with the same sign as the acceleration it produces
    const double alpha =
        sys.p() * (sys.p() + 1.0) * (2.0 * sys.p() + 1.0) * sys.tensor()(d, d, d) /
        sys.masses()[static_cast<std::size_t>(d - 1)];
    double g0 = opts.delta_scale * epsilon;
    if (opts.repelling) {
        if (alpha < 0.0) g0 = -g0;
    } else {
        if (alpha > 0.0) g0 = -g0;
    }
    ReducedState s;
    s.gamma.assign(static_cast<std::size_t>(d), 0.0);
    s.beta.assign(static_cast<std::size_t>(d), 0.0);
    s.gamma[static_cast<std::size_t>(d - 1)] = g0;
    const double t_cap = 100.0 / std::sqrt(epsilon);

    // scalar invariant reduction: integrate only the last mode
    double g = g0, b = 0.0, t = 0.0;
    double a = alpha * g * g;
    while (t < t_cap) {
        if (std::abs(g) > epsilon) return t;
        g += opts.dt * b + 0.5 * opts.dt * opts.dt * a;
        const double a_new = alpha * g * g;
        b += 0.5 * opts.dt * (a + a_new);
        a = a_new;
        t += opts.dt;
    }
    throw SolverError("escape_time: no escape before t = 100 epsilon^{-1/2}");
}

} // namespace graphnls
