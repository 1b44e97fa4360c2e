#include "graphnls/modulation.hpp"

#include <cmath>
#include <sstream>

namespace graphnls {

namespace {

RealField sample_radial(const StarGraphGrid& grid, const std::function<double(double)>& f) {
    return RealField::sample_profile(grid, f,
                                     std::vector<double>(static_cast<std::size_t>(grid.num_edges()), 1.0));
}

struct FrameFields {
    RealField phi;
    RealField dphi;
    RealField d2phi;
};

FrameFields build_frame_fields(const StarGraphGrid& grid, double p, double omega) {
    SolitonProfile prof{p, omega};
    return {sample_radial(grid, [&](double x) { return prof(x); }),
            sample_radial(grid, [&](double x) { return prof.domega(x); }),
            sample_radial(grid, [&](double x) { return prof.d2omega(x); })};
}

} // namespace

ModulationFrame decompose_primary(const GraphField& psi, double p, double theta_guess,
                                  double omega_guess) {
    const StarGraphGrid& grid = psi.grid();
    double theta = theta_guess;
    double omega = omega_guess;
    const double tol = 1e-12;
    for (int it = 0; it < 30; ++it) {
        if (!(omega > 0.2 && omega < 5.0))
            throw DecompositionError("decompose_primary: omega left the validity window");
        FrameFields ff = build_frame_fields(grid, p, omega);
        GraphField rot = psi;
        rot *= std::polar(1.0, -theta);
        RealField re = real_part(rot);
        RealField im = imag_part(rot);
        RealField diff = re;
        diff -= ff.phi;
        const double g1 = l2_inner(diff, ff.phi);
        const double g2 = l2_inner(im, ff.dphi);
        if (std::abs(g1) <= tol && std::abs(g2) <= tol) {
            ModulationFrame frame{theta, omega, std::move(diff), std::move(im),
                                  std::max(std::abs(g1), std::abs(g2))};
            return frame;
        }
        const double j11 = l2_inner(im, ff.phi);
        const double j12 = -l2_inner(ff.dphi, ff.phi) + l2_inner(diff, ff.dphi);
        const double j21 = -l2_inner(re, ff.dphi);
        const double j22 = l2_inner(im, ff.d2phi);
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) throw DecompositionError("decompose_primary: singular Jacobian");
        theta -= (j22 * g1 - j12 * g2) / det;
        omega -= (-j21 * g1 + j11 * g2) / det;
    }
    throw DecompositionError("decompose_primary: Newton did not converge in 30 iterations");
}

SecondaryDecomposition decompose_secondary(const RealField& u, const RealField& w,
                                           const NeutralModeBasis& basis) {
    const std::size_t d = basis.modes.size();
    SecondaryDecomposition out{std::vector<double>(d), std::vector<double>(d), u, w, 0.0};
    for (std::size_t j = 0; j < d; ++j) {
        const double m = basis.pairings[j];
        if (!(m > 0.0))
            throw InconsistencyError("decompose_secondary: pairing <U^(j), W^(j)> must be positive");
        out.c[j] = l2_inner(u, basis.generalized[j]) / m;
        out.b[j] = l2_inner(w, basis.modes[j]) / m;
        out.u_perp.axpy(-out.c[j], basis.modes[j]);
        out.w_perp.axpy(-out.b[j], basis.generalized[j]);
    }
    double res = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
        res = std::max(res, std::abs(l2_inner(out.u_perp, basis.generalized[j])));
        res = std::max(res, std::abs(l2_inner(out.w_perp, basis.modes[j])));
    }
    out.res_secondary = res;
    return out;
}

GraphField assemble_frame(double p, double theta, double omega, const RealField& u,
                          const RealField& w) {
    FrameFields ff = build_frame_fields(u.grid(), p, omega);
    RealField re = ff.phi;
    re += u;
    GraphField out = to_complex(re, w);
    out *= std::polar(1.0, theta);
    return out;
}

ModulationSeries track(const Trajectory& traj, double p, double theta0, double omega0) {
    if (traj.snapshots.empty())
        throw DomainError("track: trajectory carries no snapshots");
    const StarGraphGrid grid = traj.snapshots.front().grid();
    ModulationSeries series;
    series.p = p;
    series.num_edges = grid.num_edges();

    const RealField phi = half_soliton(p, 1.0, grid).field;
    const double e_phi = discrete_energy(to_complex(phi), p);
    const double q_phi = l2_inner(phi, phi);
    {
        const GraphField& psi0 = traj.snapshots.front();
        const double e0 = discrete_energy(psi0, p);
        const double q0 = l2_inner(psi0, psi0).real();
        series.delta0 = e0 - e_phi + q0 - q_phi;
        series.q_offset = q0 - q_phi;
        GraphField d0 = psi0;
        d0 *= std::polar(1.0, -theta0);
        GraphField phic = to_complex(phi);
        d0 -= phic;
        series.delta_h1_initial = h1_norm(d0);
    }

    double theta = theta0;
    double omega = omega0;
    for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
        const double t = traj.snapshot_times[i];
        ModulationFrame frame(ModulationFrame{0, 0, RealField(grid), RealField(grid), 0});
        try {
            frame = decompose_primary(traj.snapshots[i], p, theta, omega);
        } catch (const DecompositionError&) {
            series.exit_time = t;
            break;
        }
        theta = frame.theta;
        omega = frame.omega;
        NeutralModeBasis basis = neutral_basis(p, grid.num_edges(), omega, grid);
        SecondaryDecomposition sec = decompose_secondary(frame.u, frame.w, basis);

        ModulationSample s;
        s.t = t;
        s.theta = theta;
        s.omega = omega;
        s.c = sec.c;
        s.b = sec.b;
        s.norm_u = h1_norm(frame.u);
        s.norm_w = h1_norm(frame.w);
        s.norm_u_perp = h1_norm(sec.u_perp);
        s.norm_w_perp = h1_norm(sec.w_perp);
        s.res_primary = frame.res_primary;
        s.res_secondary = sec.res_secondary;
        GraphField frame_field = assemble_frame(p, 0.0, omega, frame.u, frame.w);
        s.delta_lhs = discrete_energy(frame_field, p) - e_phi +
                      omega * (l2_inner(frame_field, frame_field).real() - q_phi);
        s.delta_rhs = series.delta0 + (omega - 1.0) * series.q_offset;
        series.samples.push_back(std::move(s));
    }
    return series;
}

std::string modulation_to_csv(const ModulationSeries& s) {
    std::ostringstream os;
    const int d = s.num_edges - 1;
    os << "t,theta,omega";
    for (int j = 1; j <= d; ++j) os << ",c_" << j;
    for (int j = 1; j <= d; ++j) os << ",b_" << j;
    os << ",norm_Uperp,norm_Wperp,res_primary,res_secondary,Delta_lhs,Delta_rhs\n";
    os.precision(15);
    for (const auto& x : s.samples) {
        os << x.t << ',' << x.theta << ',' << x.omega;
        for (double v : x.c) os << ',' << v;
        for (double v : x.b) os << ',' << v;
        os << ',' << x.norm_u_perp << ',' << x.norm_w_perp << ',' << x.res_primary << ','
           << x.res_secondary << ',' << x.delta_lhs << ',' << x.delta_rhs << '\n';
    }
    return os.str();
}

EnergyBudgetReport energy_budget(const ModulationSeries& series, const ReducedSystem& sys) {
    EnergyBudgetReport rep{0.0, 0.0};
    const double delta = series.delta_h1_initial;
    for (const auto& s : series.samples) {
        rep.max_identity_mismatch =
            std::max(rep.max_identity_mismatch, std::abs(s.delta_lhs - s.delta_rhs));
        double cn = 0.0, bn = 0.0;
        for (double x : s.c) cn += x * x;
        for (double x : s.b) bn += x * x;
        cn = std::sqrt(cn);
        bn = std::sqrt(bn);
        ReducedState st{s.c, s.b, s.t};
        const double h0 = sys.hamiltonian(st);
        const double numer = (s.omega - 1.0) * (s.omega - 1.0) +
                             s.norm_u_perp * s.norm_u_perp + s.norm_w_perp * s.norm_w_perp;
        const double denom = delta * delta + std::abs(h0) + cn * bn * bn + bn * bn * bn;
        if (denom > 0.0) rep.max_remainder_ratio = std::max(rep.max_remainder_ratio, numer / denom);
    }
    return rep;
}

ParameterRateReport parameter_rate_check(const ModulationSeries& series) {
    const auto& s = series.samples;
    if (s.size() < 10) throw DomainError("parameter_rate_check: series too short (< 10 samples)");
    ParameterRateReport rep{0.0, 0.0, 0.0, 0.0};
    for (std::size_t i = 1; i + 1 < s.size(); ++i) {
        const double dt = s[i + 1].t - s[i - 1].t;
        const double theta_dot = (s[i + 1].theta - s[i - 1].theta) / dt;
        const double omega_dot = (s[i + 1].omega - s[i - 1].omega) / dt;
        const double mis = std::abs(theta_dot - s[i].omega);
        const double od = std::abs(omega_dot);
        rep.sup_theta_mismatch = std::max(rep.sup_theta_mismatch, mis);
        rep.sup_omega_dot = std::max(rep.sup_omega_dot, od);
        const double uw2 = s[i].norm_u * s[i].norm_u + s[i].norm_w * s[i].norm_w;
        const double uw = s[i].norm_u * s[i].norm_w;
        if (uw2 > 1e-20) rep.sup_theta_rate = std::max(rep.sup_theta_rate, mis / uw2);
        if (uw > 1e-20) rep.sup_omega_rate = std::max(rep.sup_omega_rate, od / uw);
    }
    return rep;
}

} // namespace graphnls
