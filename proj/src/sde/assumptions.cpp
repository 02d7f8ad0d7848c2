#include "riskbsde/sde/assumptions.hpp"

#include <cmath>

#include "riskbsde/rng.hpp"

namespace riskbsde::sde {

namespace {

Eigen::VectorXd sample_box(rng::SequenceStream& rs, const Eigen::VectorXd& lo,
                           const Eigen::VectorXd& hi) {
    Eigen::VectorXd v(lo.size());
    for (int i = 0; i < lo.size(); ++i) v[i] = rs.uniform(lo[i], hi[i]);
    return v;
}

Eigen::VectorXd sample_controls(rng::SequenceStream& rs, const DiffusionModel& model) {
    Eigen::VectorXd u(model.total_control_dim());
    int off = 0;
    for (const auto& bx : model.control_boxes) {
        for (int i = 0; i < bx.dim(); ++i) u[off + i] = rs.uniform(bx.lo[i], bx.hi[i]);
        off += bx.dim();
    }
    return u;
}

}  // namespace

AssumptionReport check_model_assumptions(const DiffusionModel& model, int probe_count,
                                         const Box& probe_box, std::uint64_t seed) {
    model.validate();
    probe_box.validate("probe_box");
    if (probe_box.dim() != model.state_dim)
        throw ValidationError("probe_box dimension must equal state_dim");

    AssumptionReport rep;
    rep.probes = probe_count;
    rng::SequenceStream rs(seed, 7);

    bool finite = true;
    for (int p = 0; p < probe_count; ++p) {
        const double t = rs.uniform(0.0, 1.0);
        const Eigen::VectorXd x1 = sample_box(rs, probe_box.lo, probe_box.hi);
        const Eigen::VectorXd x2 = sample_box(rs, probe_box.lo, probe_box.hi);
        const Eigen::VectorXd u1 = sample_controls(rs, model);
        const Eigen::VectorXd u2 = sample_controls(rs, model);

        const Eigen::VectorXd m1 = model.drift.eval(t, x1, u1);
        const Eigen::VectorXd m2 = model.drift.eval(t, x2, u2);
        const Eigen::MatrixXd s1 = model.diffusion.eval(t, x1, u1);
        const Eigen::MatrixXd s2 = model.diffusion.eval(t, x2, u2);
        if (!m1.allFinite() || !m2.allFinite() || !s1.allFinite() || !s2.allFinite())
            finite = false;

        const double den = (x1 - x2).norm() + (u1 - u2).norm();
        if (den > 1e-12) {
            rep.lipschitz_m = std::max(rep.lipschitz_m, (m1 - m2).norm() / den);
            rep.lipschitz_sigma = std::max(rep.lipschitz_sigma, (s1 - s2).norm() / den);
        }

        const Eigen::MatrixXd a = s1 * s1.transpose();
        const double lam = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(a)
                               .eigenvalues()
                               .minCoeff();
        if (p == 0 || lam < rep.min_eig_a) rep.min_eig_a = lam;

        const double lhs = m1.norm() + s1.norm();
        const double rhs =
            model.growth_K * (1.0 + std::pow(x1.norm(), model.growth_p) + u1.norm());
        const double margin = lhs / rhs;
        if (margin > rep.growth_margin) {
            rep.growth_margin = margin;
            rep.worst_growth_x = x1;
            rep.worst_growth_u = u1;
        }
    }

    // Box extremes are the usual growth offenders; include the corners of
    // the probe box with extreme controls.
    {
        const int d = model.state_dim;
        for (int corner = 0; corner < (1 << d); ++corner) {
            Eigen::VectorXd x(d);
            for (int i = 0; i < d; ++i)
                x[i] = (corner >> i) & 1 ? probe_box.hi[i] : probe_box.lo[i];
            Eigen::VectorXd u(model.total_control_dim());
            int off = 0;
            for (const auto& bx : model.control_boxes) {
                u.segment(off, bx.dim()) = bx.hi;
                off += bx.dim();
            }
            const Eigen::VectorXd m = model.drift.eval(0.0, x, u);
            const Eigen::MatrixXd s = model.diffusion.eval(0.0, x, u);
            const double lhs = m.norm() + s.norm();
            const double rhs =
                model.growth_K * (1.0 + std::pow(x.norm(), model.growth_p) + u.norm());
            if (lhs / rhs > rep.growth_margin) {
                rep.growth_margin = lhs / rhs;
                rep.worst_growth_x = x;
                rep.worst_growth_u = u;
            }
        }
    }

    rep.lipschitz_pass = finite && std::isfinite(rep.lipschitz_m) && std::isfinite(rep.lipschitz_sigma);
    rep.ellipticity_pass = model.ellipticity == 0.0 || rep.min_eig_a >= model.ellipticity - 1e-12;
    rep.growth_pass = rep.growth_margin <= 1.0;
    return rep;
}

}  // namespace riskbsde::sde
