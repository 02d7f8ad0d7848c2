#include "riskbsde/viability/checks.hpp"

#include <cmath>

#include "riskbsde/rng.hpp"

namespace riskbsde::viability {

ViabilityReport check_membership(const std::function<Eigen::VectorXd(int, int)>& value, int count_a,
                                 int count_b, const ConvexSetK& K, double tol) {
    ViabilityReport rep;
    rep.tol = tol;
    rep.first_exit_histogram.assign(count_b, 0);
    long inside = 0;
    for (int a = 0; a < count_a; ++a) {
        bool exited = false;
        for (int b = 0; b < count_b; ++b) {
            const Eigen::VectorXd y = value(a, b);
            if (!y.allFinite()) throw ValidationError("viability: non-finite sample value");
            const double d2 = K.dist_sq(y);
            ++rep.total_samples;
            if (d2 <= tol * tol) {
                ++inside;
            } else if (!exited) {
                exited = true;
                ++rep.first_exit_histogram[b];
            }
            if (d2 > rep.worst_dist_sq) {
                rep.worst_dist_sq = d2;
                rep.worst_a = a;
                rep.worst_b = b;
            }
        }
    }
    rep.fraction = rep.total_samples ? static_cast<double>(inside) / rep.total_samples : 1.0;
    rep.viable = inside == rep.total_samples;
    return rep;
}

Eigen::MatrixXd numeric_hessian_dist_sq(const ConvexSetK& K, const Eigen::VectorXd& y, double step,
                                        double* asymmetry) {
    const int n = K.dim();
    // Inner gradient uses half the outer step so that H_ij and H_ji probe
    // different stencils; a single symmetric cross formula would hide
    // non-smoothness by construction.
    const double h = step;
    const double delta = 0.5 * step;
    auto grad_component = [&](const Eigen::VectorXd& w, int j) {
        Eigen::VectorXd wp = w, wm = w;
        wp[j] += delta;
        wm[j] -= delta;
        return (K.dist_sq(wp) - K.dist_sq(wm)) / (2.0 * delta);
    };
    Eigen::MatrixXd H(n, n);
    for (int i = 0; i < n; ++i) {
        Eigen::VectorXd yp = y, ym = y;
        yp[i] += h;
        ym[i] -= h;
        for (int j = 0; j < n; ++j)
            H(i, j) = (grad_component(yp, j) - grad_component(ym, j)) / (2.0 * h);
    }
    if (asymmetry) {
        double defect = 0.0;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j) defect = std::max(defect, std::abs(H(i, j) - H(j, i)));
        *asymmetry = defect;
    }
    return 0.5 * (H + H.transpose());
}

bool BsvpReport::holds_with(double C) const {
    if (vacuous) return true;
    return C >= c_star_sup - 1e-12;
}

BsvpReport check_bsvp_inequality(const sde::DiffusionModel& model,
                                 const std::vector<const gen::BsdeGenerator*>& block_generators,
                                 const ConvexSetK& K, const BsvpSamplerConfig& cfg) {
    model.validate();
    const int n = K.dim();
    const int d = model.state_dim;
    if (static_cast<int>(block_generators.size()) != n)
        throw ValidationError("bsvp: one block generator per K dimension required");
    if (cfg.y_lo.size() != n || cfg.y_hi.size() != n)
        throw ValidationError("bsvp: sampling box must match K dimension");

    BsvpReport rep;
    rep.requested = cfg.num_samples;
    rng::SequenceStream rs(cfg.seed, 23);

    for (int s = 0; s < cfg.num_samples; ++s) {
        BsvpSample smp;
        bool ok = false;
        Eigen::MatrixXd H;
        for (int attempt = 0; attempt < cfg.max_resamples_per_point; ++attempt) {
            smp.t = rs.uniform(0.0, 1.0);
            smp.x.resize(d);
            for (int i = 0; i < d; ++i) smp.x[i] = rs.uniform(-cfg.x_scale, cfg.x_scale);
            smp.y.resize(n);
            for (int i = 0; i < n; ++i) smp.y[i] = rs.uniform(cfg.y_lo[i], cfg.y_hi[i]);
            smp.z.resize(n, d);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < d; ++j) smp.z(i, j) = rs.uniform(-cfg.z_scale, cfg.z_scale);
            smp.u.resize(model.total_control_dim());
            int off = 0;
            for (const auto& bx : model.control_boxes) {
                for (int i = 0; i < bx.dim(); ++i) smp.u[off + i] = rs.uniform(bx.lo[i], bx.hi[i]);
                off += bx.dim();
            }
            const double step = cfg.hessian_step_rel * (1.0 + smp.y.norm());
            double defect = 0.0;
            H = numeric_hessian_dist_sq(K, smp.y, step, &defect);
            if (defect <= cfg.symmetry_tol) {
                ok = true;
                break;
            }
            ++rep.resampled;
        }
        if (!ok) continue;  // could not find a smooth point nearby; skip

        const Eigen::MatrixXd sigma = model.diffusion.eval(smp.t, smp.x, smp.u);
        const Eigen::MatrixXd zs = smp.z * sigma;

        Eigen::VectorXd gvec(n);
        for (int j = 0; j < n; ++j)
            gvec[j] = block_generators[j]->eval(smp.t, smp.x, smp.y[j], zs.row(j).transpose());

        const Eigen::VectorXd resid = smp.y - K.project(smp.y);
        smp.lhs = resid.dot(gvec);
        double quad = 0.0;
        for (int c = 0; c < d; ++c) quad += zs.col(c).dot(H * zs.col(c));
        smp.quad = 0.25 * quad;
        smp.dist_sq = resid.squaredNorm();

        ++rep.accepted;
        if (smp.dist_sq > 1e-14) {
            ++rep.exterior;
            smp.c_star = std::max(0.0, (smp.lhs - smp.quad) / smp.dist_sq);
            if (smp.c_star >= rep.c_star_sup) {
                rep.c_star_sup = smp.c_star;
                rep.worst = smp;
            }
        } else {
            smp.c_star = 0.0;
            // Interior: the inequality must hold outright (lhs = 0 <= quad + anything).
            if (smp.lhs > smp.quad + 1e-12) rep.violations.push_back(smp);
        }
    }
    rep.vacuous = rep.exterior == 0;
    return rep;
}

}  // namespace riskbsde::viability
