#include "riskbsde/gen/generator.hpp"

#include <cmath>

#include "riskbsde/rng.hpp"

namespace riskbsde::gen {

GeneratorAssumptionReport check_assumption1(const GeneratorFunctional& g, int probes,
                                            std::uint64_t seed) {
    if (probes < 100) throw ValidationError("check_assumption1: probes must be >= 100");

    GeneratorAssumptionReport rep;
    rep.probes = probes;
    rng::SequenceStream rs(seed, 11);

    const double K = g.lipschitz();
    const Eigen::VectorXd z0 = Eigen::VectorXd::Zero(g.z_dim);
    bool finite = true;
    for (int p = 0; p < probes; ++p) {
        const double t = rs.uniform(0.0, 1.0);
        const double y1 = rs.uniform(-5.0, 5.0);
        const double y2 = rs.uniform(-5.0, 5.0);
        Eigen::VectorXd zv1(g.z_dim), zv2(g.z_dim);
        for (int i = 0; i < g.z_dim; ++i) {
            zv1[i] = rs.uniform(-5.0, 5.0);
            zv2[i] = rs.uniform(-5.0, 5.0);
        }
        const double g1 = g.eval(t, y1, zv1);
        const double g2 = g.eval(t, y2, zv2);
        if (!std::isfinite(g1) || !std::isfinite(g2)) finite = false;
        const double den = std::abs(y1 - y2) + (zv1 - zv2).norm();
        if (den > 1e-12)
            rep.max_lipschitz_quotient = std::max(rep.max_lipschitz_quotient, std::abs(g1 - g2) / den);
        rep.max_abs_g_at_z0 = std::max(rep.max_abs_g_at_z0, std::abs(g.eval(t, y1, z0)));
    }

    rep.lipschitz_pass = finite && rep.max_lipschitz_quotient <= K * (1.0 + 1e-9) + 1e-12;
    rep.integrability_pass = std::isfinite(g.eval(0.0, 0.0, z0));
    rep.vanishes_pass = rep.max_abs_g_at_z0 <= 1e-12;
    return rep;
}

}  // namespace riskbsde::gen
