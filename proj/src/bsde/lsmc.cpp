#include "riskbsde/bsde/lsmc.hpp"

#include <Eigen/Dense>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>
#include <utility>

#include "riskbsde/kernels/kernels.hpp"
#include "riskbsde/util/parallel.hpp"

namespace riskbsde::bsde {

namespace {

constexpr double kMaxCondition = 1e12;

// Monomial exponents of total degree <= deg in d variables, intercept first.
std::vector<std::array<int, 2>> monomials(int d, int deg) {
    std::vector<std::array<int, 2>> out;
    out.push_back({0, 0});
    if (d == 1) {
        for (int k = 1; k <= deg; ++k) out.push_back({k, 0});
    } else {
        for (int total = 1; total <= deg; ++total)
            for (int a = total; a >= 0; --a) out.push_back({a, total - a});
    }
    return out;
}

struct Standardizer {
    double mean[2] = {0.0, 0.0};
    double inv_sd[2] = {1.0, 1.0};
};

Standardizer standardize(const double* slab, int n, int d) {
    const auto& k = kernels::ops();
    Standardizer s;
    for (int i = 0; i < d; ++i) {
        // coordinate i is strided for d=2; gather once
        if (d == 1) {
            const double sum = util::reduce_chunks<double>(
                n, util::kDefaultChunk, 0.0,
                [&](std::size_t b, std::size_t e) { return k.reduce_sum(slab + b, e - b); },
                [](double a, double b2) { return a + b2; });
            s.mean[0] = sum / n;
            const double m = s.mean[0];
            const double sq = util::reduce_chunks<double>(
                n, util::kDefaultChunk, 0.0,
                [&](std::size_t b, std::size_t e) { return k.reduce_sq_dev(slab + b, e - b, m); },
                [](double a, double b2) { return a + b2; });
            const double sd = std::sqrt(sq / n);
            s.inv_sd[0] = sd > 1e-13 ? 1.0 / sd : 0.0;
        } else {
            double sum = 0.0;
            for (int p = 0; p < n; ++p) sum += slab[p * d + i];
            s.mean[i] = sum / n;
            double sq = 0.0;
            for (int p = 0; p < n; ++p) {
                const double dv = slab[p * d + i] - s.mean[i];
                sq += dv * dv;
            }
            const double sd = std::sqrt(sq / n);
            s.inv_sd[i] = sd > 1e-13 ? 1.0 / sd : 0.0;
        }
    }
    return s;
}

}  // namespace

BsdeSolution solve_bsde_lsmc(const sde::PathBundle& paths, const gen::BsdeGenerator& g,
                             const std::vector<double>& terminal, const LsmcBasis& basis,
                             double ridge) {
    const int N = paths.num_paths;
    const int M = paths.steps;
    const int d = paths.dim;
    if (static_cast<int>(terminal.size()) != N)
        throw ValidationError("lsmc: terminal values must supply one value per path");
    if (basis.degree < 0) throw ValidationError("lsmc: basis degree must be >= 0");
    if (d > 2) throw ValidationError("lsmc: regression basis implemented for d <= 2");
    for (double v : terminal)
        if (!std::isfinite(v)) throw ValidationError("lsmc: non-finite terminal value");

    const double dt = paths.dt();
    if (g.lipschitz() * dt >= 1.0) {
        std::ostringstream os;
        os << "lsmc: Picard step not contracting (K_g*dt = " << g.lipschitz() * dt
           << " >= 1); refine the time grid to at least "
           << static_cast<int>(std::ceil(g.lipschitz() * (paths.T - paths.t0))) + 1 << " steps";
        throw NumericalError(os.str());
    }

    const auto mono = monomials(d, basis.degree);
    const int B = static_cast<int>(mono.size());

    BsdeSolution sol;
    sol.num_paths = N;
    sol.steps = M;
    sol.z_dim = d;
    sol.ridge = ridge;
    sol.basis_degree = basis.degree;
    sol.Y.resize(static_cast<std::size_t>(M + 1) * N);
    sol.Z.resize(static_cast<std::size_t>(M) * N * d);

    std::copy(terminal.begin(), terminal.end(), sol.Y.begin() + static_cast<std::size_t>(M) * N);

    Eigen::MatrixXd design(N, B);
    design.col(0).setOnes();
    Eigen::MatrixXd targets(N, 1 + d);
    Eigen::MatrixXd powers[2];

    const auto& kern = kernels::ops();

    for (int k = M - 1; k >= 0; --k) {
        const double t = paths.time(k);
        const double* xk = paths.slab(k);
        const double* db = paths.increment_slab(k);
        const double* y_next = sol.Y.data() + static_cast<std::size_t>(k + 1) * N;
        double* y_here = sol.Y.data() + static_cast<std::size_t>(k) * N;
        double* z_here = sol.Z.data() + static_cast<std::size_t>(k) * N * d;

        if (k == 0) {
            // All paths share X_0: conditional expectation is the plain mean.
            const double mean_y = kern.reduce_sum(y_next, N) / N;
            Eigen::VectorXd zbar(d);
            for (int i = 0; i < d; ++i) {
                double acc = 0.0;
                for (int p = 0; p < N; ++p) acc += y_next[p] * db[p * d + i];
                zbar[i] = acc / (N * dt);
            }
            Eigen::VectorXd x0v(d);
            for (int i = 0; i < d; ++i) x0v[i] = xk[i];
            const double y0 = mean_y + dt * g.eval(t, x0v, mean_y, zbar);
            for (int p = 0; p < N; ++p) {
                y_here[p] = y0;
                for (int i = 0; i < d; ++i) z_here[p * d + i] = zbar[i];
            }
            sol.y0 = y0;
            sol.y0_stderr = std::sqrt(kern.reduce_sq_dev(y_next, N, mean_y) /
                                      (static_cast<double>(N) - 1.0)) /
                            std::sqrt(static_cast<double>(N));
            sol.condition_numbers.insert(sol.condition_numbers.begin(), 1.0);
            continue;
        }

        // Standardized polynomial design matrix on X_k.
        const Standardizer st = standardize(xk, N, d);
        if (d == 1) {
            if (basis.degree >= 1) {
                // Column-major N x degree block matches the kernel layout.
                kern.poly_powers(design.col(1).data(), xk, N, st.mean[0], st.inv_sd[0],
                                 basis.degree);
            }
        } else {
            for (int i = 0; i < d; ++i) {
                powers[i].resize(N, std::max(1, basis.degree));
                for (int p = 0; p < N; ++p) {
                    const double s = (xk[p * d + i] - st.mean[i]) * st.inv_sd[i];
                    double pw = s;
                    powers[i](p, 0) = pw;
                    for (int c = 1; c < basis.degree; ++c) {
                        pw *= s;
                        powers[i](p, c) = pw;
                    }
                }
            }
            for (int c = 1; c < B; ++c) {
                const auto [ax, ay] = std::pair(mono[c][0], mono[c][1]);
                if (ay == 0)
                    design.col(c) = powers[0].col(ax - 1);
                else if (ax == 0)
                    design.col(c) = powers[1].col(ay - 1);
                else
                    design.col(c) = powers[0].col(ax - 1).cwiseProduct(powers[1].col(ay - 1));
            }
        }

        // Regression targets: conditional mean of Y_{k+1} and the d
        // components of Y_{k+1} dB_k / dt.
        targets.col(0) = Eigen::Map<const Eigen::VectorXd>(y_next, N);
        for (int i = 0; i < d; ++i) {
            double* outc = targets.col(1 + i).data();
            util::parallel_chunks(N, util::kDefaultChunk,
                                  [&](std::size_t, std::size_t b, std::size_t e) {
                                      if (d == 1) {
                                          kern.mul_scale(outc + b, y_next + b, db + b, e - b,
                                                         1.0 / dt);
                                      } else {
                                          for (std::size_t p = b; p < e; ++p)
                                              outc[p] = y_next[p] * db[p * d + i] / dt;
                                      }
                                  });
        }

        Eigen::MatrixXd gram = design.transpose() * design;
        const Eigen::VectorXd eig =
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(gram).eigenvalues();
        const double lam_min = std::max(eig.minCoeff(), 0.0);
        const double cond = lam_min > 0.0 ? eig.maxCoeff() / lam_min
                                          : std::numeric_limits<double>::infinity();
        sol.condition_numbers.insert(sol.condition_numbers.begin(), cond);
        if (!(cond <= kMaxCondition)) {
            std::ostringstream os;
            os << "lsmc: regression condition number " << cond << " above 1e12 at step " << k
               << " (basis degree " << basis.degree << ")";
            throw NumericalError(os.str());
        }
        for (int c = 1; c < B; ++c) gram(c, c) += ridge;  // intercept left unpenalized

        const Eigen::MatrixXd rhs = design.transpose() * targets;
        const Eigen::MatrixXd coef = gram.ldlt().solve(rhs);
        const Eigen::MatrixXd fitted = design * coef;

        util::parallel_chunks(N, util::kDefaultChunk,
                              [&](std::size_t, std::size_t b, std::size_t e) {
                                  Eigen::VectorXd xv(d), zv(d);
                                  for (std::size_t p = b; p < e; ++p) {
                                      for (int i = 0; i < d; ++i) {
                                          xv[i] = xk[p * d + i];
                                          zv[i] = fitted(p, 1 + i);
                                          z_here[p * d + i] = zv[i];
                                      }
                                      const double ybar = fitted(p, 0);
                                      y_here[p] = ybar + dt * g.eval(t, xv, ybar, zv);
                                  }
                              });
    }

    for (double v : sol.Y)
        if (!std::isfinite(v)) throw NumericalError("lsmc: non-finite Y value produced");
    return sol;
}

}  // namespace riskbsde::bsde
