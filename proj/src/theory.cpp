#include "dpercol/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpercol/error.hpp"

namespace dpercol {

namespace {

void require_unit(double v, const char *name) {
    if (!(v >= 0.0 && v <= 1.0))
        throw Error(ErrorKind::out_of_range, std::string(name) + " must lie in [0, 1], got " + std::to_string(v));
}

void require_probability(double pi) {
    if (!(pi > 0.0 && pi <= 1.0))
        throw Error(ErrorKind::out_of_range, "percolation probability must lie in (0, 1], got " + std::to_string(pi));
}

double require_mean(const DegreeDistribution &dist) {
    const double mu = dist.mean();
    if (!(mu > 0.0))
        throw Error(ErrorKind::zero_mean_degree, "mean degree is zero");
    return mu;
}

} // namespace

Eigen::MatrixXd binomial_thinning_matrix(Eigen::Index size, double pi) {
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(size, size);
    if (size == 0)
        return t;
    const double q = 1.0 - pi;
    t(0, 0) = 1.0;
    for (Eigen::Index d = 1; d < size; ++d) {
        t(d, 0) = q * t(d - 1, 0);
        for (Eigen::Index j = 1; j <= d; ++j)
            t(d, j) = q * t(d - 1, j) + pi * t(d - 1, j - 1);
    }
    return t;
}

double pgf_eval(const DegreeDistribution &dist, double x, double y) {
    require_unit(x, "x");
    require_unit(y, "y");
    return pgf(dist.table(), x, y);
}

double u_minus(const DegreeDistribution &dist, double x) {
    const double mu = require_mean(dist);
    require_unit(x, "x");
    return pgf_dy_at_one(dist.table(), x) / mu;
}

double u_plus(const DegreeDistribution &dist, double y) {
    const double mu = require_mean(dist);
    require_unit(y, "y");
    return pgf_dx_at_one(dist.table(), y) / mu;
}

DegreeDistribution bond_distribution(const DegreeDistribution &dist, double pi) {
    require_probability(pi);
    const auto &p = dist.table();
    const Eigen::MatrixXd t_in = binomial_thinning_matrix(p.rows(), pi);
    const Eigen::MatrixXd t_out = binomial_thinning_matrix(p.cols(), pi);
    DegreeDistribution::Table thinned = t_in.transpose() * p * t_out;
    return DegreeDistribution(std::move(thinned), dist.truncation_loss());
}

DegreeDistribution site_distribution(const DegreeDistribution &dist, double pi) {
    DegreeDistribution::Table table = pi * bond_distribution(dist, pi).table();
    table(0, 0) += 1.0 - pi;
    return DegreeDistribution(std::move(table), dist.truncation_loss());
}

CriticalThreshold critical_threshold(const DegreeDistribution &dist) {
    const double mu11 = dist.mu11();
    if (!(mu11 > 0.0))
        throw Error(ErrorKind::zero_mu11, "mu11 is zero: no giant strongly connected component at any pi");
    const double mu = dist.mean();
    return {mu / mu11, mu11 > mu};
}

FixedPoint solve_fixed_point(const std::function<double(double)> &map, double tol, std::size_t max_iters) {
    FixedPoint result;
    double x = 0.0;
    for (std::size_t it = 1; it <= max_iters; ++it) {
        const double next = map(x);
        result.residual = std::abs(next - x);
        result.iterations = it;
        x = next;
        if (result.residual < tol) {
            result.converged = true;
            break;
        }
    }
    result.value = x;
    return result;
}

std::string_view to_string(TheoryMode mode) noexcept {
    switch (mode) {
    case TheoryMode::bond: return "bond";
    case TheoryMode::site: return "site";
    case TheoryMode::none: return "none";
    }
    return "bond";
}

TheoryMode parse_theory_mode(std::string_view text) {
    if (text == "bond")
        return TheoryMode::bond;
    if (text == "site")
        return TheoryMode::site;
    if (text == "none")
        return TheoryMode::none;
    throw Error(ErrorKind::parse_error, "unknown theory mode '" + std::string(text) + "'");
}

double TheoryPrediction::fraction() const noexcept {
    switch (mode) {
    case TheoryMode::bond: return c_bond;
    case TheoryMode::site: return c_site;
    case TheoryMode::none: return zeta;
    }
    return c_bond;
}

namespace {

constexpr double kThresholdTolerance = 1e-12;

struct Percolated {
    double x_star = 1.0;
    double y_star = 1.0;
    double c_bond = 0.0;
    std::size_t iters = 0;
    double residual = 0.0;
    bool supercritical = false;
    bool at_threshold = false;
    bool converged = true;
    bool boundary_positive = false;
};

Percolated solve_percolated(const DegreeDistribution &dist, double mu, double mu11, double pi) {
    const auto &p = dist.table();
    const double q = 1.0 - pi;
    Percolated r;
    r.boundary_positive = pgf_dy_at_one(p, q) > 0.0 && pgf_dx_at_one(p, q) > 0.0;

    // Slope of both maps at 1 is pi mu11 / mu.
    const double slope = pi * mu11 / mu;
    r.at_threshold = std::abs(slope - 1.0) <= kThresholdTolerance;
    if (slope <= 1.0 + kThresholdTolerance)
        return r;

    r.supercritical = true;
    const auto in_map = [&](double x) { return pgf_dy_at_one(p, q + pi * x) / mu; };
    const auto out_map = [&](double y) { return pgf_dx_at_one(p, q + pi * y) / mu; };
    const FixedPoint fx = solve_fixed_point(in_map);
    const FixedPoint fy = solve_fixed_point(out_map);
    r.x_star = fx.value;
    r.y_star = fy.value;
    r.iters = std::max(fx.iterations, fy.iterations);
    r.residual = std::max(fx.residual, fy.residual);
    r.converged = fx.converged && fy.converged;

    const auto u_pi = [&](double x, double y) { return pgf(p, q + pi * x, q + pi * y); };
    r.c_bond = 1.0 - u_pi(r.x_star, 1.0) - u_pi(1.0, r.y_star) + u_pi(r.x_star, r.y_star);
    return r;
}

} // namespace

TheoryPrediction gscc_fraction(const DegreeDistribution &dist, double pi, TheoryMode mode) {
    const double mu = require_mean(dist);
    const auto threshold = critical_threshold(dist);
    const double mu11 = dist.mu11();

    TheoryPrediction pred;
    pred.mode = mode;
    pred.pi_c = threshold.pi_c;

    const Percolated unpercolated = solve_percolated(dist, mu, mu11, 1.0);
    pred.zeta = unpercolated.c_bond;

    const Percolated r = [&] {
        if (mode == TheoryMode::none) {
            pred.pi = 1.0;
            return unpercolated;
        }
        require_probability(pi);
        pred.pi = pi;
        return pi == 1.0 ? unpercolated : solve_percolated(dist, mu, mu11, pi);
    }();

    pred.x_star = r.x_star;
    pred.y_star = r.y_star;
    pred.c_bond = r.c_bond;
    pred.c_site = pred.pi * r.c_bond;
    pred.solver_iters = r.iters;
    pred.solver_residual = r.residual;
    pred.supercritical = r.supercritical;
    pred.at_threshold = r.at_threshold;
    pred.converged = r.converged;
    pred.boundary_positive = r.boundary_positive;
    return pred;
}

} // namespace dpercol
