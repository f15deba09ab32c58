#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <functional>
#include <string_view>

#include "dpercol/degrees.hpp"

namespace dpercol {

/// (1, x, x^2, ..., x^{size-1}); 0^0 = 1.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> powers(Scalar x, Eigen::Index size) {
    Eigen::Matrix<Scalar, Eigen::Dynamic, 1> v(size);
    Scalar acc(1);
    for (Eigen::Index i = 0; i < size; ++i) {
        v(i) = acc;
        acc *= x;
    }
    return v;
}

/// (0, 1, ..., size-1).
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, 1> degree_ramp(Eigen::Index size) {
    return Eigen::Matrix<Scalar, Eigen::Dynamic, 1>::LinSpaced(size, Scalar(0), Scalar(size - 1));
}

/// U(x, y) = sum_{j,k} p_{j,k} x^j y^k over a table indexed (in, out).
template <typename Derived>
typename Derived::Scalar pgf(const Eigen::MatrixBase<Derived> &table, typename Derived::Scalar x,
                             typename Derived::Scalar y) {
    using Scalar = typename Derived::Scalar;
    return powers<Scalar>(x, table.rows()).dot(table * powers<Scalar>(y, table.cols()));
}

/// sum_{j,k} k p_{j,k} x^j  (d/dy U at y = 1, not yet divided by the mean).
template <typename Derived>
typename Derived::Scalar pgf_dy_at_one(const Eigen::MatrixBase<Derived> &table, typename Derived::Scalar x) {
    using Scalar = typename Derived::Scalar;
    return powers<Scalar>(x, table.rows()).dot(table * degree_ramp<Scalar>(table.cols()));
}

/// sum_{j,k} j p_{j,k} y^k  (d/dx U at x = 1, not yet divided by the mean).
template <typename Derived>
typename Derived::Scalar pgf_dx_at_one(const Eigen::MatrixBase<Derived> &table, typename Derived::Scalar y) {
    using Scalar = typename Derived::Scalar;
    return degree_ramp<Scalar>(table.rows()).dot(table * powers<Scalar>(y, table.cols()));
}

/// Lower-triangular T with T(d, j) = C(d, j) pi^j (1 - pi)^{d - j}: row d is
/// the law of Bin(d, pi). Built by the Pascal recurrence, so pi = 1 gives the
/// identity exactly.
Eigen::MatrixXd binomial_thinning_matrix(Eigen::Index size, double pi);

/// U(x, y). Arguments must lie in [0, 1].
double pgf_eval(const DegreeDistribution &dist, double x, double y);

/// U^-(x) = mu^{-1} sum k p_{j,k} x^j.
double u_minus(const DegreeDistribution &dist, double x);
/// U^+(y) = mu^{-1} sum j p_{j,k} y^k.
double u_plus(const DegreeDistribution &dist, double y);

/// Degree distribution after bond percolation: independent binomial thinning
/// of both degrees, T_in^T P T_out.
DegreeDistribution bond_distribution(const DegreeDistribution &dist, double pi);

/// Degree distribution after site percolation: pi times the bond table, plus
/// 1 - pi moved to (0, 0).
DegreeDistribution site_distribution(const DegreeDistribution &dist, double pi);

struct CriticalThreshold {
    double pi_c = 0.0;
    bool supercritical_possible = false; ///< mu11 > mu
};

/// pi_c = mu / mu11. Throws ErrorKind::zero_mu11 when mu11 == 0.
CriticalThreshold critical_threshold(const DegreeDistribution &dist);

struct FixedPoint {
    double value = 0.0;
    std::size_t iterations = 0;
    double residual = 0.0; ///< |last step|
    bool converged = false;
};

/// Smallest fixed point of a nondecreasing map on [0, 1] with map(1) = 1, by
/// monotone iteration from 0. Stops when successive iterates differ by less
/// than `tol`; on hitting `max_iters` the last iterate is returned with
/// converged = false.
FixedPoint solve_fixed_point(const std::function<double(double)> &map, double tol = 1e-12,
                             std::size_t max_iters = 1'000'000);

enum class TheoryMode { bond, site, none };

std::string_view to_string(TheoryMode mode) noexcept;
TheoryMode parse_theory_mode(std::string_view text);

struct TheoryPrediction {
    TheoryMode mode = TheoryMode::bond;
    double pi = 1.0;
    double pi_c = 0.0;
    double x_star = 1.0;
    double y_star = 1.0;
    double c_bond = 0.0;
    double c_site = 0.0;
    double zeta = 0.0; ///< GSCC fraction of the unpercolated graph
    std::size_t solver_iters = 0;
    double solver_residual = 0.0;
    bool supercritical = false;
    /// pi equals pi_c to within 1e-12 relative; c is reported as 0 there.
    bool at_threshold = false;
    bool converged = true;
    /// U^-_pi(0) > 0 and U^+_pi(0) > 0, required for the giant-component formula.
    bool boundary_positive = false;

    /// c_bond, c_site or zeta according to `mode`.
    double fraction() const noexcept;
};

/// Predicted largest-SCC fraction after percolation with probability pi. x*
/// and y* are the smallest fixed points of x -> U^-(1 - pi + pi x) and
/// y -> U^+(1 - pi + pi y); c_bond = 1 - U_pi(x*, 1) - U_pi(1, y*) + U_pi(x*, y*)
/// with U_pi(x, y) = U(1 - pi + pi x, 1 - pi + pi y), and c_site = pi c_bond.
/// Mode `none` ignores pi and evaluates at pi = 1.
TheoryPrediction gscc_fraction(const DegreeDistribution &dist, double pi, TheoryMode mode);

} // namespace dpercol
