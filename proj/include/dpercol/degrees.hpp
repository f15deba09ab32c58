#pragma once

#include <Eigen/Dense>

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include "dpercol/rng.hpp"

namespace dpercol {

struct DegreePair {
    std::uint32_t in = 0;
    std::uint32_t out = 0;

    friend bool operator==(const DegreePair &, const DegreePair &) = default;
    friend auto operator<=>(const DegreePair &, const DegreePair &) = default;
};

/// Per-vertex (in, out) degrees with cached sums and maximum.
class DegreeSequence {
public:
    DegreeSequence() = default;
    explicit DegreeSequence(std::vector<DegreePair> pairs);

    std::span<const DegreePair> pairs() const noexcept { return pairs_; }
    const DegreePair &operator[](std::size_t v) const noexcept { return pairs_[v]; }
    std::size_t size() const noexcept { return pairs_.size(); }
    bool empty() const noexcept { return pairs_.empty(); }

    std::uint64_t in_sum() const noexcept { return in_sum_; }
    std::uint64_t out_sum() const noexcept { return out_sum_; }
    /// Number of edges; meaningful only when the sequence is valid.
    std::uint64_t edge_count() const noexcept { return in_sum_; }
    std::uint32_t max_degree() const noexcept { return max_degree_; }

    friend bool operator==(const DegreeSequence &a, const DegreeSequence &b) { return a.pairs_ == b.pairs_; }

private:
    std::vector<DegreePair> pairs_;
    std::uint64_t in_sum_ = 0;
    std::uint64_t out_sum_ = 0;
    std::uint32_t max_degree_ = 0;
};

struct Validity {
    bool valid = false;
    std::uint64_t in_sum = 0;
    std::uint64_t out_sum = 0;
};

/// Valid iff the in-degree and out-degree sums agree.
Validity validate(const DegreeSequence &seq);

/// True iff a simple digraph (no self-loops, no parallel edges) realizes `seq`.
/// Fulkerson-Chen-Anstee inequalities over the lexicographically nonincreasing
/// ordering (in-degree first, ties by out-degree), evaluated in O(n log n).
/// Throws ErrorKind::invalid_sequence if the sequence is not valid.
bool is_graphical(const DegreeSequence &seq);

struct DegreeEntry {
    std::uint32_t in = 0;
    std::uint32_t out = 0;
    double probability = 0.0;
};

/// Bivariate degree distribution p_{j,k}, stored densely: row j is the
/// in-degree, column k the out-degree. Partial moments mu_il for
/// i, l in {0, 1, 2} are cached at construction.
class DegreeDistribution {
public:
    using Table = Eigen::MatrixXd;

    /// Validates non-negativity, checks the mass is within `sum_tolerance` of 1,
    /// renormalizes, and rejects in/out mean imbalance (ErrorKind::imbalance).
    explicit DegreeDistribution(Table table, double truncation_loss = 0.0, double sum_tolerance = 1e-6);

    static DegreeDistribution from_entries(std::span<const DegreeEntry> entries, double sum_tolerance = 1e-6);

    const Table &table() const noexcept { return table_; }
    double probability(std::uint32_t in, std::uint32_t out) const noexcept;
    std::uint32_t max_in() const noexcept { return static_cast<std::uint32_t>(table_.rows() - 1); }
    std::uint32_t max_out() const noexcept { return static_cast<std::uint32_t>(table_.cols() - 1); }

    /// Nonzero entries in row-major (in, out) order.
    std::vector<DegreeEntry> support() const;

    /// sum_{j,k} j^i k^l p_{j,k}, for i, l in {0, 1, 2}.
    double moment(int i, int l) const noexcept { return moments_(i, l); }
    const Eigen::Matrix3d &moments() const noexcept { return moments_; }
    double mean() const noexcept { return moments_(1, 0); }
    double mu11() const noexcept { return moments_(1, 1); }
    double truncation_loss() const noexcept { return truncation_loss_; }

private:
    Table table_;
    Eigen::Matrix3d moments_;
    double truncation_loss_ = 0.0;
};

/// sum_{j,k} j^i k^l p_{j,k} for arbitrary i, l.
double partial_moment(const DegreeDistribution::Table &table, int i, int l);

/// Independent in/out degrees. Each marginal is cut once its remaining tail
/// drops below 1e-12 / 2, so the joint mass removed stays below 1e-12.
DegreeDistribution poisson_distribution(double lambda);
DegreeDistribution geometric_distribution(double p);
/// Point mass at (d, d).
DegreeDistribution constant_distribution(std::uint32_t d);

using CountTable = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

struct EmpiricalDistribution {
    DegreeDistribution distribution;
    CountTable counts; ///< N_{j,k}
};

/// p_{j,k} = N_{j,k} / n. Throws ErrorKind::empty_input on an empty sequence
/// and ErrorKind::invalid_sequence if it is not valid.
EmpiricalDistribution empirical_distribution(const DegreeSequence &seq);

struct PropernessReport {
    std::size_t n = 0;
    std::uint32_t d_max = 0;
    double d_max_bound = 0.0; ///< n^{1/12} / ln n
    double rho = 0.0;
    Eigen::Matrix3d empirical_moments = Eigen::Matrix3d::Zero();
    bool valid = false;
    bool graphical = false;
    bool d_max_ok = false;
    double rho_vs_dmax_ratio = 0.0;
};

/// Finite-n diagnostics for the proper-progression conditions. Never blocks sampling.
PropernessReport properness_report(const DegreeSequence &seq);

/// Draws n i.i.d. pairs from `dist`, then repairs the in/out sum imbalance:
/// a uniformly chosen vertex is redrawn and the redraw is kept when it does not
/// increase |sum in - sum out|. Fails with ErrorKind::repair_failure after 100 n redraws.
DegreeSequence realize_sequence(const DegreeDistribution &dist, std::size_t n, Stream &rng);

/// Total-variation distance between two distributions (zero-padded to a common shape).
double total_variation(const DegreeDistribution &a, const DegreeDistribution &b);

} // namespace dpercol
