#include "dpercol/degrees.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dpercol/error.hpp"

namespace dpercol {

DegreeSequence::DegreeSequence(std::vector<DegreePair> pairs) : pairs_(std::move(pairs)) {
    for (const auto &p : pairs_) {
        in_sum_ += p.in;
        out_sum_ += p.out;
        max_degree_ = std::max({max_degree_, p.in, p.out});
    }
}

Validity validate(const DegreeSequence &seq) {
    return {seq.in_sum() == seq.out_sum(), seq.in_sum(), seq.out_sum()};
}

namespace {

class Fenwick {
public:
    explicit Fenwick(std::size_t n) : tree_(n + 1, 0) {}

    void add(std::size_t i) {
        for (++i; i < tree_.size(); i += i & (~i + 1))
            ++tree_[i];
    }

    /// Number of inserted values <= i.
    std::int64_t prefix(std::size_t i) const {
        std::int64_t s = 0;
        for (++i; i > 0; i -= i & (~i + 1))
            s += tree_[i];
        return s;
    }

private:
    std::vector<std::int64_t> tree_;
};

} // namespace

bool is_graphical(const DegreeSequence &seq) {
    if (!validate(seq).valid)
        throw Error(ErrorKind::invalid_sequence, "degree sequence is not valid: in-degree sum "
                                                     + std::to_string(seq.in_sum()) + " != out-degree sum "
                                                     + std::to_string(seq.out_sum()));
    const std::size_t n = seq.size();
    if (n == 0)
        return true;

    std::vector<DegreePair> sorted(seq.pairs().begin(), seq.pairs().end());
    std::sort(sorted.begin(), sorted.end(), [](const DegreePair &a, const DegreePair &b) {
        return a.in != b.in ? a.in > b.in : a.out > b.out;
    });

    // Out-degrees above n behave like n in every min(out, k) with k <= n.
    auto clamp = [n](std::uint32_t d) { return std::min<std::size_t>(d, n); };

    // at_least[t] = #{i : out_i >= t}
    std::vector<std::int64_t> at_least(n + 2, 0);
    for (const auto &p : sorted)
        ++at_least[clamp(p.out)];
    for (std::size_t t = n; t-- > 0;)
        at_least[t] += at_least[t + 1];

    Fenwick prefix_outs(n + 1);
    std::int64_t lhs = 0;
    std::int64_t sum_min_all = 0; // sum_i min(out_i, k)
    for (std::size_t k = 1; k <= n; ++k) {
        lhs += sorted[k - 1].in;
        sum_min_all += at_least[k];
        prefix_outs.add(clamp(sorted[k - 1].out));
        // Vertices among the first k whose out-degree reaches k lose one in the
        // min(out_i, k - 1) term: no self-loops.
        const std::int64_t capped = static_cast<std::int64_t>(k) - prefix_outs.prefix(k - 1);
        if (lhs > sum_min_all - capped)
            return false;
    }
    return true;
}

double partial_moment(const DegreeDistribution::Table &table, int i, int l) {
    const Eigen::VectorXd rows = Eigen::VectorXd::LinSpaced(table.rows(), 0.0, double(table.rows() - 1)).array().pow(i);
    const Eigen::VectorXd cols = Eigen::VectorXd::LinSpaced(table.cols(), 0.0, double(table.cols() - 1)).array().pow(l);
    return rows.dot(table * cols);
}

DegreeDistribution::DegreeDistribution(Table table, double truncation_loss, double sum_tolerance)
    : truncation_loss_(truncation_loss) {
    if (table.size() == 0)
        throw Error(ErrorKind::invalid_distribution, "degree distribution has no entries");
    if (!table.allFinite() || (table.array() < 0.0).any())
        throw Error(ErrorKind::invalid_distribution, "degree distribution has negative or non-finite entries");
    const double total = table.sum();
    if (!(std::abs(total - 1.0) <= sum_tolerance))
        throw Error(ErrorKind::invalid_distribution,
                    "degree distribution sums to " + std::to_string(total) + ", expected 1");

    Eigen::Index rows = table.rows();
    Eigen::Index cols = table.cols();
    while (rows > 1 && table.row(rows - 1).head(cols).isZero(0.0))
        --rows;
    while (cols > 1 && table.col(cols - 1).head(rows).isZero(0.0))
        --cols;
    table_ = table.topLeftCorner(rows, cols) / total;

    for (int i = 0; i < 3; ++i)
        for (int l = 0; l < 3; ++l)
            moments_(i, l) = partial_moment(table_, i, l);

    const double mu_in = moments_(1, 0);
    const double mu_out = moments_(0, 1);
    if (std::abs(mu_in - mu_out) > 1e-9 * std::max(1.0, std::abs(mu_in)))
        throw Error(ErrorKind::imbalance, "mean in-degree " + std::to_string(mu_in) + " != mean out-degree "
                                              + std::to_string(mu_out));
}

DegreeDistribution DegreeDistribution::from_entries(std::span<const DegreeEntry> entries, double sum_tolerance) {
    if (entries.empty())
        throw Error(ErrorKind::invalid_distribution, "degree distribution has no entries");
    std::uint32_t max_in = 0, max_out = 0;
    for (const auto &e : entries) {
        max_in = std::max(max_in, e.in);
        max_out = std::max(max_out, e.out);
    }
    Table table = Table::Zero(max_in + 1, max_out + 1);
    for (const auto &e : entries) {
        if (!(e.probability >= 0.0))
            throw Error(ErrorKind::invalid_distribution, "negative probability in degree distribution");
        table(e.in, e.out) += e.probability;
    }
    return DegreeDistribution(std::move(table), 0.0, sum_tolerance);
}

double DegreeDistribution::probability(std::uint32_t in, std::uint32_t out) const noexcept {
    if (in >= table_.rows() || out >= table_.cols())
        return 0.0;
    return table_(in, out);
}

std::vector<DegreeEntry> DegreeDistribution::support() const {
    std::vector<DegreeEntry> entries;
    for (Eigen::Index j = 0; j < table_.rows(); ++j)
        for (Eigen::Index k = 0; k < table_.cols(); ++k)
            if (table_(j, k) > 0.0)
                entries.push_back({static_cast<std::uint32_t>(j), static_cast<std::uint32_t>(k), table_(j, k)});
    return entries;
}

namespace {

constexpr double kTailCut = 1e-12;

template <typename Pmf>
Eigen::VectorXd truncated_marginal(Pmf pmf) {
    std::vector<double> probs;
    double kept = 0.0;
    for (std::uint32_t k = 0;; ++k) {
        const double p = pmf(k);
        probs.push_back(p);
        kept += p;
        if (1.0 - kept < kTailCut / 2 || k > 100000)
            break;
    }
    return Eigen::Map<Eigen::VectorXd>(probs.data(), static_cast<Eigen::Index>(probs.size()));
}

DegreeDistribution independent_product(const Eigen::VectorXd &marginal) {
    DegreeDistribution::Table table = marginal * marginal.transpose();
    const double loss = 1.0 - table.sum();
    return DegreeDistribution(std::move(table), std::max(0.0, loss));
}

} // namespace

DegreeDistribution poisson_distribution(double lambda) {
    if (!(lambda > 0.0) || !std::isfinite(lambda))
        throw Error(ErrorKind::invalid_distribution, "poisson rate must be positive");
    const auto marginal = truncated_marginal(
        [lambda](std::uint32_t k) { return std::exp(k * std::log(lambda) - lambda - std::lgamma(k + 1.0)); });
    return independent_product(marginal);
}

DegreeDistribution geometric_distribution(double p) {
    if (!(p > 0.0 && p <= 1.0))
        throw Error(ErrorKind::invalid_distribution, "geometric parameter must lie in (0, 1]");
    const auto marginal =
        truncated_marginal([p](std::uint32_t k) { return p * std::pow(1.0 - p, static_cast<double>(k)); });
    return independent_product(marginal);
}

DegreeDistribution constant_distribution(std::uint32_t d) {
    DegreeDistribution::Table table = DegreeDistribution::Table::Zero(d + 1, d + 1);
    table(d, d) = 1.0;
    return DegreeDistribution(std::move(table));
}

EmpiricalDistribution empirical_distribution(const DegreeSequence &seq) {
    if (seq.empty())
        throw Error(ErrorKind::empty_input, "empirical distribution of an empty degree sequence");
    if (!validate(seq).valid)
        throw Error(ErrorKind::invalid_sequence, "empirical distribution of an invalid degree sequence");
    std::uint32_t max_in = 0, max_out = 0;
    for (const auto &p : seq.pairs()) {
        max_in = std::max(max_in, p.in);
        max_out = std::max(max_out, p.out);
    }
    CountTable counts = CountTable::Zero(max_in + 1, max_out + 1);
    for (const auto &p : seq.pairs())
        ++counts(p.in, p.out);
    DegreeDistribution::Table table = counts.cast<double>() / static_cast<double>(seq.size());
    return {DegreeDistribution(std::move(table)), std::move(counts)};
}

PropernessReport properness_report(const DegreeSequence &seq) {
    const auto validity = validate(seq);
    if (!validity.valid)
        throw Error(ErrorKind::invalid_sequence, "properness report requires a valid degree sequence");
    PropernessReport report;
    report.n = seq.size();
    report.d_max = seq.max_degree();
    report.valid = true;
    report.graphical = is_graphical(seq);
    if (report.n == 0)
        return report;

    const double n = static_cast<double>(report.n);
    report.d_max_bound = std::pow(n, 1.0 / 12.0) / std::log(n);
    report.d_max_ok = report.d_max <= report.d_max_bound;

    const auto empirical = empirical_distribution(seq);
    const CountTable &counts = empirical.counts;
    report.empirical_moments = empirical.distribution.moments();
    double j2k = 0.0, jk2 = 0.0, mu = 0.0;
    for (Eigen::Index j = 0; j < counts.rows(); ++j)
        for (Eigen::Index k = 0; k < counts.cols(); ++k) {
            const double c = static_cast<double>(counts(j, k));
            j2k += double(j * j * k) * c;
            jk2 += double(j * k * k) * c;
            mu += double(j) * c;
        }
    mu /= n;
    report.rho = mu > 0.0 ? std::max(j2k, jk2) / (mu * n) : 0.0;
    report.rho_vs_dmax_ratio = report.d_max > 0 ? report.rho / report.d_max : 0.0;
    return report;
}

namespace {

class PairSampler {
public:
    explicit PairSampler(const DegreeDistribution &dist) : entries_(dist.support()) {
        cumulative_.reserve(entries_.size());
        double acc = 0.0;
        for (const auto &e : entries_) {
            acc += e.probability;
            cumulative_.push_back(acc);
        }
    }

    DegreePair draw(Stream &rng) const {
        const double u = rng.uniform() * cumulative_.back();
        auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
        if (it == cumulative_.end())
            --it;
        const auto &e = entries_[static_cast<std::size_t>(it - cumulative_.begin())];
        return {e.in, e.out};
    }

private:
    std::vector<DegreeEntry> entries_;
    std::vector<double> cumulative_;
};

} // namespace

DegreeSequence realize_sequence(const DegreeDistribution &dist, std::size_t n, Stream &rng) {
    if (n == 0)
        throw Error(ErrorKind::out_of_range, "realize_sequence requires n >= 1");
    const PairSampler sampler(dist);
    std::vector<DegreePair> pairs(n);
    std::int64_t imbalance = 0;
    for (auto &p : pairs) {
        p = sampler.draw(rng);
        imbalance += std::int64_t(p.in) - std::int64_t(p.out);
    }

    const std::uint64_t cap = 100 * static_cast<std::uint64_t>(n);
    for (std::uint64_t redraws = 0; imbalance != 0; ++redraws) {
        if (redraws >= cap)
            throw Error(ErrorKind::repair_failure, "could not balance in/out degree sums after "
                                                       + std::to_string(cap) + " redraws");
        auto &slot = pairs[rng.below(n)];
        const DegreePair fresh = sampler.draw(rng);
        const std::int64_t next = imbalance - (std::int64_t(slot.in) - std::int64_t(slot.out))
                                  + (std::int64_t(fresh.in) - std::int64_t(fresh.out));
        if (std::abs(next) <= std::abs(imbalance)) {
            slot = fresh;
            imbalance = next;
        }
    }
    return DegreeSequence(std::move(pairs));
}

double total_variation(const DegreeDistribution &a, const DegreeDistribution &b) {
    const Eigen::Index rows = std::max(a.table().rows(), b.table().rows());
    const Eigen::Index cols = std::max(a.table().cols(), b.table().cols());
    DegreeDistribution::Table pa = DegreeDistribution::Table::Zero(rows, cols);
    DegreeDistribution::Table pb = DegreeDistribution::Table::Zero(rows, cols);
    pa.topLeftCorner(a.table().rows(), a.table().cols()) = a.table();
    pb.topLeftCorner(b.table().rows(), b.table().cols()) = b.table();
    return 0.5 * (pa - pb).cwiseAbs().sum();
}

} // namespace dpercol
