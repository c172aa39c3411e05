#include "linkhide/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>

namespace linkhide {

namespace {

void require_finite(std::span<const double> xs) {
    for (double x : xs)
        if (std::isnan(x))
            throw MetricError("NaN score in ranking");
}

// Counts of sorted `xs` strictly below and equal to `value`.
std::pair<std::uint64_t, std::uint64_t> below_equal(const std::vector<double>& xs, double value) {
    auto lo = std::lower_bound(xs.begin(), xs.end(), value);
    auto hi = std::upper_bound(lo, xs.end(), value);
    return {std::uint64_t(lo - xs.begin()), std::uint64_t(hi - lo)};
}

}  // namespace

double auc(const ScoredRanking& r) {
    if (r.probe.empty())
        throw MetricError("auc: probe set is empty");
    if (r.rest_size() == 0)
        throw MetricError("auc: no non-probe non-edges");
    require_finite(r.probe);
    require_finite(r.rest);

    std::vector<double> rest = r.rest;
    std::sort(rest.begin(), rest.end());
    // 2 * (#greater + #ties / 2), kept integral
    std::uint64_t twice = 0;
    for (double q : r.probe) {
        auto [below, equal] = below_equal(rest, q);
        if (r.implicit_rest > 0) {
            if (r.implicit_score < q)
                below += r.implicit_rest;
            else if (r.implicit_score == q)
                equal += r.implicit_rest;
        }
        twice += 2 * below + equal;
    }
    return double(twice) / (2.0 * double(r.probe.size()) * double(r.rest_size()));
}

double average_precision(const ScoredRanking& r) {
    if (r.probe.empty())
        throw MetricError("average_precision: probe set is empty");
    require_finite(r.probe);
    require_finite(r.rest);

    std::vector<double> probe = r.probe;
    std::vector<double> rest = r.rest;
    std::sort(probe.begin(), probe.end());
    std::sort(rest.begin(), rest.end());
    const std::uint64_t nq = probe.size();
    const std::uint64_t nx = rest.size();

    double total = 0.0;
    for (double e : probe) {
        auto [q_below, q_equal] = below_equal(probe, e);
        auto [x_below, x_equal] = below_equal(rest, e);
        std::uint64_t x_above = nx - x_below - x_equal;
        if (r.implicit_rest > 0) {
            if (r.implicit_score > e)
                x_above += r.implicit_rest;
            else if (r.implicit_score == e)
                x_equal += r.implicit_rest;
        }
        const std::uint64_t q_above = nq - q_below - q_equal;
        const std::uint64_t q_ties = q_equal - 1;  // excluding e itself
        const double numerator = double(2 * q_above + 2 + q_ties);
        const double denominator = double(2 * (q_above + x_above) + 2 + q_ties + x_equal);
        total += numerator / denominator;
    }
    return total / double(nq);
}

ScoredRanking make_ranking(std::span<const ScoredPair> scores, std::span<const Edge> probe) {
    std::vector<Edge> hidden(probe.begin(), probe.end());
    std::sort(hidden.begin(), hidden.end());
    if (std::adjacent_find(hidden.begin(), hidden.end()) != hidden.end())
        throw MetricError("make_ranking: duplicate probe pair");
    if (!std::is_sorted(scores.begin(), scores.end(),
                        [](const ScoredPair& x, const ScoredPair& y) { return x.pair < y.pair; }))
        throw MetricError("make_ranking: scores must be ascending by pair");

    ScoredRanking out;
    out.probe.reserve(hidden.size());
    out.rest.reserve(scores.size());
    auto h = hidden.begin();
    for (const auto& sp : scores) {
        while (h != hidden.end() && *h < sp.pair)
            throw MetricError("make_ranking: probe pair (" + std::to_string(h->a) + "," +
                              std::to_string(h->b) + ") is not a scored non-edge");
        if (h != hidden.end() && *h == sp.pair) {
            out.probe.push_back(sp.score);
            ++h;
        } else {
            out.rest.push_back(sp.score);
        }
    }
    if (h != hidden.end())
        throw MetricError("make_ranking: probe pair (" + std::to_string(h->a) + "," +
                          std::to_string(h->b) + ") is not a scored non-edge");
    return out;
}

namespace {

struct Ordered {
    std::vector<char> is_probe;  // in ranked order
    std::size_t nq = 0;
    bool tie_broken = false;
};

Ordered order_for_curve(std::span<const ScoredPair> scores, std::span<const Edge> probe) {
    std::vector<Edge> hidden(probe.begin(), probe.end());
    std::sort(hidden.begin(), hidden.end());
    std::vector<std::size_t> idx(scores.size());
    std::iota(idx.begin(), idx.end(), std::size_t(0));
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) {
        if (scores[i].score != scores[j].score)
            return scores[i].score > scores[j].score;
        return scores[i].pair < scores[j].pair;
    });
    Ordered out;
    out.is_probe.reserve(idx.size());
    for (std::size_t i : idx) {
        bool p = std::binary_search(hidden.begin(), hidden.end(), scores[i].pair);
        out.is_probe.push_back(p);
        out.nq += p;
    }
    if (out.nq != hidden.size())
        throw MetricError("curve: some probe pairs are not scored non-edges");
    if (out.nq == 0 || out.nq == idx.size())
        throw MetricError("curve: probe set and rest must both be nonempty");
    // Flag tie classes that mix probe and rest elements.
    for (std::size_t k = 0; k < idx.size();) {
        std::size_t end = k;
        bool any_q = false, any_x = false;
        while (end < idx.size() && scores[idx[end]].score == scores[idx[k]].score) {
            (out.is_probe[end] ? any_q : any_x) = true;
            ++end;
        }
        out.tie_broken |= any_q && any_x;
        k = end;
    }
    return out;
}

}  // namespace

Curve roc_points(std::span<const ScoredPair> scores, std::span<const Edge> probe) {
    auto ord = order_for_curve(scores, probe);
    const double nq = double(ord.nq);
    const double nx = double(ord.is_probe.size() - ord.nq);
    Curve c{{}, ord.tie_broken};
    c.points.reserve(ord.is_probe.size());
    std::size_t tp = 0, fp = 0;
    for (char p : ord.is_probe) {
        (p ? tp : fp) += 1;
        c.points.push_back({double(fp) / nx, double(tp) / nq});
    }
    return c;
}

Curve pr_points(std::span<const ScoredPair> scores, std::span<const Edge> probe) {
    auto ord = order_for_curve(scores, probe);
    const double nq = double(ord.nq);
    Curve c{{}, ord.tie_broken};
    c.points.reserve(ord.is_probe.size());
    std::size_t tp = 0, k = 0;
    for (char p : ord.is_probe) {
        tp += p;
        ++k;
        c.points.push_back({double(tp) / nq, double(tp) / double(k)});
    }
    return c;
}

void write_curve_csv(std::ostream& out, const Curve& curve) {
    out << "x,y\n";
    auto old = out.precision(17);
    for (const auto& p : curve.points)
        out << p.x << ',' << p.y << '\n';
    out.precision(old);
}

}  // namespace linkhide
