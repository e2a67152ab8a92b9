#include "entbundle/analysis.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "entbundle/errors.hpp"

namespace entbundle {

std::vector<Cluster> cluster_entropies(std::vector<EntropyPoint> points, double radius) {
    if (radius < 0) throw InputError("cluster radius must be nonnegative");
    std::sort(points.begin(), points.end(), [](const EntropyPoint& a, const EntropyPoint& b) {
        return std::pair(a.entropy, a.bipartition) < std::pair(b.entropy, b.bipartition);
    });
    std::vector<Cluster> out;
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (i == 0 || points[i].entropy - points[i - 1].entropy > radius) out.emplace_back();
        out.back().members.push_back(points[i].bipartition);
        out.back().representative += points[i].entropy;
    }
    for (auto& c : out) {
        c.representative /= double(c.members.size());
        std::sort(c.members.begin(), c.members.end());
    }
    return out;
}

namespace {

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

}  // namespace

std::uint64_t line_bundle_lower_bound(const Hypergraph& g, int vertex_id) {
    const std::size_t k = g.num_vertices();
    if (k <= 3) throw InputError("line bundle bound needs more than three vertices");
    if (!g.is_graph() || g.num_edges() != k * (k - 1) / 2)
        throw InputError("line bundle bound is stated for complete graphs");
    std::set<std::pair<int, int>> pairs;
    for (const auto& e : g.edges()) pairs.emplace(e[0], e[1]);
    if (pairs.size() != g.num_edges())
        throw InputError("line bundle bound is stated for complete graphs");

    std::uint64_t d = g.num_edges() - std::popcount(g.logical_line(vertex_id));
    std::uint64_t sum = 0;
    for (std::uint64_t p = 0; p + 3 <= k; ++p) sum += binom(d, d - p);
    return sum;
}

SpanningPairCount count_spanning_pairs(const Hypergraph& g) {
    const std::size_t ne = g.num_edges();
    if (ne > 24) throw ResourceError("spanning pair scan capped at 24 edges");
    const Hypergraph::EdgeSet all = g.all_edges();
    SpanningPairCount out;
    // edge 0 pins one side, so each unordered pair shows up exactly once
    for (Hypergraph::EdgeSet a = 1; a <= all; a += 2) {
        if (!g.is_connected_spanning(a)) continue;
        if (!g.is_connected_spanning(all & ~a)) continue;
        int na = std::popcount(a);
        ++out.by_min_side[std::min<int>(na, int(ne) - na)];
        ++out.total;
    }
    return out;
}

BundleReport bundle_report(const BundleSet& bs,
                           const std::map<std::uint32_t, double>* entropies) {
    const std::uint32_t full = (std::uint32_t(1) << bs.n) - 1;
    BundleReport rep;
    for (std::size_t bi = 0; bi < bs.bundles.size(); ++bi) {
        const Bundle& b = bs.bundles[bi];
        BundleReportRow row;
        row.bundle = bi;
        row.canonical = b.canonical();
        for (std::uint32_t m : b.members) {
            if (!(m & 1) || m == full) continue;  // keep canonical sides, drop the trivial pair
            ++row.bipartitions;
            int na = std::popcount(m);
            ++row.by_min_size[std::min(na, bs.n - na)];
            if (entropies) {
                auto it = entropies->find(m);
                if (it != entropies->end())
                    row.max_entropy = row.max_entropy ? std::max(*row.max_entropy, it->second)
                                                      : it->second;
            }
        }
        if (row.bipartitions == 0) continue;
        rep.total_bipartitions += row.bipartitions;
        ++rep.histogram[row.bipartitions];
        rep.rows.push_back(std::move(row));
    }
    auto canon_less = [](const BundleReportRow& a, const BundleReportRow& b) {
        return std::pair(std::popcount(a.canonical), a.canonical) <
               std::pair(std::popcount(b.canonical), b.canonical);
    };
    if (entropies) {
        std::sort(rep.rows.begin(), rep.rows.end(),
                  [&](const BundleReportRow& a, const BundleReportRow& b) {
                      double ea = a.max_entropy.value_or(1e300);
                      double eb = b.max_entropy.value_or(1e300);
                      if (ea != eb) return ea < eb;
                      return canon_less(a, b);
                  });
    } else {
        std::sort(rep.rows.begin(), rep.rows.end(), canon_less);
    }
    return rep;
}

TheoryComparison compare_theory_observed(const BundleSet& bs,
                                         const std::vector<Cluster>& clusters) {
    TheoryComparison cmp;
    cmp.n_clusters = clusters.size();
    std::map<std::uint32_t, std::size_t> cluster_of;
    for (std::size_t ci = 0; ci < clusters.size(); ++ci)
        for (std::uint32_t m : clusters[ci].members) {
            if (m >= bs.bundle_of.size()) throw InputError("clustered mask outside the register");
            cluster_of[m] = ci;
        }

    std::map<std::size_t, std::set<std::size_t>> touched;  // bundle -> clusters
    for (const auto& [mask, ci] : cluster_of) touched[bs.bundle_of[mask]].insert(ci);
    cmp.n_bundles = touched.size();
    for (const auto& [bi, cs] : touched)
        if (cs.size() > 1) cmp.split_bundles.push_back(bi);
    return cmp;
}

}  // namespace entbundle
