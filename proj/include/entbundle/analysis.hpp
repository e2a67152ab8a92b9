#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "entbundle/hypergraph.hpp"
#include "entbundle/subspace.hpp"

namespace entbundle {

struct EntropyPoint {
    std::uint32_t bipartition = 0;  // canonical subsystem mask (side holding qubit 1)
    double entropy = 0;
};

struct Cluster {
    std::vector<std::uint32_t> members;  // ascending masks
    double representative = 0;           // mean entropy
};

// One-dimensional density clustering with unit minimum cluster size: sort the
// values and cut wherever neighbours are more than `radius` apart. Clusters
// come back ordered by ascending representative.
std::vector<Cluster> cluster_entropies(std::vector<EntropyPoint> points, double radius);

// Closed-form lower bound on the bipartition count of a logical line's bundle
// in a complete graph on more than three vertices: subsets of the line's
// complement missing at most |V|-3 edges stay connected and spanning, so the
// bound is a short binomial sum.
std::uint64_t line_bundle_lower_bound(const Hypergraph& g, int vertex_id);

struct SpanningPairCount {
    std::map<int, std::uint64_t> by_min_side;
    std::uint64_t total = 0;
};

// Unordered bipartitions {A, A^c} of the edge set where both restrictions are
// connected with vertex set V, keyed by the smaller side's edge count.
SpanningPairCount count_spanning_pairs(const Hypergraph& g);

struct BundleReportRow {
    std::size_t bundle = 0;  // index into the BundleSet
    std::uint32_t canonical = 0;
    std::size_t bipartitions = 0;            // trivial pair excluded
    std::map<int, std::size_t> by_min_size;  // bipartitions by min(|A|, n-|A|)
    std::optional<double> max_entropy;
};

struct BundleReport {
    std::vector<BundleReportRow> rows;
    std::map<std::size_t, std::size_t> histogram;  // bipartition count -> number of bundles
    std::size_t total_bipartitions = 0;
};

// Per-bundle bipartition counts with the trivial {empty, [n]} pair excluded.
// Rows are ordered by ascending max member entropy when entropies are given
// (canonical member as tie break), else by canonical member.
BundleReport bundle_report(const BundleSet& bs,
                           const std::map<std::uint32_t, double>* entropies = nullptr);

struct TheoryComparison {
    std::size_t n_bundles = 0;   // bundles with at least one clustered member
    std::size_t n_clusters = 0;
    std::vector<std::size_t> split_bundles;  // bundles spread over several clusters

    bool bundles_unsplit() const { return split_bundles.empty(); }
    // clusters and bundles induce the same partition of the clustered masks
    bool exact_match() const { return split_bundles.empty() && n_bundles == n_clusters; }
};

TheoryComparison compare_theory_observed(const BundleSet& bs,
                                         const std::vector<Cluster>& clusters);

}  // namespace entbundle
