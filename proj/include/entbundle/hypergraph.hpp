#pragma once

#include <cstdint>
#include <vector>

#include "entbundle/gf2.hpp"

namespace entbundle {

// Hypergraph over externally supplied integer vertex ids. Edges are kept in
// declared order because downstream code identifies physical qubit m with the
// m-th edge; inside an edge the ids are stored sorted.
//
// Subsets are bitmasks over positions: bit i of an EdgeSet selects edges()[i],
// bit j of a VertexSet selects vertices()[j]. Sizes are capped at 30 so every
// subset fits a mask.
class Hypergraph {
public:
    using EdgeSet = std::uint32_t;
    using VertexSet = std::uint32_t;

    Hypergraph() = default;
    Hypergraph(std::vector<int> vertices, std::vector<std::vector<int>> edges);

    std::size_t num_vertices() const { return verts_.size(); }
    std::size_t num_edges() const { return edges_.size(); }
    const std::vector<int>& vertices() const { return verts_; }
    const std::vector<std::vector<int>>& edges() const { return edges_; }

    std::size_t vertex_pos(int id) const;
    bool is_graph() const;  // every edge has exactly two vertices

    VertexSet edge_members(std::size_t e) const { return edge_masks_[e]; }
    VertexSet covered_vertices(EdgeSet a) const;
    EdgeSet all_edges() const;
    VertexSet all_vertices() const;

    // The sub-hypergraph holding exactly the edges of `a` (vertex list = covered
    // vertices, original order and ids kept).
    Hypergraph restriction(EdgeSet a) const;

    // Vertex masks of the connected components of the restriction to `a`,
    // ordered by their lowest vertex position. Uncovered vertices appear in no
    // component.
    std::vector<VertexSet> connected_components(EdgeSet a) const;

    // one component whose vertex set is all of V
    bool is_connected_spanning(EdgeSet a) const;

    // edges incident to the given vertex
    EdgeSet logical_line(int vertex_id) const;

    // every vertex meets an even number of the subset's edges
    bool is_constraint(EdgeSet c) const;

    // |V| x |E| incidence matrix over GF(2)
    gf2::Matrix incidence() const;
    // |V| x |a| incidence of an edge subset (columns in edge order)
    gf2::Matrix incidence_of(EdgeSet a) const;

    // Columns span the constraint space: edge subsets meeting every vertex
    // evenly, i.e. the nullspace of incidence().
    gf2::Matrix constraint_space_basis() const;

    // Vertex sets meeting every edge evenly (nullspace of the transposed
    // incidence). Spanned by the all-ones vector for a connected graph; its
    // dimension is the representation degeneracy used downstream.
    gf2::Matrix vertex_kernel_basis() const;

private:
    std::vector<int> verts_;
    std::vector<std::vector<int>> edges_;
    std::vector<VertexSet> edge_masks_;
};

// Complete graph on vertices 0..k-1, edges in lexicographic order.
Hypergraph complete_graph(int k);

}  // namespace entbundle
