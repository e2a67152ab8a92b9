#include "entbundle/hypergraph.hpp"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "entbundle/errors.hpp"

namespace entbundle {

namespace {
constexpr std::size_t kMaxSide = 30;
}

Hypergraph::Hypergraph(std::vector<int> vertices, std::vector<std::vector<int>> edges)
    : verts_(std::move(vertices)), edges_(std::move(edges)) {
    if (verts_.size() > kMaxSide || edges_.size() > kMaxSide)
        throw ResourceError("hypergraph exceeds supported size (30 vertices / 30 edges)");
    std::unordered_map<int, std::size_t> pos;
    for (std::size_t j = 0; j < verts_.size(); ++j) {
        if (!pos.emplace(verts_[j], j).second)
            throw InputError("duplicate vertex id in hypergraph");
    }
    edge_masks_.reserve(edges_.size());
    for (auto& e : edges_) {
        if (e.empty()) throw InputError("empty edge in hypergraph");
        std::sort(e.begin(), e.end());
        if (std::adjacent_find(e.begin(), e.end()) != e.end())
            throw InputError("repeated vertex inside an edge");
        VertexSet m = 0;
        for (int id : e) {
            auto it = pos.find(id);
            if (it == pos.end()) throw InputError("edge references unknown vertex id");
            m |= VertexSet(1) << it->second;
        }
        edge_masks_.push_back(m);
    }
}

std::size_t Hypergraph::vertex_pos(int id) const {
    for (std::size_t j = 0; j < verts_.size(); ++j)
        if (verts_[j] == id) return j;
    throw InputError("unknown vertex id");
}

bool Hypergraph::is_graph() const {
    for (const auto& e : edges_)
        if (e.size() != 2) return false;
    return true;
}

Hypergraph::VertexSet Hypergraph::covered_vertices(EdgeSet a) const {
    VertexSet m = 0;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (a >> i & 1) m |= edge_masks_[i];
    return m;
}

Hypergraph::EdgeSet Hypergraph::all_edges() const {
    return edges_.empty() ? 0 : (EdgeSet(1) << edges_.size()) - 1;
}

Hypergraph::VertexSet Hypergraph::all_vertices() const {
    return verts_.empty() ? 0 : (VertexSet(1) << verts_.size()) - 1;
}

Hypergraph Hypergraph::restriction(EdgeSet a) const {
    VertexSet cov = covered_vertices(a);
    std::vector<int> vs;
    for (std::size_t j = 0; j < verts_.size(); ++j)
        if (cov >> j & 1) vs.push_back(verts_[j]);
    std::vector<std::vector<int>> es;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (a >> i & 1) es.push_back(edges_[i]);
    return Hypergraph(std::move(vs), std::move(es));
}

std::vector<Hypergraph::VertexSet> Hypergraph::connected_components(EdgeSet a) const {
    VertexSet cov = covered_vertices(a);
    std::vector<VertexSet> comps;
    VertexSet seen = 0;
    for (std::size_t j = 0; j < verts_.size(); ++j) {
        VertexSet start = VertexSet(1) << j;
        if (!(cov & start) || (seen & start)) continue;
        // grow by absorbing every selected edge that touches the current set
        VertexSet comp = start;
        bool grew = true;
        while (grew) {
            grew = false;
            for (std::size_t i = 0; i < edges_.size(); ++i) {
                if (!(a >> i & 1)) continue;
                if ((edge_masks_[i] & comp) && (edge_masks_[i] & ~comp)) {
                    comp |= edge_masks_[i];
                    grew = true;
                }
            }
        }
        comps.push_back(comp);
        seen |= comp;
    }
    return comps;
}

bool Hypergraph::is_connected_spanning(EdgeSet a) const {
    auto comps = connected_components(a);
    return comps.size() == 1 && comps[0] == all_vertices();
}

Hypergraph::EdgeSet Hypergraph::logical_line(int vertex_id) const {
    std::size_t j = vertex_pos(vertex_id);
    EdgeSet line = 0;
    for (std::size_t i = 0; i < edges_.size(); ++i)
        if (edge_masks_[i] >> j & 1) line |= EdgeSet(1) << i;
    return line;
}

bool Hypergraph::is_constraint(EdgeSet c) const {
    for (std::size_t j = 0; j < verts_.size(); ++j) {
        int deg = 0;
        for (std::size_t i = 0; i < edges_.size(); ++i)
            if ((c >> i & 1) && (edge_masks_[i] >> j & 1)) ++deg;
        if (deg % 2) return false;
    }
    return true;
}

gf2::Matrix Hypergraph::incidence() const {
    return incidence_of(all_edges());
}

gf2::Matrix Hypergraph::incidence_of(EdgeSet a) const {
    std::size_t na = std::popcount(a);
    gf2::Matrix m(verts_.size(), na);
    std::size_t col = 0;
    for (std::size_t i = 0; i < edges_.size(); ++i) {
        if (!(a >> i & 1)) continue;
        for (std::size_t j = 0; j < verts_.size(); ++j)
            if (edge_masks_[i] >> j & 1) m.set(j, col, true);
        ++col;
    }
    return m;
}

gf2::Matrix Hypergraph::constraint_space_basis() const {
    return gf2::nullspace_basis(incidence());
}

gf2::Matrix Hypergraph::vertex_kernel_basis() const {
    return gf2::nullspace_basis(incidence().transposed());
}

Hypergraph complete_graph(int k) {
    if (k < 1) throw InputError("complete_graph needs at least one vertex");
    std::vector<int> vs(k);
    for (int i = 0; i < k; ++i) vs[i] = i;
    std::vector<std::vector<int>> es;
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) es.push_back({i, j});
    return Hypergraph(std::move(vs), std::move(es));
}

}  // namespace entbundle
