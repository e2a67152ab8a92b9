#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "entbundle/gf2.hpp"
#include "entbundle/hypergraph.hpp"
#include "entbundle/subspace.hpp"

namespace entbundle {

// --- generator-set axioms -------------------------------------------------

// An operator given by its explicit action on a state list. image[i] is the
// index of the image of state i, or -1 when the operator maps it off the list.
struct OperatorTable {
    std::string name;
    std::vector<std::int32_t> image;
};

struct GeneratorCheck {
    bool closed = false;             // all images inside the list, closure finite
    bool commutative = false;
    bool transitive = false;
    bool locally_invariant = false;  // fixing any subsystem on one state fixes it on all
    bool pointwise_disjoint = false; // distinct closure ops never agree anywhere
    bool self_inverse = false;       // family members square to the identity
    std::string detail;              // first violation, empty when everything holds

    bool ok() const {
        return closed && commutative && transitive && locally_invariant &&
               pointwise_disjoint && self_inverse;
    }
};

// Brute-force check of the generator-set axioms for an explicit family acting
// on a state list. Commutativity, transitivity and disjointness run over the
// generated closure (seeded with the identity, capped); local invariance and
// self-inverseness are checked for the family members themselves.
GeneratorCheck verify_generator_set(const Subspace& states,
                                    const std::vector<OperatorTable>& family,
                                    std::size_t closure_cap = 4096);

// --- parity embedding -------------------------------------------------------

// Physical register with one qubit per edge of a logical hypergraph, qubit m
// (1-based) being the m-th declared edge. Operator supports live on the
// logical vertex side as GF(2) vectors.
class ParityEmbedding {
public:
    explicit ParityEmbedding(Hypergraph logical);

    const Hypergraph& logical() const { return h_; }
    int num_qubits() const { return static_cast<int>(h_.num_edges()); }

    // dimension of the representation kernel (vertex sets meeting every edge
    // evenly); 1 for a connected graph
    int degeneracy() const { return degeneracy_; }
    const gf2::Matrix& kernel_basis() const { return kernel_; }

    // Images of all logical weight assignments: qubit m carries the negated
    // parity of the assignment over edge m. Assignment counter ascending with
    // vertex 1 as the high bit; first appearance fixes the order. 2^|V| work,
    // guarded at 22 vertices.
    Subspace enumerate_states() const;

    // value-space flip mask of the product operator with vertex support w:
    // qubit m flips iff w meets edge m an odd number of times
    std::uint64_t flip_mask(Hypergraph::VertexSet w) const;
    BasisState apply_product_operator(const BasisState& s, Hypergraph::VertexSet w) const;

    // Generator matrix (columns = vertex supports) of the operator subgroup
    // fixing every qubit of `a`: per connected component of the restriction to
    // a's edges the nullspace of that component's incidence, one unit vector
    // per uncovered vertex, and the representation kernel adjoined.
    gf2::Matrix operator_set_generators(const Subsystem& a) const;

    // distinct operators in the subgroup: 2^(span rank - degeneracy)
    std::uint64_t operator_count(const Subsystem& a) const;

    // canonical key of the generator span (equal keys <=> equal spans)
    std::vector<std::uint64_t> operator_set_key(const Subsystem& a) const;

    // unordered-pair span comparison of {a, a^c} against {b, b^c}
    bool equivalent(const Subsystem& a, const Subsystem& b) const;

    // one line operator per logical vertex, acting on enumerate_states()
    std::vector<OperatorTable> line_operator_family() const;

private:
    Hypergraph h_;
    gf2::Matrix kernel_;
    int degeneracy_ = 0;
};

// --- minor embedding --------------------------------------------------------

// Physical register split into per-vertex chains; admissible states are
// constant on every chain. Chains are given as 1-based physical qubit indices
// and must partition the register.
class MinorEmbedding {
public:
    MinorEmbedding(std::vector<std::string> names, std::vector<std::vector<int>> chains);

    int num_physical() const { return n_phys_; }
    int num_logical() const { return static_cast<int>(chains_.size()); }
    const std::vector<std::string>& names() const { return names_; }
    const std::vector<std::vector<int>>& chains() const { return chains_; }

    // All chain-constant states; logical assignment counter ascending with
    // chain 1 as the high bit.
    Subspace enumerate_states() const;

    std::uint64_t chain_flip_mask(std::size_t chain) const;  // value space
    BasisState apply_chain_operator(const BasisState& s, std::size_t chain) const;

    // columns = logical unit vectors of the chains disjoint from `a`
    gf2::Matrix operator_set_generators(const Subsystem& a) const;
    std::uint64_t operator_count(const Subsystem& a) const;
    std::vector<std::uint64_t> operator_set_key(const Subsystem& a) const;
    bool equivalent(const Subsystem& a, const Subsystem& b) const;

    std::vector<OperatorTable> chain_operator_family() const;

private:
    std::vector<std::string> names_;
    std::vector<std::vector<int>> chains_;
    int n_phys_ = 0;
};

// Classification of all bipartitions through the span comparisons instead of
// the state-side oracle. Same BundleSet layout as enumerate_bundles.
BundleSet classify_bundles(const ParityEmbedding& pe);
BundleSet classify_bundles(const MinorEmbedding& me);

}  // namespace entbundle
