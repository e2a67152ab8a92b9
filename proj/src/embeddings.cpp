#include "entbundle/embeddings.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <numeric>

#include "entbundle/errors.hpp"

namespace entbundle {

// --- generator-set axioms ----------------------------------------------------

namespace {

std::vector<std::int32_t> compose(const std::vector<std::int32_t>& p,
                                  const std::vector<std::int32_t>& t) {
    std::vector<std::int32_t> out(t.size());
    for (std::size_t i = 0; i < t.size(); ++i)
        out[i] = t[i] < 0 ? -1 : p[t[i]];
    return out;
}

std::string subsystem_str(int n, std::uint32_t mask) {
    std::string s = "{";
    for (int k = 1; k <= n; ++k)
        if (mask >> (k - 1) & 1) s += std::to_string(k) + ",";
    if (s.size() > 1) s.pop_back();
    return s + "}";
}

}  // namespace

GeneratorCheck verify_generator_set(const Subspace& states,
                                    const std::vector<OperatorTable>& family,
                                    std::size_t closure_cap) {
    GeneratorCheck rep;
    const std::size_t m = states.size();
    for (const auto& op : family) {
        if (op.image.size() != m) throw InputError("operator table length mismatch");
        for (std::size_t i = 0; i < m; ++i) {
            if (op.image[i] >= static_cast<std::int32_t>(m))
                throw InputError("operator table image index out of range");
            if (op.image[i] < 0) {
                rep.detail = op.name + " maps state " + states.state(i).str() +
                             " outside the span";
                return rep;  // nothing else is meaningful for a non-closed family
            }
        }
    }
    rep.closed = true;

    // closure under composition, identity seeded
    std::vector<std::vector<std::int32_t>> closure;
    std::vector<std::string> closure_names;
    std::map<std::vector<std::int32_t>, std::size_t> seen;
    std::vector<std::int32_t> id(m);
    std::iota(id.begin(), id.end(), 0);
    closure.push_back(id);
    closure_names.push_back("1");
    seen.emplace(id, 0);
    for (std::size_t head = 0; head < closure.size(); ++head) {
        for (const auto& op : family) {
            auto next = compose(op.image, closure[head]);
            if (seen.emplace(next, closure.size()).second) {
                closure.push_back(next);
                closure_names.push_back(op.name + "*" + closure_names[head]);
                if (closure.size() > closure_cap) {
                    rep.closed = false;
                    rep.detail = "closure exceeded cap of " + std::to_string(closure_cap);
                    return rep;
                }
            }
        }
    }

    rep.commutative = true;
    for (std::size_t x = 0; x < closure.size() && rep.commutative; ++x)
        for (std::size_t y = x + 1; y < closure.size(); ++y) {
            if (compose(closure[x], closure[y]) != compose(closure[y], closure[x])) {
                rep.commutative = false;
                rep.detail = closure_names[x] + " and " + closure_names[y] + " do not commute";
                break;
            }
        }

    rep.transitive = true;
    for (std::size_t i = 0; i < m && rep.transitive; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            bool hit = false;
            for (const auto& op : closure)
                if (op[i] == static_cast<std::int32_t>(j)) { hit = true; break; }
            if (!hit) {
                rep.transitive = false;
                rep.detail = "no operator maps " + states.state(i).str() + " to " +
                             states.state(j).str();
                break;
            }
        }

    // local invariance: for each family member and each nonempty subsystem,
    // either every state keeps its restriction or none does
    const int n = states.n();
    if (n > 22) throw ResourceError("local-invariance scan capped at 22 qubits");
    rep.locally_invariant = true;
    for (std::size_t f = 0; f < family.size() && rep.locally_invariant; ++f) {
        const auto& op = family[f];
        for (std::uint32_t a = 1; a < (std::uint32_t(1) << n); ++a) {
            std::uint64_t vmask = 0;
            for (int k = 1; k <= n; ++k)
                if (a >> (k - 1) & 1) vmask |= std::uint64_t(1) << (n - k);
            bool any_fix = false, any_move = false;
            for (std::size_t i = 0; i < m; ++i) {
                bool fix = (states.state_bits(i) & vmask) ==
                           (states.state_bits(op.image[i]) & vmask);
                (fix ? any_fix : any_move) = true;
            }
            if (any_fix && any_move) {
                rep.locally_invariant = false;
                rep.detail = op.name + " fixes subsystem " + subsystem_str(n, a) +
                             " on some states but not others";
                break;
            }
        }
    }

    rep.pointwise_disjoint = true;
    for (std::size_t x = 0; x < closure.size() && rep.pointwise_disjoint; ++x)
        for (std::size_t y = x + 1; y < closure.size(); ++y) {
            for (std::size_t i = 0; i < m; ++i)
                if (closure[x][i] == closure[y][i]) {
                    rep.pointwise_disjoint = false;
                    rep.detail = closure_names[x] + " and " + closure_names[y] +
                                 " agree on " + states.state(i).str();
                    break;
                }
            if (!rep.pointwise_disjoint) break;
        }

    rep.self_inverse = true;
    for (const auto& op : family)
        if (compose(op.image, op.image) != id) {
            rep.self_inverse = false;
            rep.detail = op.name + " squared is not the identity";
            break;
        }

    if (rep.ok()) rep.detail.clear();
    return rep;
}

// --- parity embedding --------------------------------------------------------

ParityEmbedding::ParityEmbedding(Hypergraph logical) : h_(std::move(logical)) {
    if (h_.num_edges() == 0) throw InputError("parity embedding needs at least one edge");
    kernel_ = h_.vertex_kernel_basis();
    degeneracy_ = static_cast<int>(kernel_.cols());
}

Subspace ParityEmbedding::enumerate_states() const {
    const std::size_t nv = h_.num_vertices();
    if (nv > 22) throw ResourceError("parity state enumeration capped at 22 vertices");
    const int n = num_qubits();
    std::vector<std::uint64_t> states;
    std::unordered_map<std::uint64_t, bool> seen;
    for (std::uint64_t f = 0; f < (std::uint64_t(1) << nv); ++f) {
        // bit j of the counter (high first) assigns vertex position j
        std::uint32_t assign = 0;
        for (std::size_t j = 0; j < nv; ++j)
            if (f >> (nv - 1 - j) & 1) assign |= std::uint32_t(1) << j;
        std::uint64_t bits = 0;
        for (int mq = 1; mq <= n; ++mq) {
            int par = std::popcount(h_.edge_members(mq - 1) & assign) & 1;
            if (!par) bits |= std::uint64_t(1) << (n - mq);  // negated parity
        }
        if (seen.emplace(bits, true).second) states.push_back(bits);
    }
    return Subspace(n, std::move(states));
}

std::uint64_t ParityEmbedding::flip_mask(Hypergraph::VertexSet w) const {
    const int n = num_qubits();
    std::uint64_t m = 0;
    for (int mq = 1; mq <= n; ++mq)
        if (std::popcount(h_.edge_members(mq - 1) & w) & 1)
            m |= std::uint64_t(1) << (n - mq);
    return m;
}

BasisState ParityEmbedding::apply_product_operator(const BasisState& s,
                                                   Hypergraph::VertexSet w) const {
    if (s.n != num_qubits()) throw InputError("state length does not match the register");
    return {s.n, s.bits ^ flip_mask(w)};
}

gf2::Matrix ParityEmbedding::operator_set_generators(const Subsystem& a) const {
    if (a.n() != num_qubits()) throw InputError("subsystem size does not match the register");
    const std::size_t nv = h_.num_vertices();
    Hypergraph::EdgeSet ae = a.mask();  // qubit k <-> edge position k-1, same bit layout

    std::vector<std::vector<std::uint8_t>> cols;  // vertex supports
    auto comps = h_.connected_components(ae);
    Hypergraph::VertexSet covered = 0;
    for (auto comp : comps) covered |= comp;

    for (auto comp : comps) {
        std::vector<std::size_t> vpos;  // component vertices, ascending position
        for (std::size_t j = 0; j < nv; ++j)
            if (comp >> j & 1) vpos.push_back(j);
        std::vector<std::size_t> epos;  // subsystem edges inside this component
        bool graph_like = true;
        for (std::size_t i = 0; i < h_.num_edges(); ++i) {
            if (!(ae >> i & 1)) continue;
            if ((h_.edge_members(i) & comp) == h_.edge_members(i)) {
                epos.push_back(i);
                if (h_.edges()[i].size() != 2) graph_like = false;
            }
        }
        if (graph_like) {
            // connected graph component: the even-intersection sets are just
            // the whole-component indicator
            std::vector<std::uint8_t> col(nv, 0);
            for (std::size_t j : vpos) col[j] = 1;
            cols.push_back(std::move(col));
            continue;
        }
        gf2::Matrix b(epos.size(), vpos.size());
        for (std::size_t r = 0; r < epos.size(); ++r)
            for (std::size_t c = 0; c < vpos.size(); ++c)
                if (h_.edge_members(epos[r]) >> vpos[c] & 1) b.set(r, c, true);
        gf2::Matrix ns = gf2::nullspace_basis(b);
        for (std::size_t c = 0; c < ns.cols(); ++c) {
            std::vector<std::uint8_t> col(nv, 0);
            for (std::size_t r = 0; r < ns.rows(); ++r)
                if (ns.get(r, c)) col[vpos[r]] = 1;
            cols.push_back(std::move(col));
        }
    }

    for (std::size_t j = 0; j < nv; ++j) {
        if (covered >> j & 1) continue;
        std::vector<std::uint8_t> col(nv, 0);
        col[j] = 1;
        cols.push_back(std::move(col));
    }

    // representation kernel, adjoined so span comparisons see operators rather
    // than supports (it is already inside the span for any subsystem, but this
    // keeps that property independent of the assembly above)
    for (std::size_t c = 0; c < kernel_.cols(); ++c) {
        std::vector<std::uint8_t> col(nv, 0);
        for (std::size_t r = 0; r < nv; ++r)
            if (kernel_.get(r, c)) col[r] = 1;
        cols.push_back(std::move(col));
    }

    gf2::Matrix g(nv, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t r = 0; r < nv; ++r)
            if (cols[c][r]) g.set(r, c, true);
    return g;
}

std::uint64_t ParityEmbedding::operator_count(const Subsystem& a) const {
    std::size_t r = gf2::rank(operator_set_generators(a));
    return std::uint64_t(1) << (r - degeneracy_);
}

std::vector<std::uint64_t> ParityEmbedding::operator_set_key(const Subsystem& a) const {
    return gf2::column_span_key(operator_set_generators(a));
}

bool ParityEmbedding::equivalent(const Subsystem& a, const Subsystem& b) const {
    gf2::Matrix ga = operator_set_generators(a);
    gf2::Matrix gac = operator_set_generators(a.complement());
    gf2::Matrix gb = operator_set_generators(b);
    gf2::Matrix gbc = operator_set_generators(b.complement());
    return (gf2::span_equal(ga, gb) && gf2::span_equal(gac, gbc)) ||
           (gf2::span_equal(ga, gbc) && gf2::span_equal(gac, gb));
}

std::vector<OperatorTable> ParityEmbedding::line_operator_family() const {
    Subspace pi = enumerate_states();
    std::vector<OperatorTable> fam;
    for (std::size_t j = 0; j < h_.num_vertices(); ++j) {
        OperatorTable op;
        op.name = "L" + std::to_string(h_.vertices()[j]);
        std::uint64_t fm = flip_mask(Hypergraph::VertexSet(1) << j);
        op.image.resize(pi.size());
        for (std::size_t i = 0; i < pi.size(); ++i) {
            auto idx = pi.index_of(pi.state_bits(i) ^ fm);
            op.image[i] = idx ? static_cast<std::int32_t>(*idx) : -1;
        }
        fam.push_back(std::move(op));
    }
    return fam;
}

// --- minor embedding ---------------------------------------------------------

MinorEmbedding::MinorEmbedding(std::vector<std::string> names,
                               std::vector<std::vector<int>> chains)
    : names_(std::move(names)), chains_(std::move(chains)) {
    if (chains_.empty()) throw InputError("minor embedding needs at least one chain");
    if (names_.size() != chains_.size())
        throw InputError("chain name/qubit list count mismatch");
    {
        auto sorted = names_;
        std::sort(sorted.begin(), sorted.end());
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw InputError("duplicate chain name");
    }
    int total = 0;
    for (const auto& c : chains_) total += static_cast<int>(c.size());
    if (total > 30) throw ResourceError("minor embedding capped at 30 physical qubits");
    n_phys_ = total;
    std::vector<bool> used(total + 1, false);
    for (auto& c : chains_) {
        if (c.empty()) throw InputError("empty chain");
        std::sort(c.begin(), c.end());
        for (int q : c) {
            if (q < 1 || q > total || used[q])
                throw InputError("chains must partition the physical register 1..N");
            used[q] = true;
        }
    }
}

Subspace MinorEmbedding::enumerate_states() const {
    const std::size_t nl = chains_.size();
    if (nl > 22) throw ResourceError("minor state enumeration capped at 22 chains");
    std::vector<std::uint64_t> states;
    states.reserve(std::size_t(1) << nl);
    for (std::uint64_t g = 0; g < (std::uint64_t(1) << nl); ++g) {
        std::uint64_t bits = 0;
        for (std::size_t j = 0; j < nl; ++j)
            if (g >> (nl - 1 - j) & 1) bits |= chain_flip_mask(j);
        states.push_back(bits);
    }
    return Subspace(n_phys_, std::move(states));
}

std::uint64_t MinorEmbedding::chain_flip_mask(std::size_t chain) const {
    std::uint64_t m = 0;
    for (int q : chains_[chain]) m |= std::uint64_t(1) << (n_phys_ - q);
    return m;
}

BasisState MinorEmbedding::apply_chain_operator(const BasisState& s, std::size_t chain) const {
    if (s.n != n_phys_) throw InputError("state length does not match the register");
    return {s.n, s.bits ^ chain_flip_mask(chain)};
}

gf2::Matrix MinorEmbedding::operator_set_generators(const Subsystem& a) const {
    if (a.n() != n_phys_) throw InputError("subsystem size does not match the register");
    std::vector<std::size_t> free_chains;
    for (std::size_t j = 0; j < chains_.size(); ++j) {
        bool touches = false;
        for (int q : chains_[j])
            if (a.contains(q)) { touches = true; break; }
        if (!touches) free_chains.push_back(j);
    }
    gf2::Matrix g(chains_.size(), free_chains.size());
    for (std::size_t c = 0; c < free_chains.size(); ++c) g.set(free_chains[c], c, true);
    return g;
}

std::uint64_t MinorEmbedding::operator_count(const Subsystem& a) const {
    return std::uint64_t(1) << gf2::rank(operator_set_generators(a));
}

std::vector<std::uint64_t> MinorEmbedding::operator_set_key(const Subsystem& a) const {
    return gf2::column_span_key(operator_set_generators(a));
}

bool MinorEmbedding::equivalent(const Subsystem& a, const Subsystem& b) const {
    gf2::Matrix ga = operator_set_generators(a);
    gf2::Matrix gac = operator_set_generators(a.complement());
    gf2::Matrix gb = operator_set_generators(b);
    gf2::Matrix gbc = operator_set_generators(b.complement());
    return (gf2::span_equal(ga, gb) && gf2::span_equal(gac, gbc)) ||
           (gf2::span_equal(ga, gbc) && gf2::span_equal(gac, gb));
}

std::vector<OperatorTable> MinorEmbedding::chain_operator_family() const {
    Subspace ms = enumerate_states();
    std::vector<OperatorTable> fam;
    for (std::size_t j = 0; j < chains_.size(); ++j) {
        OperatorTable op;
        op.name = "G" + names_[j];
        std::uint64_t fm = chain_flip_mask(j);
        op.image.resize(ms.size());
        for (std::size_t i = 0; i < ms.size(); ++i) {
            auto idx = ms.index_of(ms.state_bits(i) ^ fm);
            op.image[i] = idx ? static_cast<std::int32_t>(*idx) : -1;
        }
        fam.push_back(std::move(op));
    }
    return fam;
}

// --- span-side classification --------------------------------------------------

namespace {

template <typename KeyFn>
BundleSet classify_by_keys(int n, KeyFn&& key_of) {
    if (n > 22) throw ResourceError("bundle classification capped at 22 qubits");
    std::uint32_t full = (std::uint32_t(1) << n) - 1;
    std::map<std::pair<std::vector<std::uint64_t>, std::vector<std::uint64_t>>,
             std::vector<std::uint32_t>> groups;
    for (std::uint32_t m = 1; m <= full; m += 2) {
        auto ka = key_of(Subsystem(n, m));
        auto kc = key_of(Subsystem(n, full & ~m));
        auto key = ka <= kc ? std::pair(ka, kc) : std::pair(kc, ka);
        groups[key].push_back(m);
    }
    auto subsys_less = [](std::uint32_t x, std::uint32_t y) {
        return std::pair(std::popcount(x), x) < std::pair(std::popcount(y), y);
    };
    BundleSet out;
    out.n = n;
    for (auto& [key, masks] : groups) {
        Bundle b;
        for (std::uint32_t m : masks) {
            b.members.push_back(m);
            b.members.push_back(full & ~m);
        }
        std::sort(b.members.begin(), b.members.end(), subsys_less);
        out.bundles.push_back(std::move(b));
    }
    std::sort(out.bundles.begin(), out.bundles.end(),
              [&](const Bundle& a, const Bundle& b) {
                  return subsys_less(a.canonical(), b.canonical());
              });
    out.bundle_of.assign(std::size_t(full) + 1, 0);
    for (std::uint32_t i = 0; i < out.bundles.size(); ++i)
        for (std::uint32_t m : out.bundles[i].members) out.bundle_of[m] = i;
    return out;
}

}  // namespace

BundleSet classify_bundles(const ParityEmbedding& pe) {
    return classify_by_keys(pe.num_qubits(),
                            [&](const Subsystem& s) { return pe.operator_set_key(s); });
}

BundleSet classify_bundles(const MinorEmbedding& me) {
    return classify_by_keys(me.num_physical(),
                            [&](const Subsystem& s) { return me.operator_set_key(s); });
}

}  // namespace entbundle
