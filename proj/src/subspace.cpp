#include "entbundle/subspace.hpp"

#include <algorithm>
#include <bit>
#include <map>

#include "entbundle/errors.hpp"

namespace entbundle {

BasisState BasisState::from_string(const std::string& s) {
    if (s.empty() || s.size() > 63) throw InputError("basis state string length out of range");
    BasisState b{static_cast<int>(s.size()), 0};
    for (char c : s) {
        if (c != '0' && c != '1') throw InputError("basis state string must be 0/1");
        b.bits = b.bits << 1 | (c == '1');
    }
    return b;
}

std::string BasisState::str() const {
    std::string s(n, '0');
    for (int k = 1; k <= n; ++k)
        if (bit(k)) s[k - 1] = '1';
    return s;
}

int BasisState::bit(int qubit) const {
    if (qubit < 1 || qubit > n) throw InputError("qubit index out of range");
    return bits >> (n - qubit) & 1;
}

Subsystem::Subsystem(int n, std::uint32_t mask) : n_(n), mask_(mask) {
    if (n < 0 || n > 30) throw InputError("subsystem size out of range");
    if (n < 32 && (mask >> n)) throw InputError("subsystem mask has bits past qubit n");
}

Subsystem Subsystem::from_indices(int n, const std::vector<int>& qubits) {
    std::uint32_t m = 0;
    for (int q : qubits) {
        if (q < 1 || q > n) throw InputError("subsystem qubit index out of range");
        m |= std::uint32_t(1) << (q - 1);
    }
    return Subsystem(n, m);
}

int Subsystem::size() const { return std::popcount(mask_); }

bool Subsystem::full() const { return size() == n_; }

bool Subsystem::contains(int qubit) const {
    return qubit >= 1 && qubit <= n_ && (mask_ >> (qubit - 1) & 1);
}

Subsystem Subsystem::complement() const {
    std::uint32_t all = n_ == 0 ? 0 : (std::uint32_t(1) << n_) - 1;
    return Subsystem(n_, all & ~mask_);
}

std::vector<int> Subsystem::indices() const {
    std::vector<int> idx;
    for (int k = 1; k <= n_; ++k)
        if (mask_ >> (k - 1) & 1) idx.push_back(k);
    return idx;
}

Subspace::Subspace(int n, std::vector<std::uint64_t> states)
    : n_(n), states_(std::move(states)) {
    if (n < 1 || n > 63) throw InputError("subspace qubit count out of range");
    if (states_.empty()) throw InputError("subspace needs at least one state");
    std::uint64_t limit = std::uint64_t(1) << n;
    for (std::size_t i = 0; i < states_.size(); ++i) {
        if (states_[i] >= limit) throw InputError("basis state outside the n-qubit register");
        if (!index_.emplace(states_[i], i).second)
            throw InputError("duplicate basis state in subspace");
    }
}

Subspace Subspace::from_strings(int n, const std::vector<std::string>& states) {
    std::vector<std::uint64_t> bits;
    bits.reserve(states.size());
    for (const auto& s : states) {
        BasisState b = BasisState::from_string(s);
        if (b.n != n) throw InputError("basis state length disagrees with n");
        bits.push_back(b.bits);
    }
    return Subspace(n, std::move(bits));
}

std::optional<std::size_t> Subspace::index_of(std::uint64_t bits) const {
    auto it = index_.find(bits);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::vector<std::string> Subspace::state_strings() const {
    std::vector<std::string> out;
    out.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) out.push_back(state(i).str());
    return out;
}

bool Subspace::same_states(const Subspace& o) const {
    if (n_ != o.n_ || states_.size() != o.states_.size()) return false;
    auto a = states_, b = o.states_;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

BasisState restrict_state(const BasisState& s, const Subsystem& a) {
    if (s.n != a.n()) throw InputError("restrict_state: size mismatch");
    BasisState out{a.size(), 0};
    for (int k = 1; k <= s.n; ++k)
        if (a.contains(k)) out.bits = out.bits << 1 | std::uint64_t(s.bit(k));
    return out;
}

namespace {

// value-space mask of a subsystem: qubit k lives at state bit n-k
std::uint64_t value_mask(int n, std::uint32_t subsys_mask) {
    std::uint64_t m = 0;
    for (int k = 1; k <= n; ++k)
        if (subsys_mask >> (k - 1) & 1) m |= std::uint64_t(1) << (n - k);
    return m;
}

// canonical class label per state (ids assigned in order of first appearance)
std::vector<std::uint32_t> quotient_labels(const Subspace& r, std::uint64_t vmask) {
    std::vector<std::uint32_t> labels(r.size());
    std::unordered_map<std::uint64_t, std::uint32_t> seen;
    std::uint32_t next = 0;
    for (std::size_t i = 0; i < r.size(); ++i) {
        auto [it, fresh] = seen.emplace(r.state_bits(i) & vmask, next);
        if (fresh) ++next;
        labels[i] = it->second;
    }
    return labels;
}

QuotientSet labels_to_classes(const std::vector<std::uint32_t>& labels) {
    std::uint32_t nclasses = labels.empty() ? 0 : *std::max_element(labels.begin(), labels.end()) + 1;
    QuotientSet q;
    q.classes.resize(nclasses);
    for (std::uint32_t i = 0; i < labels.size(); ++i)
        q.classes[labels[i]].push_back(i);
    return q;  // labels are first-appearance ids, so classes are already ordered by smallest member
}

}  // namespace

QuotientSet quotient_set(const Subspace& r, const Subsystem& a) {
    if (a.n() != r.n()) throw InputError("quotient_set: size mismatch");
    return labels_to_classes(quotient_labels(r, value_mask(r.n(), a.mask())));
}

bool subsystems_equivalent(const Subspace& r, const Subsystem& a1, const Subsystem& a2) {
    QuotientSet q1 = quotient_set(r, a1);
    QuotientSet q1c = quotient_set(r, a1.complement());
    QuotientSet q2 = quotient_set(r, a2);
    QuotientSet q2c = quotient_set(r, a2.complement());
    return (q1 == q2 && q1c == q2c) || (q1 == q2c && q1c == q2);
}

bool Bundle::contains(std::uint32_t mask) const {
    return std::binary_search(members.begin(), members.end(), mask,
                              [](std::uint32_t x, std::uint32_t y) {
                                  return std::pair(std::popcount(x), x) < std::pair(std::popcount(y), y);
                              });
}

BundleSet enumerate_bundles(const Subspace& r) {
    int n = r.n();
    if (n > 22) throw ResourceError("bundle enumeration is capped at 22 qubits");
    std::uint32_t full = (std::uint32_t(1) << n) - 1;

    // group canonical bipartitions (side containing qubit 1) by the unordered
    // pair of quotient partitions of the two sides
    std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>,
             std::vector<std::uint32_t>> groups;
    for (std::uint32_t m = 1; m <= full; m += 2) {
        auto la = quotient_labels(r, value_mask(n, m));
        auto lc = quotient_labels(r, value_mask(n, full & ~m));
        auto key = la <= lc ? std::pair(la, lc) : std::pair(lc, la);
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

CounterexampleFamily counterexample_family(int n) {
    if (n < 4) throw InputError("counterexample family starts at four qubits");
    if (n > 63) throw InputError("counterexample family capped at 63 qubits");
    std::vector<std::uint64_t> states = {0b0000, 0b0001, 0b1010, 0b1100};
    for (int m = 5; m <= n; ++m) {
        std::vector<std::uint64_t> next;
        next.reserve(states.size() + 1);
        next.push_back(1);  // 0...01 on m qubits
        for (std::uint64_t s : states) next.push_back(s << 1);
        states = std::move(next);
    }
    CounterexampleFamily fam;
    fam.r = Subspace(n, std::move(states));
    fam.a1 = Subsystem::from_indices(n, {1});
    fam.a2 = Subsystem::from_indices(n, {2, 3});
    return fam;
}

}  // namespace entbundle
