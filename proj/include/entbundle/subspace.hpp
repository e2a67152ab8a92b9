#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace entbundle {

// Computational basis state on n qubits. Qubit 1 is the leftmost character of
// the string form and the most significant of the n packed bits, so `bits` is
// simply the bitstring read as a binary number.
struct BasisState {
    int n = 0;
    std::uint64_t bits = 0;

    static BasisState from_string(const std::string& s);
    std::string str() const;
    int bit(int qubit) const;  // 1-based

    bool operator==(const BasisState&) const = default;
};

// Subset of the qubit positions 1..n. Bit k-1 of the mask selects qubit k.
class Subsystem {
public:
    Subsystem() = default;
    Subsystem(int n, std::uint32_t mask);
    static Subsystem from_indices(int n, const std::vector<int>& qubits);

    int n() const { return n_; }
    std::uint32_t mask() const { return mask_; }
    int size() const;
    bool empty() const { return mask_ == 0; }
    bool full() const;
    bool contains(int qubit) const;
    Subsystem complement() const;
    std::vector<int> indices() const;  // ascending, 1-based

    bool operator==(const Subsystem&) const = default;

private:
    int n_ = 0;
    std::uint32_t mask_ = 0;
};

// An ordered list of distinct basis states spanning a constrained subspace.
class Subspace {
public:
    Subspace() = default;
    Subspace(int n, std::vector<std::uint64_t> states);
    static Subspace from_strings(int n, const std::vector<std::string>& states);

    int n() const { return n_; }
    std::size_t size() const { return states_.size(); }
    std::uint64_t state_bits(std::size_t i) const { return states_[i]; }
    BasisState state(std::size_t i) const { return {n_, states_[i]}; }
    const std::vector<std::uint64_t>& states() const { return states_; }
    std::optional<std::size_t> index_of(std::uint64_t bits) const;
    std::vector<std::string> state_strings() const;

    // set comparison, ignoring order
    bool same_states(const Subspace& o) const;

private:
    int n_ = 0;
    std::vector<std::uint64_t> states_;
    std::unordered_map<std::uint64_t, std::size_t> index_;
};

// The bits of s at a's member positions, ascending, repacked with the lowest
// index leftmost. |100>, a={1}  ->  "1".
BasisState restrict_state(const BasisState& s, const Subsystem& a);

// Partition of a subspace's states by equality of their restriction to `a`
// (everything in one class when `a` is empty). Classes hold ascending state
// indices and are ordered by smallest member, which makes equality of two
// QuotientSets a plain structural comparison.
struct QuotientSet {
    std::vector<std::vector<std::uint32_t>> classes;

    bool operator==(const QuotientSet&) const = default;
    std::strong_ordering operator<=>(const QuotientSet&) const = default;
};

QuotientSet quotient_set(const Subspace& r, const Subsystem& a);

// Def.-style equivalence of two subsystems: the unordered pairs of quotients
// by each side of the bipartition coincide.
bool subsystems_equivalent(const Subspace& r, const Subsystem& a1, const Subsystem& a2);

// A class of subsystems sharing their bipartite structure. Members are closed
// under complement, so the bipartition count is half the member count.
struct Bundle {
    std::vector<std::uint32_t> members;  // subsystem masks sorted by (popcount, value)

    std::uint32_t canonical() const { return members.front(); }
    std::size_t bipartition_count() const { return members.size() / 2; }
    bool contains(std::uint32_t mask) const;
};

struct BundleSet {
    int n = 0;
    std::vector<Bundle> bundles;              // sorted by canonical member
    std::vector<std::uint32_t> bundle_of;     // subsystem mask -> bundle index

    const Bundle& bundle_containing(std::uint32_t mask) const { return bundles[bundle_of[mask]]; }
};

// Brute-force classification of the full power set of [n] into bundles by
// comparing memoized quotient partitions. Guarded at n <= 22.
BundleSet enumerate_bundles(const Subspace& r);

// Witness family for "equivalence is sufficient but not necessary": a subspace
// of n >= 4 states where a1={1} and a2={2,3} are inequivalent yet share the
// entanglement spectrum for every state of the span.
struct CounterexampleFamily {
    Subspace r;
    Subsystem a1, a2;
};

CounterexampleFamily counterexample_family(int n);

}  // namespace entbundle
