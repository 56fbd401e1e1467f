#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sogkit {

using Mask = std::uint64_t;

/// Finite poset on {0..size-1}; below(i) is the bitset of elements <= i.
class FinPoset {
public:
    FinPoset() = default;
    /// Reflexive-transitive closure of the given strict pairs (i < j);
    /// throws on antisymmetry violations.
    FinPoset(std::size_t size, const std::vector<std::pair<int, int>>& less);
    static FinPoset antichain(std::size_t size);
    static FinPoset chain(std::size_t size);
    static FinPoset from_below(std::vector<Mask> below);

    std::size_t size() const { return below_.size(); }
    bool leq(int i, int j) const { return (below_[j] >> i) & 1u; }
    Mask below(int i) const { return below_[i]; }

private:
    void validate() const;
    std::vector<Mask> below_;
};

/// Finite distributive lattice in Birkhoff form: a poset of
/// join-irreducibles and the sorted list of its down-sets.  Join is union,
/// meet is intersection of down-set masks.
class FinDistLattice {
public:
    FinDistLattice() = default;

    /// Lattice of all down-sets of p; throws element_bound_exceeded when the
    /// enumeration outgrows the bound.
    static FinDistLattice downsets_of(const FinPoset& p, std::size_t bound = (std::size_t{1} << 20));
    static FinDistLattice boolean(std::size_t atoms);
    static FinDistLattice chain_lattice(std::size_t length);  // length+1 elements

    std::size_t size() const { return elems_.size(); }
    Mask element(int i) const { return elems_[i]; }
    int index_of(Mask m) const;  // -1 when absent

    int bottom() const { return 0; }
    int top() const { return static_cast<int>(elems_.size()) - 1; }
    int join(int i, int j) const { return index_of(elems_[i] | elems_[j]); }
    int meet(int i, int j) const { return index_of(elems_[i] & elems_[j]); }
    bool leq(int i, int j) const { return (elems_[i] & ~elems_[j]) == 0; }

    const FinPoset& jposet() const { return jposet_; }
    std::size_t ji_count() const { return jposet_.size(); }
    /// Element index of join-irreducible p (its principal down-set).
    int ji_element(int p) const;
    /// Element index of p_*, the unique lower cover of join-irreducible p.
    int ji_lower_star(int p) const;
    /// Join-irreducibles below element i, as a bitmask over the j-poset.
    Mask jset(int i) const { return elems_[i]; }
    /// Fixed linear extension of the join-irreducibles (smaller first).
    std::vector<int> ji_order() const;

    std::vector<std::pair<int, int>> covers() const;  // (u, v) with v covering u
    bool distributive_law_holds() const;              // triple scan

    struct Interval;
    Interval interval_below(int elem) const;

private:
    FinPoset jposet_;
    std::vector<Mask> elems_;  // sorted ascending
};

struct FinDistLattice::Interval {
    FinDistLattice lat;
    std::vector<int> to_parent;  // element index map
    std::vector<int> ji_to_parent;
};

/// Finite join-semilattice with zero, given by its Cayley table.
class FinSemilattice {
public:
    FinSemilattice() = default;
    FinSemilattice(std::size_t size, std::vector<int> table, int zero);

    std::size_t size() const { return size_; }
    int join(int i, int j) const { return table_[static_cast<std::size_t>(i) * size_ + j]; }
    int zero() const { return zero_; }
    bool leq(int i, int j) const { return join(i, j) == j; }
    int top() const;
    Mask down_mask(int e) const;  // { x : x <= e }

    static FinSemilattice from_lattice_joins(const FinDistLattice& l);

private:
    std::size_t size_ = 0;
    std::vector<int> table_;
    int zero_ = 0;
};

/// Ideals of a finite semilattice: the nonempty subsets closed under the
/// rule x+y in A iff x,y in A (join-closed down-sets).
struct IdealLattice {
    std::vector<Mask> ideals;  // sorted carrier masks
    bool distributive = false;
    std::optional<FinDistLattice> lattice;  // present iff distributive
    std::vector<int> ideal_elem;            // ideal position -> lattice element
    std::vector<int> principal;             // carrier e -> lattice element of [0,e]
    std::string note;                       // diagnostic when not distributive
};

IdealLattice ideal_lattice(const FinSemilattice& s);

struct GeneratedSublattice {
    FinDistLattice lat;
    std::vector<int> to_parent;  // new element -> parent element index
};

/// Smallest subset of l containing the given elements and closed under join
/// and meet, with its own Birkhoff data and the inclusion map.
GeneratedSublattice sublattice_generated(const FinDistLattice& l, const std::vector<int>& elems);

/// Build the Birkhoff representation of an abstract finite lattice given by
/// a partial order; fails when joins/meets are missing and reports a witness
/// when the distributive law fails.
struct BirkhoffResult {
    bool distributive = false;
    std::optional<FinDistLattice> lattice;
    std::vector<int> elem_index;  // abstract position -> lattice element
    std::array<int, 3> witness{-1, -1, -1};
};

BirkhoffResult birkhoff_from_leq(std::size_t n, const std::function<bool(int, int)>& leq);

}  // namespace sogkit
