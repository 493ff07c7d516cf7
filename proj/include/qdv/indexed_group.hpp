#pragma once

// Dense Cayley-table view of a small enumerated group (desk scale,
// |G| <= 10^4). Subgroup enumeration, derived subgroups and generating-set
// reduction all work on element indices against this table.

#include <cstdint>
#include <vector>

#include "qdv/errors.hpp"
#include "qdv/group_table.hpp"

namespace qdv {

class IndexedGroup {
public:
    static constexpr std::size_t kMaxOrder = 10000;

    template <class E, class H>
    static IndexedGroup build(const GroupTable<E, H>& g) {
        const std::size_t n = g.order();
        if (n > kMaxOrder) throw SizeLimitError("IndexedGroup: group too large");
        IndexedGroup ig;
        ig.n_ = static_cast<std::uint32_t>(n);
        ig.table_.assign(n * n, 0);
        ig.inv_.assign(n, 0);
        const auto& els = g.elements();
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
        for (long long a = 0; a < static_cast<long long>(n); ++a) {
            for (std::size_t b = 0; b < n; ++b) {
                auto idx = g.index_of(g.mul(els[static_cast<std::size_t>(a)], els[b]));
                if (!idx) throw ContractError("IndexedGroup: product left the element set");
                ig.table_[static_cast<std::size_t>(a) * n + b] = *idx;
            }
            auto idx = g.index_of(g.inv(els[static_cast<std::size_t>(a)]));
            if (!idx) throw ContractError("IndexedGroup: inverse left the element set");
            ig.inv_[static_cast<std::size_t>(a)] = *idx;
        }
        ig.id_ = *g.index_of(g.identity());
        return ig;
    }

    std::uint32_t order() const { return n_; }
    std::uint32_t id() const { return id_; }
    std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
        return table_[static_cast<std::size_t>(a) * n_ + b];
    }
    std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }

    std::uint32_t element_order(std::uint32_t a) const;

    // Closure of a generator index list; aborts (returns empty) as soon as
    // the closure exceeds `cap`.
    std::vector<std::uint32_t> closure_of(const std::vector<std::uint32_t>& gens,
                                          std::size_t cap) const;

private:
    std::uint32_t n_ = 0;
    std::uint32_t id_ = 0;
    std::vector<std::uint32_t> table_;
    std::vector<std::uint32_t> inv_;
};

struct SubgroupNode {
    std::vector<std::uint32_t> generators;  // element indices, extension chain
    std::vector<std::uint32_t> elements;    // sorted element indices
    std::uint64_t order = 0;
};

// All subgroups of order <= max_order, each exactly once, in a deterministic
// order (by order, then by sorted element list). Seeds are the cyclic
// subgroups; every subgroup is reached as a chain <g1>, <g1,g2>, ... of
// closures, so no subgroup shape is missed.
std::vector<SubgroupNode> subgroup_scan(const IndexedGroup& g, std::uint64_t max_order);

// Closure of all commutators, as element indices (sorted).
std::vector<std::uint32_t> derived_subgroup_indices(const IndexedGroup& g);

// Greedy small generating set for the subgroup spanned by `elements`
// (deterministic: scans candidates in index order).
std::vector<std::uint32_t> small_generating_set(const IndexedGroup& g,
                                                const std::vector<std::uint32_t>& elements);

}  // namespace qdv
