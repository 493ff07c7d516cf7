#pragma once

// Generic enumerated finite group plus the permutation-action toolkit:
// breadth-first closure, orbit partitions, point stabilizers, transitivity
// rank, primitivity (minimal block systems) and Burnside orbit counting.
// Element ordering is the BFS insertion order from a fixed generator list,
// so every enumeration is reproducible.

#include <cstdint>
#include <functional>
#include <optional>
#include <queue>
#include <unordered_map>
#include <vector>

#include "qdv/errors.hpp"
#include "qdv/parallel.hpp"

namespace qdv {

template <class E, class Hash = std::hash<E>>
class GroupTable {
public:
    using MulFn = std::function<E(const E&, const E&)>;
    using InvFn = std::function<E(const E&)>;

    static GroupTable closure(E id, std::vector<E> generators, MulFn mul, InvFn inv,
                              std::size_t cap) {
        if (generators.empty()) throw std::invalid_argument("closure: no generators");
        GroupTable g;
        g.mul_ = std::move(mul);
        g.inv_ = std::move(inv);
        g.id_ = id;
        g.push(id);
        for (const E& gen : generators) g.push(gen);
        // Right-multiplication sweep; inverses are reached as positive powers.
        for (std::size_t head = 0; head < g.elements_.size(); ++head) {
            for (const E& gen : generators) {
                E next = g.mul_(g.elements_[head], gen);
                g.push(next);
                if (g.elements_.size() > cap)
                    throw SizeLimitError("closure: cap exceeded");
            }
        }
        g.generators_ = std::move(generators);
        return g;
    }

    // Wrap an already-closed element list (cache reload, stabilizer filter).
    // `generators` may be empty, in which case the full element list is used
    // as the generating set for orbit sweeps.
    static GroupTable from_elements(std::vector<E> elements, std::vector<E> generators,
                                    MulFn mul, InvFn inv, E id) {
        GroupTable g;
        g.mul_ = std::move(mul);
        g.inv_ = std::move(inv);
        g.id_ = id;
        for (E& e : elements) g.push(e);
        if (g.elements_.size() != elements.size())
            throw ContractError("from_elements: duplicate elements");
        g.generators_ = generators.empty() ? g.elements_ : std::move(generators);
        return g;
    }

    std::size_t order() const { return elements_.size(); }
    const std::vector<E>& elements() const { return elements_; }
    const std::vector<E>& generators() const { return generators_; }
    const E& identity() const { return id_; }
    const E& element(std::size_t i) const { return elements_[i]; }

    std::optional<std::uint32_t> index_of(const E& e) const {
        auto it = index_.find(e);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }
    bool contains(const E& e) const { return index_.contains(e); }

    E mul(const E& a, const E& b) const { return mul_(a, b); }
    E inv(const E& a) const { return inv_(a); }

    void set_generators(std::vector<E> gens) {
        for (const E& g : gens)
            if (!contains(g)) throw ContractError("set_generators: not in group");
        generators_ = std::move(gens);
    }

private:
    void push(const E& e) {
        if (index_.contains(e)) return;
        index_.emplace(e, static_cast<std::uint32_t>(elements_.size()));
        elements_.push_back(e);
    }

    std::vector<E> elements_;
    std::vector<E> generators_;
    std::unordered_map<E, std::uint32_t, Hash> index_;
    MulFn mul_;
    InvFn inv_;
    E id_{};
};

// ---------------------------------------------------------------------------
// group actions on an indexed point set

template <class E>
using ActionFn = std::function<std::uint32_t(const E&, std::uint32_t)>;

struct OrbitPartition {
    std::vector<std::uint32_t> rep;       // point -> first point of its orbit
    std::vector<std::uint32_t> orbit_id;  // point -> orbit index (discovery order)
    std::vector<std::uint64_t> orbit_sizes;

    std::size_t orbit_count() const { return orbit_sizes.size(); }
};

// Spot-check (gh).x == g.(h.x) on a few deterministic samples.
template <class E, class H>
void check_action_axiom(const GroupTable<E, H>& g, const ActionFn<E>& act,
                        std::size_t n_points) {
    if (n_points == 0) return;
    const auto& els = g.elements();
    const std::size_t samples = std::min<std::size_t>(els.size(), 8);
    for (std::size_t i = 0; i < samples; ++i) {
        const E& a = els[(i * 7919) % els.size()];
        const E& b = els[(i * 104729 + 1) % els.size()];
        const std::uint32_t x = static_cast<std::uint32_t>((i * 15485863) % n_points);
        if (act(g.mul(a, b), x) != act(a, act(b, x)))
            throw ContractError("orbits: action axiom violated");
    }
}

// Orbit sweep applying only the generators.
template <class E, class H>
OrbitPartition orbits(const GroupTable<E, H>& g, const ActionFn<E>& act,
                      std::size_t n_points, bool check_axiom = true) {
    if (check_axiom) check_action_axiom(g, act, n_points);
    OrbitPartition part;
    part.rep.assign(n_points, UINT32_MAX);
    part.orbit_id.assign(n_points, UINT32_MAX);
    std::vector<std::uint32_t> stack;
    for (std::uint32_t start = 0; start < n_points; ++start) {
        if (part.rep[start] != UINT32_MAX) continue;
        const std::uint32_t oid = static_cast<std::uint32_t>(part.orbit_sizes.size());
        std::uint64_t size = 0;
        stack.assign(1, start);
        part.rep[start] = start;
        part.orbit_id[start] = oid;
        while (!stack.empty()) {
            const std::uint32_t x = stack.back();
            stack.pop_back();
            ++size;
            for (const E& gen : g.generators()) {
                const std::uint32_t y = act(gen, x);
                if (part.rep[y] == UINT32_MAX) {
                    part.rep[y] = start;
                    part.orbit_id[y] = oid;
                    stack.push_back(y);
                }
            }
        }
        part.orbit_sizes.push_back(size);
    }
    return part;
}

template <class E, class H>
GroupTable<E, H> point_stabilizer(const GroupTable<E, H>& g, const ActionFn<E>& act,
                                  std::uint32_t x) {
    // Plain element filter; fine up to a few million elements.
    const auto& els = g.elements();
    std::vector<std::uint8_t> keep(els.size(), 0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(els.size()); ++i)
        keep[static_cast<std::size_t>(i)] = act(els[static_cast<std::size_t>(i)], x) == x;
    std::vector<E> sub;
    for (std::size_t i = 0; i < els.size(); ++i)
        if (keep[i]) sub.push_back(els[i]);
    return GroupTable<E, H>::from_elements(
        std::move(sub), {}, [&g](const E& a, const E& b) { return g.mul(a, b); },
        [&g](const E& a) { return g.inv(a); }, g.identity());
}

// Number of orbits of a point stabilizer on `domain` (which must be a single
// orbit of g, i.e. g transitive on it); includes the fixed point's orbit.
template <class E, class H>
std::size_t transitivity_rank(const GroupTable<E, H>& g, const ActionFn<E>& act,
                              std::size_t n_points,
                              const std::vector<std::uint32_t>& domain) {
    if (domain.empty()) throw std::domain_error("transitivity_rank: empty domain");
    OrbitPartition whole = orbits(g, act, n_points);
    const std::uint32_t rep = whole.rep[domain[0]];
    for (std::uint32_t x : domain)
        if (whole.rep[x] != rep)
            throw std::domain_error("transitivity_rank: group not transitive on domain");
    if (whole.orbit_sizes[whole.orbit_id[domain[0]]] != domain.size())
        throw std::domain_error("transitivity_rank: domain is not a full orbit");
    GroupTable<E, H> stab = point_stabilizer(g, act, domain[0]);
    OrbitPartition sub = orbits(stab, act, n_points, false);
    std::vector<std::uint32_t> seen;
    for (std::uint32_t x : domain) {
        const std::uint32_t oid = sub.orbit_id[x];
        bool found = false;
        for (std::uint32_t s : seen) found |= (s == oid);
        if (!found) seen.push_back(oid);
    }
    return seen.size();
}

struct BlockSystem {
    bool primitive = false;
    // A nontrivial block system if one exists: block size and the partition
    // (point -> block id over the acted-on domain).
    std::uint64_t block_size = 0;
    std::vector<std::uint32_t> block_of;
};

// Minimal-block algorithm: close the pair {x0, y} under the generators for
// every y and look for a nontrivial invariant partition.
template <class E, class H>
BlockSystem primitivity(const GroupTable<E, H>& g, const ActionFn<E>& act,
                        std::size_t n_points,
                        const std::vector<std::uint32_t>& domain) {
    if (domain.size() < 2) throw std::domain_error("primitivity: domain too small");
    OrbitPartition whole = orbits(g, act, n_points);
    for (std::uint32_t x : domain)
        if (whole.rep[x] != whole.rep[domain[0]])
            throw std::domain_error("primitivity: group not transitive on domain");

    std::vector<std::uint32_t> parent(n_points);
    auto find = [&](std::uint32_t a) {
        while (parent[a] != a) { parent[a] = parent[parent[a]]; a = parent[a]; }
        return a;
    };

    const std::uint32_t x0 = domain[0];
    for (std::size_t yi = 1; yi < domain.size(); ++yi) {
        for (std::uint32_t i = 0; i < n_points; ++i) parent[i] = i;
        std::vector<std::pair<std::uint32_t, std::uint32_t>> queue;
        parent[find(domain[yi])] = find(x0);
        queue.emplace_back(x0, domain[yi]);
        while (!queue.empty()) {
            auto [a, b] = queue.back();
            queue.pop_back();
            for (const E& gen : g.generators()) {
                const std::uint32_t ia = act(gen, a);
                const std::uint32_t ib = act(gen, b);
                const std::uint32_t ra = find(ia);
                const std::uint32_t rb = find(ib);
                if (ra != rb) {
                    parent[ra] = rb;
                    queue.emplace_back(ia, ib);
                }
            }
        }
        // Count the block containing x0.
        std::uint64_t size = 0;
        for (std::uint32_t x : domain)
            if (find(x) == find(x0)) ++size;
        if (size > 1 && size < domain.size()) {
            BlockSystem bs;
            bs.primitive = false;
            bs.block_size = size;
            bs.block_of.assign(n_points, UINT32_MAX);
            std::unordered_map<std::uint32_t, std::uint32_t> ids;
            for (std::uint32_t x : domain) {
                const std::uint32_t r = find(x);
                auto it = ids.emplace(r, static_cast<std::uint32_t>(ids.size())).first;
                bs.block_of[x] = it->second;
            }
            return bs;
        }
    }
    BlockSystem bs;
    bs.primitive = true;
    return bs;
}

// Exact Burnside count: (1/|G|) sum_g |fix(g)|. Integer division is checked.
template <class E, class H>
std::uint64_t burnside_orbit_count(const GroupTable<E, H>& g, const ActionFn<E>& act,
                                   std::size_t n_points) {
    const auto& els = g.elements();
    const std::uint64_t total = chunked_reduce(
        els.size(), std::uint64_t{0},
        [&](std::uint64_t& part, std::size_t i) {
            std::uint64_t fixed = 0;
            for (std::uint32_t x = 0; x < n_points; ++x)
                if (act(els[i], x) == x) ++fixed;
            part += fixed;
        },
        [](std::uint64_t& total_, std::uint64_t part) { total_ += part; });
    if (total % els.size() != 0)
        throw InternalConsistencyError("burnside: sum of fixed points not divisible by |G|");
    return total / els.size();
}

}  // namespace qdv
