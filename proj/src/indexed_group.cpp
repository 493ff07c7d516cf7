#include "qdv/indexed_group.hpp"

#include <algorithm>
#include <unordered_map>

namespace qdv {

std::uint32_t IndexedGroup::element_order(std::uint32_t a) const {
    std::uint32_t x = a, order = 1;
    while (x != id_) {
        x = mul(x, a);
        ++order;
    }
    return order;
}

std::vector<std::uint32_t> IndexedGroup::closure_of(const std::vector<std::uint32_t>& gens,
                                                    std::size_t cap) const {
    std::vector<std::uint8_t> in(n_, 0);
    std::vector<std::uint32_t> out;
    out.reserve(64);
    in[id_] = 1;
    out.push_back(id_);
    for (std::uint32_t g : gens) {
        if (!in[g]) {
            in[g] = 1;
            out.push_back(g);
        }
    }
    for (std::size_t head = 0; head < out.size(); ++head) {
        const std::uint32_t e = out[head];
        for (std::uint32_t g : gens) {
            const std::uint32_t x = mul(e, g);
            if (!in[x]) {
                if (out.size() >= cap) return {};
                in[x] = 1;
                out.push_back(x);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint32_t x : v) {
            h ^= x;
            h *= 1099511628211ull;
        }
        return h;
    }
};

}  // namespace

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// <H, z> by walking right cosets of H: one BFS node per coset, |H| lookups
// to mark a new coset's elements. Leaves the membership bitmap in `in` and
// an order-independent hash in `hash`. Empty result when `cap` is passed.
std::vector<std::uint32_t> extend_subgroup(const IndexedGroup& g,
                                           const std::vector<std::uint32_t>& h_elements,
                                           const std::vector<std::uint32_t>& h_gens,
                                           std::uint32_t z, std::uint64_t cap,
                                           std::vector<std::uint8_t>& in,
                                           std::uint64_t& hash) {
    std::fill(in.begin(), in.end(), 0);
    std::vector<std::uint32_t> elems = h_elements;
    hash = 0;
    for (std::uint32_t e : h_elements) {
        in[e] = 1;
        hash += splitmix64(e);
    }
    std::vector<std::uint32_t> gens = h_gens;
    gens.push_back(z);
    std::vector<std::uint32_t> reps{g.id()};
    for (std::size_t head = 0; head < reps.size(); ++head) {
        const std::uint32_t r = reps[head];
        for (std::uint32_t y : gens) {
            const std::uint32_t e = g.mul(r, y);
            if (in[e]) continue;
            if (elems.size() + h_elements.size() > cap) return {};
            for (std::uint32_t h : h_elements) {
                const std::uint32_t x = g.mul(h, e);
                in[x] = 1;
                elems.push_back(x);
                hash += splitmix64(x);
            }
            reps.push_back(e);
        }
    }
    return elems;
}

}  // namespace

std::vector<SubgroupNode> subgroup_scan(const IndexedGroup& g, std::uint64_t max_order) {
    const std::uint32_t n = g.order();

    // One representative generator per cyclic subgroup.
    std::unordered_map<std::vector<std::uint32_t>, std::uint32_t, VecHash> cyclic;
    std::vector<std::uint32_t> cyclic_reps;
    for (std::uint32_t a = 0; a < n; ++a) {
        auto c = g.closure_of({a}, n + 1);
        if (cyclic.emplace(std::move(c), a).second) cyclic_reps.push_back(a);
    }

    // Dedup by order-independent hash, confirmed against the membership
    // bitmap; element lists are sorted only when a new subgroup is kept.
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> by_hash;
    std::vector<SubgroupNode> found;
    std::vector<std::uint8_t> scratch(n, 0);
    auto add = [&](std::vector<std::uint32_t> elements, std::uint64_t hash,
                   std::vector<std::uint32_t> gens) {
        if (elements.empty() || elements.size() > max_order) return false;
        for (std::size_t idx : by_hash[hash]) {
            if (found[idx].order != elements.size()) continue;
            bool same = true;
            for (std::uint32_t e : found[idx].elements)
                if (!scratch[e]) {
                    same = false;
                    break;
                }
            if (same) return false;
        }
        SubgroupNode node;
        node.order = elements.size();
        node.generators = std::move(gens);
        node.elements = std::move(elements);
        std::sort(node.elements.begin(), node.elements.end());
        by_hash[hash].push_back(found.size());
        found.push_back(std::move(node));
        return true;
    };
    auto seed = [&](std::vector<std::uint32_t> elements, std::vector<std::uint32_t> gens) {
        std::fill(scratch.begin(), scratch.end(), 0);
        std::uint64_t hash = 0;
        for (std::uint32_t e : elements) {
            scratch[e] = 1;
            hash += splitmix64(e);
        }
        add(std::move(elements), hash, std::move(gens));
    };

    seed(g.closure_of({}, 2), {});  // trivial subgroup
    for (std::uint32_t a : cyclic_reps)
        if (a != g.id()) seed(g.closure_of({a}, max_order + 1), {a});

    // Extend each known subgroup by each cyclic representative. Every
    // subgroup K = <x1,...,xm> appears along the chain of prefixes, all of
    // which are subgroups of K and hence within the cap.
    for (std::size_t head = 0; head < found.size(); ++head) {
        if (found[head].order * 2 > max_order) continue;
        std::vector<std::uint8_t> member(n, 0);
        for (std::uint32_t e : found[head].elements) member[e] = 1;
        for (std::uint32_t z : cyclic_reps) {
            if (member[z]) continue;
            std::vector<std::uint32_t> gens = found[head].generators;
            gens.push_back(z);
            std::uint64_t hash = 0;
            auto elements = extend_subgroup(g, found[head].elements, found[head].generators,
                                            z, max_order, scratch, hash);
            add(std::move(elements), hash, std::move(gens));
        }
    }

    std::sort(found.begin(), found.end(), [](const SubgroupNode& a, const SubgroupNode& b) {
        if (a.order != b.order) return a.order < b.order;
        return a.elements < b.elements;
    });
    return found;
}

std::vector<std::uint32_t> derived_subgroup_indices(const IndexedGroup& g) {
    const std::uint32_t n = g.order();
    std::vector<std::uint8_t> is_comm(n, 0);
    for (std::uint32_t a = 0; a < n; ++a)
        for (std::uint32_t b = 0; b < n; ++b)
            is_comm[g.mul(g.mul(a, b), g.mul(g.inv(a), g.inv(b)))] = 1;
    std::vector<std::uint32_t> gens;
    for (std::uint32_t e = 0; e < n; ++e)
        if (is_comm[e] && e != g.id()) gens.push_back(e);
    if (gens.empty()) return {g.id()};
    return g.closure_of(gens, n + 1);
}

std::vector<std::uint32_t> small_generating_set(const IndexedGroup& g,
                                                const std::vector<std::uint32_t>& elements) {
    if (elements.size() <= 1) return elements;
    std::vector<std::uint32_t> gens;
    std::size_t reached = 1;  // trivial group
    for (std::uint32_t e : elements) {
        if (e == g.id()) continue;
        std::vector<std::uint32_t> trial = gens;
        trial.push_back(e);
        auto c = g.closure_of(trial, elements.size() + 1);
        if (c.size() > reached) {
            gens = std::move(trial);
            reached = c.size();
            if (reached == elements.size()) break;
        }
    }
    if (reached != elements.size())
        throw ContractError("small_generating_set: input not closed");
    return gens;
}

}  // namespace qdv
