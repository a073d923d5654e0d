#pragma once
// Copy lineage over a validated graph: descendant/ancestor closure of the
// copy relation, the four-way classification of copy acts, and aggregates
// of a reference carrier with its transitive copies.

#include "tacio/model.hpp"

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace tacio {

enum class CopyClass {
    duplication,
    carrier_transition,
    concretizer_transition,
    carrier_and_concretizer_transition,
};

inline const char* to_string(CopyClass c) {
    switch (c) {
        case CopyClass::duplication: return "Duplication";
        case CopyClass::carrier_transition: return "CarrierTransition";
        case CopyClass::concretizer_transition: return "ConcretizerTransition";
        case CopyClass::carrier_and_concretizer_transition:
            return "CarrierAndConcretizerTransition";
    }
    return "?";
}

enum class AggregateClass { duplicates, pseudo_duplicates };

inline const char* to_string(AggregateClass c) {
    return c == AggregateClass::duplicates ? "Duplicates" : "PseudoDuplicates";
}

// A root carrier with every transitive copy descended from it.
struct Aggregate {
    EntityId root;
    std::set<EntityId> members;  // includes root
    AggregateClass classification = AggregateClass::duplicates;

    bool operator==(const Aggregate&) const = default;
};

namespace detail {

inline const EncodingAct& copy_act_or_throw(const Graph& g, const EntityId& act) {
    auto it = g.acts().find(act);
    if (it == g.acts().end()) throw Error(Errc::unknown_id, "act '" + act + "' is not declared");
    if (it->second.kind != ActKind::copying)
        throw Error(Errc::not_a_copy_act, "act '" + act + "' is not a copying act");
    return it->second;
}

inline const Carrier& carrier_or_throw(const Graph& g, const EntityId& id) {
    auto it = g.carriers().find(id);
    if (it == g.carriers().end())
        throw Error(Errc::unknown_id, "carrier '" + id + "' is not declared");
    return it->second;
}

// Two content items count as the same content when they are the same record
// or both carry an equal digest.
inline bool same_content(const Graph& g, const EntityId& a, const EntityId& b) {
    if (a == b) return true;
    auto ia = g.contents().find(a);
    auto ib = g.contents().find(b);
    if (ia == g.contents().end() || ib == g.contents().end()) return false;
    return ia->second.digest && ib->second.digest && *ia->second.digest == *ib->second.digest;
}

inline std::map<EntityId, std::set<EntityId>> forward_adjacency(const Graph& g) {
    std::map<EntityId, std::set<EntityId>> adj;
    for (const auto& [id, a] : g.acts()) {
        if (a.kind == ActKind::copying && a.reference) adj[*a.reference].insert(a.output);
    }
    return adj;
}

inline std::map<EntityId, std::set<EntityId>> reverse_adjacency(const Graph& g) {
    std::map<EntityId, std::set<EntityId>> adj;
    for (const auto& [id, a] : g.acts()) {
        if (a.kind == ActKind::copying && a.reference) adj[a.output].insert(*a.reference);
    }
    return adj;
}

}  // namespace detail

// A copy succeeded when its output carries content identical (by the
// content-identity proxy) to something the reference carries.
inline bool successful(const Graph& g, const EntityId& act) {
    const EncodingAct& a = detail::copy_act_or_throw(g, act);
    const Carrier& ref = detail::carrier_or_throw(g, *a.reference);
    const Carrier& out = detail::carrier_or_throw(g, a.output);
    for (const auto& rc : ref.carries) {
        for (const auto& oc : out.carries) {
            if (detail::same_content(g, rc, oc)) return true;
        }
    }
    return false;
}

inline CopyClass classify_copy_act(const Graph& g, const EntityId& act) {
    const EncodingAct& a = detail::copy_act_or_throw(g, act);
    const Carrier& ref = detail::carrier_or_throw(g, *a.reference);
    const Carrier& out = detail::carrier_or_throw(g, a.output);
    const bool carrier_differs = ref.carrier_type != out.carrier_type;
    const bool concretizer_differs = ref.concretizer_type != out.concretizer_type;
    if (carrier_differs && concretizer_differs)
        return CopyClass::carrier_and_concretizer_transition;
    if (carrier_differs) return CopyClass::carrier_transition;
    if (concretizer_differs) return CopyClass::concretizer_transition;
    return CopyClass::duplication;
}

// One (reference, output) edge per copying act, atomic or composite.
inline std::set<std::pair<EntityId, EntityId>> descendant_edges(const Graph& g) {
    std::set<std::pair<EntityId, EntityId>> edges;
    for (const auto& [id, a] : g.acts()) {
        if (a.kind == ActKind::copying && a.reference) edges.emplace(*a.reference, a.output);
    }
    return edges;
}

inline std::set<EntityId> descendants(const Graph& g, const EntityId& x) {
    detail::carrier_or_throw(g, x);
    auto down = detail::reach(detail::forward_adjacency(g), x);
    down.erase(x);
    return down;
}

inline std::set<EntityId> ancestors(const Graph& g, const EntityId& x) {
    detail::carrier_or_throw(g, x);
    auto up = detail::reach(detail::reverse_adjacency(g), x);
    up.erase(x);
    return up;
}

// Root of the atomic-producer chain above x; x itself when nothing copies
// into it. Composite shortcut edges never move the root.
inline EntityId earliest_ancestor(const Graph& g, const EntityId& x) {
    detail::carrier_or_throw(g, x);
    EntityId cur = x;
    std::set<EntityId> seen{cur};
    while (true) {
        auto producer = g.atomic_producer_of(cur);
        if (!producer) return cur;
        const EncodingAct& a = g.acts().at(*producer);
        if (a.kind != ActKind::copying || !a.reference) return cur;
        if (!g.carriers().count(*a.reference)) return cur;
        if (!seen.insert(*a.reference).second) return cur;  // defensive on cyclic input
        cur = *a.reference;
    }
}

namespace detail {

inline AggregateClass classify_members(const Graph& g, const std::set<EntityId>& members) {
    for (const auto& [id, a] : g.acts()) {
        if (a.kind != ActKind::copying || !a.atomic() || !a.reference) continue;
        if (!members.count(*a.reference) || !members.count(a.output)) continue;
        if (classify_copy_act(g, id) != CopyClass::duplication)
            return AggregateClass::pseudo_duplicates;
    }
    return AggregateClass::duplicates;
}

}  // namespace detail

inline Aggregate aggregate_of(const Graph& g, const EntityId& x) {
    Aggregate agg;
    agg.root = earliest_ancestor(g, x);
    agg.members = descendants(g, agg.root);
    agg.members.insert(agg.root);
    agg.classification = detail::classify_members(g, agg.members);
    return agg;
}

// One aggregate per root carrier, sorted by root id. Their member sets
// partition the carriers of a valid graph.
inline std::vector<Aggregate> all_aggregates(const Graph& g) {
    std::vector<Aggregate> out;
    for (const auto& [id, c] : g.carriers()) {
        if (earliest_ancestor(g, id) == id) out.push_back(aggregate_of(g, id));
    }
    return out;
}

}  // namespace tacio
