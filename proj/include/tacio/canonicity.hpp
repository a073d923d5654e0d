#pragma once
// Canonicity: which copies may be trusted as faithful to their reference,
// given acts that are processes of proper functioning and the absence of
// defeaters. The conditions are sufficient only, so a negative verdict
// means "not established by these conditions", never "proven unfaithful".

#include "tacio/lineage.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tacio {

enum class CanonicityVia { direct_ppf_act, ppf_chain, composite_ppf_act };

inline const char* to_string(CanonicityVia v) {
    switch (v) {
        case CanonicityVia::direct_ppf_act: return "DirectPpfAct";
        case CanonicityVia::ppf_chain: return "PpfChain";
        case CanonicityVia::composite_ppf_act: return "CompositePpfAct";
    }
    return "?";
}

struct CanonicityVerdict {
    bool holds = false;
    std::optional<CanonicityVia> via;
    std::set<EntityId> blocking;  // defeaters found on otherwise-qualifying acts

    bool operator==(const CanonicityVerdict&) const = default;
};

struct CanonicityOptions {
    // Accept chains of individually canonical hops as establishing
    // canonical membership. Strict semantics with it off.
    bool chain_rule = true;
};

enum class Fidelity { verified, mismatch, unknown };

inline const char* to_string(Fidelity f) {
    switch (f) {
        case Fidelity::verified: return "Verified";
        case Fidelity::mismatch: return "Mismatch";
        case Fidelity::unknown: return "Unknown";
    }
    return "?";
}

// Defeaters bearing on a target: those declared against it directly plus,
// for a carrier, those declared against any act that outputs it.
inline std::set<EntityId> defeaters_for(const Graph& g, const EntityId& target) {
    const bool is_carrier = g.carriers().count(target) != 0;
    if (!is_carrier && !g.acts().count(target)) {
        throw Error(Errc::unknown_id, "entity '" + target + "' is not an act or carrier");
    }
    std::set<EntityId> out;
    for (const auto& d : g.defeaters_on(target)) out.insert(d);
    if (is_carrier) {
        for (const auto& [id, a] : g.acts()) {
            if (a.output != target || a.kind == ActKind::encoding_icse) continue;
            for (const auto& d : g.defeaters_on(id)) out.insert(d);
        }
    }
    return out;
}

// x is a canonical copy of y when some copying act turns y into x as a
// process of proper functioning and nothing defeats x or that act.
inline CanonicityVerdict is_canonical_copy(const Graph& g, const EntityId& x, const EntityId& y) {
    detail::carrier_or_throw(g, x);
    detail::carrier_or_throw(g, y);
    CanonicityVerdict verdict;
    const auto on_output = defeaters_for(g, x);
    for (const auto& [id, a] : g.acts()) {
        if (a.kind != ActKind::copying || !a.reference) continue;
        if (*a.reference != y || a.output != x) continue;
        if (!a.ppf) continue;
        auto blockers = on_output;
        for (const auto& d : g.defeaters_on(id)) blockers.insert(d);
        auto via = a.atomic() ? CanonicityVia::direct_ppf_act : CanonicityVia::composite_ppf_act;
        if (blockers.empty()) {
            verdict.holds = true;
            verdict.via = via;
            verdict.blocking.clear();
            return verdict;
        }
        if (!verdict.via) verdict.via = via;
        verdict.blocking.insert(blockers.begin(), blockers.end());
    }
    return verdict;
}

inline std::set<EntityId> canonical_copies_of(const Graph& g, const EntityId& y) {
    detail::carrier_or_throw(g, y);
    std::set<EntityId> out;
    for (const auto& [id, a] : g.acts()) {
        if (a.kind != ActKind::copying || !a.reference || *a.reference != y) continue;
        if (!g.carriers().count(a.output) || out.count(a.output)) continue;
        if (is_canonical_copy(g, a.output, y).holds) out.insert(a.output);
    }
    return out;
}

namespace detail {

// The unique atomic copy path root -> ... -> x, outputs only (root omitted),
// ordered from the hop below root down to x. Empty when x == root or the
// producer chain never reaches root.
inline std::vector<EntityId> atomic_path_from(const Graph& g, const EntityId& root,
                                              const EntityId& x) {
    std::vector<EntityId> path;
    EntityId cur = x;
    std::set<EntityId> seen{cur};
    while (cur != root) {
        auto producer = g.atomic_producer_of(cur);
        if (!producer) return {};
        const EncodingAct& a = g.acts().at(*producer);
        if (a.kind != ActKind::copying || !a.reference) return {};
        path.push_back(cur);
        if (!seen.insert(*a.reference).second) return {};
        cur = *a.reference;
    }
    std::reverse(path.begin(), path.end());
    return path;
}

}  // namespace detail

// x is a canonical member of the aggregate rooted at `root` when either a
// PPF copying act (atomic or composite) goes straight from root to x with
// nothing defeating it, or -- with the chain rule on -- every hop of the
// atomic path from root to x is a canonical copy of its predecessor.
inline CanonicityVerdict is_canonical_member(const Graph& g, const EntityId& x,
                                             const EntityId& root,
                                             const CanonicityOptions& opts = {}) {
    detail::carrier_or_throw(g, x);
    detail::carrier_or_throw(g, root);
    if (x != root && earliest_ancestor(g, x) != root) {
        throw Error(Errc::not_a_member,
                    "carrier '" + x + "' is not in the aggregate rooted at '" + root + "'");
    }

    CanonicityVerdict direct = is_canonical_copy(g, x, root);
    if (direct.holds) return direct;

    if (opts.chain_rule && x != root) {
        auto path = detail::atomic_path_from(g, root, x);
        if (!path.empty()) {
            CanonicityVerdict chain;
            chain.holds = true;
            chain.via = CanonicityVia::ppf_chain;
            EntityId prev = root;
            for (const auto& hop : path) {
                CanonicityVerdict step = is_canonical_copy(g, hop, prev);
                if (!step.holds) {
                    chain.holds = false;
                    chain.via = std::nullopt;
                    chain.blocking.insert(step.blocking.begin(), step.blocking.end());
                    break;
                }
                prev = hop;
            }
            if (chain.holds) return chain;
            direct.blocking.insert(chain.blocking.begin(), chain.blocking.end());
        }
    }
    return direct;
}

// All canonical members of the aggregate rooted at `root` (the root itself
// is the reference, not a copy, and is excluded).
inline std::set<EntityId> canonical_members(const Graph& g, const EntityId& root,
                                            const CanonicityOptions& opts = {}) {
    detail::carrier_or_throw(g, root);
    if (earliest_ancestor(g, root) != root) {
        throw Error(Errc::not_a_root, "carrier '" + root + "' is not an aggregate root");
    }
    std::set<EntityId> out;
    for (const auto& m : descendants(g, root)) {
        if (is_canonical_member(g, m, root, opts).holds) out.insert(m);
    }
    return out;
}

// Digest comparison between everything the reference and output carry.
// Unknown whenever any carried content lacks a digest (or a side carries
// nothing); Verified requires the digest sets to agree exactly.
inline Fidelity verify_fidelity(const Graph& g, const EntityId& act) {
    const EncodingAct& a = detail::copy_act_or_throw(g, act);
    const Carrier& ref = detail::carrier_or_throw(g, *a.reference);
    const Carrier& out = detail::carrier_or_throw(g, a.output);
    auto digests = [&g](const Carrier& c) -> std::optional<std::set<std::string>> {
        std::set<std::string> ds;
        for (const auto& content : c.carries) {
            auto it = g.contents().find(content);
            if (it == g.contents().end() || !it->second.digest) return std::nullopt;
            ds.insert(*it->second.digest);
        }
        if (ds.empty()) return std::nullopt;
        return ds;
    };
    auto ref_ds = digests(ref);
    auto out_ds = digests(out);
    if (!ref_ds || !out_ds) return Fidelity::unknown;
    return *ref_ds == *out_ds ? Fidelity::verified : Fidelity::mismatch;
}

// Registers the rebutting defeater a Mismatch calls for. Returns the new
// defeater id, or nothing when fidelity is not Mismatch.
inline std::optional<EntityId> attach_mismatch_defeater(Graph& g, const EntityId& act) {
    if (verify_fidelity(g, act) != Fidelity::mismatch) return std::nullopt;
    EntityId id = act + ".mismatch";
    for (int n = 2; g.has_entity(id); ++n) id = act + ".mismatch-" + std::to_string(n);
    Defeater d;
    d.id = id;
    d.target = act;
    d.kind = DefeaterKind::rebutting;
    d.statement = "digest mismatch between reference and output of '" + act + "'";
    g.add_defeater(std::move(d));
    return id;
}

}  // namespace tacio
