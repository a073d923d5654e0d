#pragma once
// Typed in-memory store for information carriers, their contents, the acts
// that encode or copy them, and the defeaters that cast doubt on those acts.
//
// Build phase is single-writer; once validate() returns no findings the
// graph is treated as immutable and every read operation is safe to call
// concurrently.

#include "tacio/errors.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tacio {

using EntityId = std::string;

enum class ActKind { encoding, copying, encoding_icse };
enum class DefeaterKind { rebutting, undercutting };

inline const char* to_string(ActKind k) {
    switch (k) {
        case ActKind::encoding: return "encoding";
        case ActKind::copying: return "copying";
        case ActKind::encoding_icse: return "encoding_icse";
    }
    return "?";
}

inline const char* to_string(DefeaterKind k) {
    return k == DefeaterKind::rebutting ? "rebutting" : "undercutting";
}

// Extra fields carried through ingest untouched: key -> raw JSON text.
using ExtraFields = std::map<std::string, std::string>;

// An information content entity. The digest, when present, is the identity
// proxy for "carries the same content".
struct ContentItem {
    EntityId id;
    std::optional<std::string> digest;
    std::set<EntityId> about;
    ExtraFields extra;

    bool operator==(const ContentItem&) const = default;
};

// An information bearing entity: a material carrier plus the type of the
// pattern that concretizes content in it.
struct Carrier {
    EntityId id;
    std::string carrier_type;
    std::string concretizer_type;
    std::set<EntityId> carries;
    std::set<EntityId> parts;
    ExtraFields extra;

    bool operator==(const Carrier&) const = default;
};

// A directive prescribing how a copy is to be formed.
struct Icse {
    EntityId id;
    std::string expected_carrier_type;
    std::string expected_concretizer_type;
    std::string payload;
    ExtraFields extra;

    bool operator==(const Icse&) const = default;
};

struct EncodingAct {
    EntityId id;
    ActKind kind = ActKind::encoding;
    EntityId agent;
    std::optional<EntityId> reference;  // present iff kind == copying
    EntityId output;                    // carrier, or icse for encoding_icse
    bool ppf = false;                   // process of proper functioning
    std::vector<EntityId> sub_acts;     // ordered occurrent parts
    std::optional<EntityId> prescribed_by;
    std::optional<std::string> at;      // opaque RFC 3339 text, never interpreted
    ExtraFields extra;

    bool atomic() const { return sub_acts.empty(); }

    bool operator==(const EncodingAct&) const = default;
};

struct Defeater {
    EntityId id;
    EntityId target;  // an act or a carrier
    DefeaterKind kind = DefeaterKind::rebutting;
    std::string statement;
    ExtraFields extra;

    bool operator==(const Defeater&) const = default;
};

class Graph {
public:
    Graph() = default;

    const std::map<EntityId, ContentItem>& contents() const { return contents_; }
    const std::map<EntityId, Carrier>& carriers() const { return carriers_; }
    const std::map<EntityId, EncodingAct>& acts() const { return acts_; }
    const std::map<EntityId, Icse>& icses() const { return icses_; }
    const std::map<EntityId, Defeater>& defeaters() const { return defeaters_; }
    const std::set<EntityId>& agents() const { return agents_; }
    const std::set<EntityId>& topics() const { return topics_; }

    bool has_entity(const EntityId& id) const {
        return contents_.count(id) || carriers_.count(id) || acts_.count(id) ||
               icses_.count(id) || defeaters_.count(id) || agents_.count(id);
    }

    // Id of the atomic act producing this carrier, if any.
    std::optional<EntityId> atomic_producer_of(const EntityId& carrier) const {
        auto it = atomic_producers_.find(carrier);
        if (it == atomic_producers_.end()) return std::nullopt;
        return it->second;
    }

    // Defeaters declared directly against one target, sorted by id.
    std::vector<EntityId> defeaters_on(const EntityId& target) const {
        auto [lo, hi] = defeaters_by_target_.equal_range(target);
        std::vector<EntityId> out;
        for (auto it = lo; it != hi; ++it) out.push_back(it->second);
        std::sort(out.begin(), out.end());
        return out;
    }

    void add_content(ContentItem c) {
        require_token(c.id, "content id");
        require_fresh(c.id);
        if (c.digest && !is_digest(*c.digest)) {
            throw Error(Errc::invalid_field,
                        "content '" + c.id + "' digest '" + *c.digest + "' is not algo:hex");
        }
        for (const auto& target : c.about) require_token(target, "about target");
        claim(c.id);
        for (const auto& target : c.about) {
            if (!has_entity(target)) topics_.insert(target);
        }
        contents_.emplace(c.id, std::move(c));
    }

    void add_carrier(Carrier c) {
        require_token(c.id, "carrier id");
        require_fresh(c.id);
        require_token(c.carrier_type, "carrier_type of '" + c.id + "'");
        require_token(c.concretizer_type, "concretizer_type of '" + c.id + "'");
        for (const auto& r : c.carries) require_token(r, "carries entry");
        for (const auto& r : c.parts) require_token(r, "parts entry");
        claim(c.id);
        carriers_.emplace(c.id, std::move(c));
    }

    void add_icse(Icse i) {
        require_token(i.id, "icse id");
        require_fresh(i.id);
        require_token(i.expected_carrier_type, "expected_carrier_type of '" + i.id + "'");
        require_token(i.expected_concretizer_type, "expected_concretizer_type of '" + i.id + "'");
        claim(i.id);
        icses_.emplace(i.id, std::move(i));
    }

    void add_act(EncodingAct a) {
        require_token(a.id, "act id");
        require_fresh(a.id);
        require_token(a.agent, "agent of '" + a.id + "'");
        require_token(a.output, "output of '" + a.id + "'");
        if (a.kind == ActKind::copying && !a.reference) {
            throw Error(Errc::missing_reference, "copying act '" + a.id + "' has no reference");
        }
        if (a.kind != ActKind::copying && a.reference) {
            throw Error(Errc::invalid_field,
                        "act '" + a.id + "' is not a copying act but declares a reference");
        }
        if (a.reference) require_token(*a.reference, "reference of '" + a.id + "'");
        if (a.prescribed_by) require_token(*a.prescribed_by, "prescribed_by of '" + a.id + "'");
        for (const auto& s : a.sub_acts) require_token(s, "sub_act entry of '" + a.id + "'");
        if (a.atomic() && a.kind != ActKind::encoding_icse) {
            auto prior = atomic_producers_.find(a.output);
            if (prior != atomic_producers_.end()) {
                throw Error(Errc::second_producer,
                            "carrier '" + a.output + "' already produced by atomic act '" +
                                prior->second + "'");
            }
            atomic_producers_.emplace(a.output, a.id);
        }
        claim(a.id);
        acts_.emplace(a.id, std::move(a));
    }

    void add_defeater(Defeater d) {
        require_token(d.id, "defeater id");
        require_fresh(d.id);
        require_token(d.target, "target of '" + d.id + "'");
        if (!acts_.count(d.target) && !carriers_.count(d.target)) {
            throw Error(Errc::dangling_target,
                        "defeater '" + d.id + "' targets unknown entity '" + d.target + "'");
        }
        claim(d.id);
        defeaters_by_target_.emplace(d.target, d.id);
        defeaters_.emplace(d.id, std::move(d));
    }

    void add_agent(EntityId id) {
        require_token(id, "agent id");
        require_fresh(id);
        claim(id);
        agents_.insert(std::move(id));
    }

    bool operator==(const Graph& other) const {
        return contents_ == other.contents_ && carriers_ == other.carriers_ &&
               acts_ == other.acts_ && icses_ == other.icses_ &&
               defeaters_ == other.defeaters_ && agents_ == other.agents_ &&
               topics_ == other.topics_;
    }

private:
    static void require_token(const std::string& value, const std::string& what) {
        if (!is_token(value)) {
            throw Error(Errc::invalid_field, what + " '" + value + "' is not a valid token");
        }
    }

    void require_fresh(const EntityId& id) const {
        if (has_entity(id)) throw Error(Errc::duplicate_id, "id '" + id + "' already declared");
    }

    // Ids named only as about-targets are weak; a real declaration takes over.
    void claim(const EntityId& id) { topics_.erase(id); }

    std::map<EntityId, ContentItem> contents_;
    std::map<EntityId, Carrier> carriers_;
    std::map<EntityId, EncodingAct> acts_;
    std::map<EntityId, Icse> icses_;
    std::map<EntityId, Defeater> defeaters_;
    std::set<EntityId> agents_;
    std::set<EntityId> topics_;

    std::map<EntityId, EntityId> atomic_producers_;           // carrier -> act
    std::multimap<EntityId, EntityId> defeaters_by_target_;   // target -> defeater
};

namespace detail {

// Reachability over an adjacency map, excluding the start node unless it
// sits on a cycle.
inline std::set<EntityId> reach(const std::map<EntityId, std::set<EntityId>>& adj,
                                const EntityId& start) {
    std::set<EntityId> seen;
    std::vector<EntityId> stack;
    if (auto it = adj.find(start); it != adj.end()) {
        for (const auto& n : it->second) {
            if (seen.insert(n).second) stack.push_back(n);
        }
    }
    while (!stack.empty()) {
        EntityId cur = stack.back();
        stack.pop_back();
        auto it = adj.find(cur);
        if (it == adj.end()) continue;
        for (const auto& n : it->second) {
            if (seen.insert(n).second) stack.push_back(n);
        }
    }
    return seen;
}

// One CYCLE finding per strongly-connected knot, reported on its least id.
// Nodes iterate in sorted order, so the first unreported cycle node is the
// least id of its component.
inline void report_cycles(const std::map<EntityId, std::set<EntityId>>& adj,
                          const std::string& what, std::vector<Diagnostic>& out) {
    std::set<EntityId> reported;
    for (const auto& [node, _] : adj) {
        if (reported.count(node)) continue;
        auto down = reach(adj, node);
        if (!down.count(node)) continue;
        reported.insert(node);
        for (const auto& m : down) {
            if (reach(adj, m).count(node)) reported.insert(m);
        }
        out.push_back({0, std::string(diag::cycle), node, what + " cycle through '" + node + "'"});
    }
}

}  // namespace detail

// Full integrity sweep: dangling references, cycles in parts / atomic copy
// edges / sub-act containment, and composite-act structure. Returns every
// finding; an empty result means the graph is well-formed.
inline std::vector<Diagnostic> validate(const Graph& g) {
    std::vector<Diagnostic> out;
    auto dangling = [&out](const EntityId& subject, const std::string& message) {
        out.push_back({0, std::string(diag::dangling_ref), subject, message});
    };

    for (const auto& [id, c] : g.carriers()) {
        for (const auto& r : c.carries) {
            if (!g.contents().count(r))
                dangling(id, "carrier '" + id + "' carries unknown content '" + r + "'");
        }
        for (const auto& r : c.parts) {
            if (!g.carriers().count(r))
                dangling(id, "carrier '" + id + "' has unknown part '" + r + "'");
        }
    }

    for (const auto& [id, a] : g.acts()) {
        if (!g.agents().count(a.agent) && !g.carriers().count(a.agent))
            dangling(id, "act '" + id + "' has undeclared agent '" + a.agent + "'");
        if (a.reference && !g.carriers().count(*a.reference))
            dangling(id, "act '" + id + "' references unknown carrier '" + *a.reference + "'");
        if (a.kind == ActKind::encoding_icse) {
            if (!g.icses().count(a.output))
                dangling(id, "act '" + id + "' outputs unknown icse '" + a.output + "'");
        } else if (!g.carriers().count(a.output)) {
            dangling(id, "act '" + id + "' outputs unknown carrier '" + a.output + "'");
        }
        if (a.prescribed_by && !g.icses().count(*a.prescribed_by))
            dangling(id, "act '" + id + "' prescribed by unknown icse '" + *a.prescribed_by + "'");
        for (const auto& s : a.sub_acts) {
            if (!g.acts().count(s))
                dangling(id, "act '" + id + "' contains unknown sub-act '" + s + "'");
        }
    }

    for (const auto& [id, d] : g.defeaters()) {
        if (!g.acts().count(d.target) && !g.carriers().count(d.target))
            dangling(id, "defeater '" + id + "' targets unknown entity '" + d.target + "'");
    }

    std::map<EntityId, std::set<EntityId>> parts_adj;
    for (const auto& [id, c] : g.carriers()) {
        for (const auto& r : c.parts) {
            if (g.carriers().count(r)) parts_adj[id].insert(r);
        }
    }
    detail::report_cycles(parts_adj, "parts", out);

    std::map<EntityId, std::set<EntityId>> atomic_adj;
    for (const auto& [id, a] : g.acts()) {
        if (a.kind == ActKind::copying && a.atomic() && a.reference &&
            g.carriers().count(*a.reference) && g.carriers().count(a.output)) {
            atomic_adj[*a.reference].insert(a.output);
        }
    }
    detail::report_cycles(atomic_adj, "copy", out);

    std::map<EntityId, std::set<EntityId>> containment;
    std::map<EntityId, EntityId> container_of;
    for (const auto& [id, a] : g.acts()) {
        for (const auto& s : a.sub_acts) {
            if (!g.acts().count(s)) continue;
            containment[id].insert(s);
            auto [it, fresh] = container_of.emplace(s, id);
            if (!fresh && it->second != id) {
                out.push_back({0, std::string(diag::composite_span), s,
                               "act '" + s + "' is a sub-act of both '" + it->second + "' and '" +
                                   id + "'"});
            }
        }
    }
    detail::report_cycles(containment, "sub-act", out);

    // A composite copy spans an atomic-edge path from its reference down to
    // its output.
    for (const auto& [id, a] : g.acts()) {
        if (a.kind != ActKind::copying || a.atomic() || !a.reference) continue;
        if (!g.carriers().count(*a.reference) || !g.carriers().count(a.output)) continue;
        if (!detail::reach(atomic_adj, *a.reference).count(a.output)) {
            out.push_back({0, std::string(diag::composite_span), id,
                           "composite act '" + id + "' reference '" + *a.reference +
                               "' is not an ancestor of output '" + a.output + "'"});
        }
    }

    std::sort(out.begin(), out.end());
    return out;
}

// Every carrier whose carries-set includes the content.
inline std::set<EntityId> carriers_of(const Graph& g, const EntityId& content) {
    if (!g.contents().count(content)) {
        throw Error(Errc::unknown_id, "content '" + content + "' is not declared");
    }
    std::set<EntityId> out;
    for (const auto& [id, c] : g.carriers()) {
        if (c.carries.count(content)) out.insert(id);
    }
    return out;
}

}  // namespace tacio
