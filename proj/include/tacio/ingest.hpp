#pragma once
// Event-log ingestion: one JSON object per line, '#' comments and blank
// lines skipped. Loading is two-pass -- records first, defeaters and
// integrity checks after -- so forward references are legal. All failures
// surface as diagnostics; nothing throws on malformed input.

#include "tacio/model.hpp"

#include <json.hpp>

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tacio {

enum class EventKind { content, carrier, act, icse, defeater, agent };

struct Event {
    EventKind kind = EventKind::content;
    std::size_t line = 0;
    // Exactly one payload is meaningful for the kind.
    ContentItem content;
    Carrier carrier;
    EncodingAct act;
    Icse icse;
    Defeater defeater;
    EntityId agent;
};

// A blank or comment line: not an event, not an error.
struct Skip {};

using ParsedLine = std::variant<Event, Skip, Diagnostic>;

struct LoadOptions {
    // At >= 2, unknown fields are reported as notes.
    int verbosity = 0;
};

struct LoadResult {
    Graph graph;
    std::vector<Diagnostic> diagnostics;
    std::vector<std::string> notes;

    bool ok() const { return diagnostics.empty(); }
};

namespace detail {

using json = nlohmann::json;

inline Diagnostic line_diag(std::size_t line, std::string_view code, const std::string& subject,
                            const std::string& message) {
    return {line, std::string(code), subject, message};
}

struct FieldReader {
    const json& obj;
    std::size_t line;
    std::string id;  // best-effort, for diagnostics
    std::optional<Diagnostic> failure;
    std::vector<std::string> consumed;

    void fail(std::string_view code, const std::string& message) {
        if (!failure) failure = line_diag(line, code, id, message);
    }

    std::string required_string(const std::string& key) {
        consumed.push_back(key);
        if (!obj.contains(key)) {
            fail(diag::missing_field, "missing field '" + key + "'");
            return {};
        }
        if (!obj.at(key).is_string()) {
            fail(diag::syntax, "field '" + key + "' must be a string");
            return {};
        }
        auto value = obj.at(key).get<std::string>();
        if (value.empty()) fail(diag::missing_field, "field '" + key + "' is empty");
        return value;
    }

    std::optional<std::string> optional_string(const std::string& key) {
        consumed.push_back(key);
        if (!obj.contains(key)) return std::nullopt;
        if (!obj.at(key).is_string()) {
            fail(diag::syntax, "field '" + key + "' must be a string");
            return std::nullopt;
        }
        return obj.at(key).get<std::string>();
    }

    std::vector<std::string> string_list(const std::string& key) {
        consumed.push_back(key);
        std::vector<std::string> out;
        if (!obj.contains(key)) return out;
        if (!obj.at(key).is_array()) {
            fail(diag::syntax, "field '" + key + "' must be an array of strings");
            return out;
        }
        for (const auto& item : obj.at(key)) {
            if (!item.is_string()) {
                fail(diag::syntax, "field '" + key + "' must be an array of strings");
                return out;
            }
            out.push_back(item.get<std::string>());
        }
        return out;
    }

    bool flag(const std::string& key) {
        consumed.push_back(key);
        if (!obj.contains(key)) return false;
        if (!obj.at(key).is_boolean()) {
            fail(diag::syntax, "field '" + key + "' must be a boolean");
            return false;
        }
        return obj.at(key).get<bool>();
    }

    // Anything not consumed rides along verbatim for forward compatibility.
    ExtraFields leftovers(std::vector<std::string>* unknown_names) const {
        ExtraFields extra;
        for (auto it = obj.begin(); it != obj.end(); ++it) {
            if (it.key() == "kind") continue;
            if (std::find(consumed.begin(), consumed.end(), it.key()) != consumed.end()) continue;
            extra[it.key()] = it.value().dump();
            if (unknown_names) unknown_names->push_back(it.key());
        }
        return extra;
    }
};

}  // namespace detail

// Parses one line into an Event, a Skip, or a Diagnostic. `unknown_fields`,
// when given, collects names of fields the schema does not define.
inline ParsedLine parse_event(std::string_view line_text, std::size_t line_no,
                              std::vector<std::string>* unknown_fields = nullptr) {
    using detail::json;
    std::string_view trimmed = line_text;
    while (!trimmed.empty() && (trimmed.front() == ' ' || trimmed.front() == '\t' ||
                                trimmed.front() == '\r'))
        trimmed.remove_prefix(1);
    if (trimmed.empty() || trimmed.front() == '#') return Skip{};

    json obj = json::parse(trimmed, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
        return detail::line_diag(line_no, diag::syntax, "", "line is not a JSON object");
    }
    if (!obj.contains("kind") || !obj.at("kind").is_string()) {
        return detail::line_diag(line_no, diag::missing_field, "", "missing field 'kind'");
    }
    const std::string kind = obj.at("kind").get<std::string>();

    Event ev;
    ev.line = line_no;
    detail::FieldReader r{obj, line_no, {}, std::nullopt, {}};
    r.id = obj.contains("id") && obj.at("id").is_string() ? obj.at("id").get<std::string>() : "";

    if (kind == "content") {
        ev.kind = EventKind::content;
        ev.content.id = r.required_string("id");
        ev.content.digest = r.optional_string("digest");
        for (auto& t : r.string_list("about")) ev.content.about.insert(std::move(t));
        ev.content.extra = r.leftovers(unknown_fields);
    } else if (kind == "carrier") {
        ev.kind = EventKind::carrier;
        ev.carrier.id = r.required_string("id");
        ev.carrier.carrier_type = r.required_string("carrier_type");
        ev.carrier.concretizer_type = r.required_string("concretizer_type");
        for (auto& t : r.string_list("carries")) ev.carrier.carries.insert(std::move(t));
        for (auto& t : r.string_list("parts")) ev.carrier.parts.insert(std::move(t));
        ev.carrier.extra = r.leftovers(unknown_fields);
    } else if (kind == "act") {
        ev.kind = EventKind::act;
        ev.act.id = r.required_string("id");
        const std::string act_kind = r.required_string("act_kind");
        if (act_kind == "encoding") {
            ev.act.kind = ActKind::encoding;
        } else if (act_kind == "copying") {
            ev.act.kind = ActKind::copying;
        } else if (act_kind == "encoding_icse") {
            ev.act.kind = ActKind::encoding_icse;
        } else if (!act_kind.empty()) {
            r.fail(diag::syntax,
                   "act_kind '" + act_kind + "' is not encoding|copying|encoding_icse");
        }
        ev.act.agent = r.required_string("agent");
        ev.act.output = r.required_string("output");
        ev.act.reference = r.optional_string("reference");
        if (ev.act.kind == ActKind::copying && !ev.act.reference) {
            r.fail(diag::missing_field, "copying act requires field 'reference'");
        }
        ev.act.ppf = r.flag("ppf");
        for (auto& s : r.string_list("sub_acts")) ev.act.sub_acts.push_back(std::move(s));
        ev.act.prescribed_by = r.optional_string("prescribed_by");
        ev.act.at = r.optional_string("at");
        ev.act.extra = r.leftovers(unknown_fields);
    } else if (kind == "icse") {
        ev.kind = EventKind::icse;
        ev.icse.id = r.required_string("id");
        ev.icse.expected_carrier_type = r.required_string("expected_carrier_type");
        ev.icse.expected_concretizer_type = r.required_string("expected_concretizer_type");
        ev.icse.payload = r.optional_string("payload").value_or("");
        ev.icse.extra = r.leftovers(unknown_fields);
    } else if (kind == "defeater") {
        ev.kind = EventKind::defeater;
        ev.defeater.id = r.required_string("id");
        ev.defeater.target = r.required_string("target");
        const std::string dk = r.required_string("defeater_kind");
        if (dk == "rebutting") {
            ev.defeater.kind = DefeaterKind::rebutting;
        } else if (dk == "undercutting") {
            ev.defeater.kind = DefeaterKind::undercutting;
        } else if (!dk.empty()) {
            r.fail(diag::syntax, "defeater_kind '" + dk + "' is not rebutting|undercutting");
        }
        ev.defeater.statement = r.optional_string("statement").value_or("");
        ev.defeater.extra = r.leftovers(unknown_fields);
    } else if (kind == "agent") {
        ev.kind = EventKind::agent;
        ev.agent = r.required_string("id");
        (void)r.leftovers(unknown_fields);
    } else {
        return detail::line_diag(line_no, diag::unknown_kind, r.id,
                                 "unknown event kind '" + kind + "'");
    }

    if (r.failure) return *r.failure;
    return ev;
}

namespace detail {

inline std::string_view errc_to_code(Errc code) {
    switch (code) {
        case Errc::duplicate_id: return diag::duplicate_id;
        case Errc::second_producer: return diag::second_producer;
        case Errc::missing_reference: return diag::missing_field;
        case Errc::dangling_target: return diag::dangling_ref;
        default: return diag::syntax;
    }
}

}  // namespace detail

// Builds a graph out of an event stream. The graph is returned even when
// diagnostics are present; callers decide whether partial loads count.
inline LoadResult load_log(std::istream& in, const LoadOptions& opts = {}) {
    LoadResult result;
    std::vector<Event> events;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::vector<std::string> unknown;
        ParsedLine parsed = parse_event(line, line_no, &unknown);
        if (opts.verbosity >= 2) {
            for (const auto& name : unknown) {
                result.notes.push_back("line " + std::to_string(line_no) + ": unknown field '" +
                                       name + "' preserved");
            }
        }
        if (auto* d = std::get_if<Diagnostic>(&parsed)) {
            result.diagnostics.push_back(*d);
        } else if (auto* ev = std::get_if<Event>(&parsed)) {
            events.push_back(std::move(*ev));
        }
    }

    std::map<EntityId, std::size_t> declared_at;
    auto apply = [&](const Event& ev, const EntityId& id, auto&& mutate) {
        try {
            mutate();
            if (!id.empty()) declared_at.emplace(id, ev.line);
        } catch (const Error& e) {
            result.diagnostics.push_back(detail::line_diag(
                ev.line, detail::errc_to_code(e.code()), id, e.what()));
        }
    };

    // Pass one: everything that does not need its references resolved yet.
    for (const auto& ev : events) {
        switch (ev.kind) {
            case EventKind::content:
                apply(ev, ev.content.id, [&] { result.graph.add_content(ev.content); });
                break;
            case EventKind::carrier:
                apply(ev, ev.carrier.id, [&] { result.graph.add_carrier(ev.carrier); });
                break;
            case EventKind::act:
                apply(ev, ev.act.id, [&] { result.graph.add_act(ev.act); });
                break;
            case EventKind::icse:
                apply(ev, ev.icse.id, [&] { result.graph.add_icse(ev.icse); });
                break;
            case EventKind::agent:
                apply(ev, ev.agent, [&] { result.graph.add_agent(ev.agent); });
                break;
            case EventKind::defeater:
                break;
        }
    }
    // Pass two: defeaters, whose targets must exist by now.
    for (const auto& ev : events) {
        if (ev.kind != EventKind::defeater) continue;
        apply(ev, ev.defeater.id, [&] { result.graph.add_defeater(ev.defeater); });
    }

    for (auto issue : validate(result.graph)) {
        if (auto it = declared_at.find(issue.subject); it != declared_at.end()) {
            issue.line = it->second;
        }
        result.diagnostics.push_back(std::move(issue));
    }

    std::sort(result.diagnostics.begin(), result.diagnostics.end());
    return result;
}

inline LoadResult load_log_text(std::string_view text, const LoadOptions& opts = {}) {
    std::istringstream in{std::string(text)};
    return load_log(in, opts);
}

namespace detail {

inline void splice_extras(nlohmann::ordered_json& obj, const ExtraFields& extra) {
    for (const auto& [key, raw] : extra) {
        auto value = json::parse(raw, nullptr, false);
        obj[key] = value.is_discarded() ? json(raw) : value;
    }
}

}  // namespace detail

// Canonical event lines: fixed kind order, ids sorted, fixed field order,
// defaults omitted. Reloading the output reproduces the graph exactly.
inline std::string serialize_log(const Graph& g) {
    using ordered = nlohmann::ordered_json;
    std::ostringstream out;
    auto emit = [&out](const ordered& obj) { out << obj.dump() << "\n"; };

    for (const auto& id : g.agents()) {
        emit(ordered{{"kind", "agent"}, {"id", id}});
    }
    for (const auto& [id, c] : g.contents()) {
        ordered obj{{"kind", "content"}, {"id", id}};
        if (c.digest) obj["digest"] = *c.digest;
        if (!c.about.empty()) obj["about"] = c.about;
        detail::splice_extras(obj, c.extra);
        emit(obj);
    }
    for (const auto& [id, i] : g.icses()) {
        ordered obj{{"kind", "icse"},
                    {"id", id},
                    {"expected_carrier_type", i.expected_carrier_type},
                    {"expected_concretizer_type", i.expected_concretizer_type}};
        if (!i.payload.empty()) obj["payload"] = i.payload;
        detail::splice_extras(obj, i.extra);
        emit(obj);
    }
    for (const auto& [id, c] : g.carriers()) {
        ordered obj{{"kind", "carrier"},
                    {"id", id},
                    {"carrier_type", c.carrier_type},
                    {"concretizer_type", c.concretizer_type}};
        if (!c.carries.empty()) obj["carries"] = c.carries;
        if (!c.parts.empty()) obj["parts"] = c.parts;
        detail::splice_extras(obj, c.extra);
        emit(obj);
    }
    for (const auto& [id, a] : g.acts()) {
        ordered obj{{"kind", "act"}, {"id", id}, {"act_kind", to_string(a.kind)},
                    {"agent", a.agent}};
        if (a.reference) obj["reference"] = *a.reference;
        obj["output"] = a.output;
        if (a.ppf) obj["ppf"] = true;
        if (!a.sub_acts.empty()) obj["sub_acts"] = a.sub_acts;
        if (a.prescribed_by) obj["prescribed_by"] = *a.prescribed_by;
        if (a.at) obj["at"] = *a.at;
        detail::splice_extras(obj, a.extra);
        emit(obj);
    }
    for (const auto& [id, d] : g.defeaters()) {
        ordered obj{{"kind", "defeater"},
                    {"id", id},
                    {"target", d.target},
                    {"defeater_kind", to_string(d.kind)}};
        if (!d.statement.empty()) obj["statement"] = d.statement;
        detail::splice_extras(obj, d.extra);
        emit(obj);
    }
    return out.str();
}

}  // namespace tacio
