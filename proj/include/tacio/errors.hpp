#pragma once

#include <cctype>
#include <compare>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tacio {

// Failure categories raised by graph construction and read operations.
enum class Errc {
    duplicate_id,
    missing_reference,
    second_producer,
    dangling_target,
    invalid_field,
    unknown_id,
    not_a_copy_act,
    not_a_member,
    not_a_root,
    invalid_graph,
    unknown_competency_id,
    unknown_prefix,
};

inline const char* to_string(Errc code) {
    switch (code) {
        case Errc::duplicate_id: return "DuplicateId";
        case Errc::missing_reference: return "MissingReference";
        case Errc::second_producer: return "SecondProducer";
        case Errc::dangling_target: return "DanglingTarget";
        case Errc::invalid_field: return "InvalidField";
        case Errc::unknown_id: return "UnknownId";
        case Errc::not_a_copy_act: return "NotACopyAct";
        case Errc::not_a_member: return "NotAMember";
        case Errc::not_a_root: return "NotARoot";
        case Errc::invalid_graph: return "InvalidGraph";
        case Errc::unknown_competency_id: return "UnknownCompetencyId";
        case Errc::unknown_prefix: return "UnknownPrefix";
    }
    return "?";
}

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& message)
        : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

    Errc code() const { return code_; }

private:
    Errc code_;
};

// One reported problem. `line` is 0 for graph-level findings; ingest
// rewrites it to the declaring source line where one exists. `subject`
// names the offending record.
struct Diagnostic {
    std::size_t line = 0;
    std::string code;
    std::string subject;
    std::string message;

    auto operator<=>(const Diagnostic&) const = default;
};

namespace diag {
inline constexpr std::string_view syntax = "SYNTAX";
inline constexpr std::string_view unknown_kind = "UNKNOWN_KIND";
inline constexpr std::string_view missing_field = "MISSING_FIELD";
inline constexpr std::string_view dangling_ref = "DANGLING_REF";
inline constexpr std::string_view duplicate_id = "DUPLICATE_ID";
inline constexpr std::string_view second_producer = "SECOND_PRODUCER";
inline constexpr std::string_view cycle = "CYCLE";
inline constexpr std::string_view composite_span = "COMPOSITE_SPAN";
inline constexpr std::string_view undeclared_prefix = "UNDECLARED_PREFIX";
}  // namespace diag

// Id and type tokens: non-empty, no whitespace, no quote. Angle brackets
// are excluded as well because ids and type tokens become IRI material.
inline bool is_token(std::string_view s) {
    if (s.empty()) return false;
    for (unsigned char c : s) {
        if (c == '"' || c == '<' || c == '>') return false;
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') return false;
    }
    return true;
}

// Digest identity proxy, `algo:hex` (e.g. sha256:9e41ab).
inline bool is_digest(std::string_view s) {
    auto colon = s.find(':');
    if (colon == std::string_view::npos || colon == 0 || colon + 1 == s.size()) return false;
    for (char c : s.substr(0, colon)) {
        if (!std::isalnum(static_cast<unsigned char>(c))) return false;
    }
    for (char c : s.substr(colon + 1)) {
        if (!std::isxdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

}  // namespace tacio
