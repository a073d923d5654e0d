#pragma once
// Triple view of a graph and a deterministic Turtle subset around it.
// The subset covers @prefix/PREFIX lines, subject blocks with ';' and ','
// lists, 'a' for rdf:type, angle-bracket IRIs, prefixed names, and
// double-quoted literals. Exports are byte-stable for equal graphs.

#include "tacio/canonicity.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace tacio {

struct Term {
    enum class Kind { iri, literal };
    Kind kind = Kind::iri;
    std::string value;  // full IRI, or the literal's text

    auto operator<=>(const Term&) const = default;
};

inline Term iri(std::string value) { return {Term::Kind::iri, std::move(value)}; }
inline Term literal(std::string value) { return {Term::Kind::literal, std::move(value)}; }

struct Triple {
    Term subject;
    Term predicate;
    Term object;

    auto operator<=>(const Triple&) const = default;
};

// The four prefixes every document and query starts from.
class PrefixTable {
public:
    static const PrefixTable& base() {
        static const PrefixTable table = [] {
            PrefixTable t;
            t.declare("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#");
            t.declare("cco", "http://www.ontologyrepository.com/CommonCoreOntologies/");
            t.declare("obo", "http://purl.obolibrary.org/obo/");
            t.declare("tacio",
                      "http://www.ontologyrepository.com/CommonCoreOntologies/Exp/"
                      "NewInformationOntology");
            return t;
        }();
        return table;
    }

    void declare(std::string prefix, std::string iri_base) {
        entries_[std::move(prefix)] = std::move(iri_base);
    }

    std::optional<std::string> expand(const std::string& prefix, const std::string& local) const {
        auto it = entries_.find(prefix);
        if (it == entries_.end()) return std::nullopt;
        return it->second + local;
    }

    // Longest declared base that leaves a well-formed local name.
    std::optional<std::string> compress(const std::string& full_iri) const {
        const std::string* best_prefix = nullptr;
        const std::string* best_base = nullptr;
        for (const auto& [prefix, base_iri] : entries_) {
            if (full_iri.size() <= base_iri.size()) continue;
            if (full_iri.compare(0, base_iri.size(), base_iri) != 0) continue;
            if (best_base && base_iri.size() <= best_base->size()) continue;
            best_prefix = &prefix;
            best_base = &base_iri;
        }
        if (!best_prefix) return std::nullopt;
        std::string local = full_iri.substr(best_base->size());
        if (!valid_local(local)) return std::nullopt;
        return *best_prefix + ":" + local;
    }

    const std::map<std::string, std::string>& entries() const { return entries_; }

    static bool valid_local(std::string_view local) {
        if (local.empty()) return false;
        if (!std::isalpha(static_cast<unsigned char>(local.front())) && local.front() != '_')
            return false;
        for (unsigned char c : local) {
            if (!std::isalnum(c) && c != '_' && c != '-') return false;
        }
        return true;
    }

private:
    std::map<std::string, std::string> entries_;
};

namespace vocab {

inline std::string rdf(const std::string& local) { return *PrefixTable::base().expand("rdf", local); }
inline std::string cco(const std::string& local) { return *PrefixTable::base().expand("cco", local); }
inline std::string obo(const std::string& local) { return *PrefixTable::base().expand("obo", local); }
inline std::string tacio(const std::string& local) {
    return *PrefixTable::base().expand("tacio", local);
}

inline const std::string kType = rdf("type");
inline const std::string kInformationBearer = tacio("InformationBearer");
inline const std::string kInformationContentEntity = cco("InformationContentEntity");
inline const std::string kIcse = tacio("InformationCarrierStructureEntity");
inline const std::string kActOfEncoding = tacio("ActOfEncoding");
inline const std::string kActOfCopying = tacio("ActOfCopying");
inline const std::string kActOfEncodingIcse =
    tacio("ActOfEncodingAnInformationCarrierStructureEntity");
inline const std::string kActOfDuplication = tacio("ActOfDuplication");
inline const std::string kActOfCarrierTransition = tacio("ActOfInformationCarrierTransition");
inline const std::string kActOfConcretizerTransition = tacio("ActOfConcretizerTransition");
inline const std::string kActOfCarrierAndConcretizerTransition =
    tacio("ActOfCarrierAndConcretizerTransition");
// Spelling used by published queries; accepted on input, never emitted.
inline const std::string kActOfCarrierAndConcretizerTransitionAlias =
    tacio("ActofCarrierandConcretizerTransition");
inline const std::string kHasInput = cco("has_input");
inline const std::string kHasOutput = cco("has_output");
inline const std::string kAgentIn = cco("agent_in");
inline const std::string kHasProcessPart = cco("has_process_part");
inline const std::string kPrescribedBy = cco("prescribed_by");
inline const std::string kDescribes = cco("describes");
inline const std::string kIsCarrierOf = obo("RO_0010002");
inline const std::string kHasPart = obo("BFO_0000051");
inline const std::string kHasDescendantCopy = tacio("has_information_descendant_copy");
inline const std::string kHasCanonicalMember = tacio("has_canonical_member");
inline const std::string kHasDefeater = tacio("hasDefeater");
inline const std::string kDefeaterKind = tacio("defeater_kind");
inline const std::string kDefeaterStatement = tacio("defeater_statement");
inline const std::string kPrescription = tacio("prescription");

inline std::string class_iri(CopyClass c) {
    switch (c) {
        case CopyClass::duplication: return kActOfDuplication;
        case CopyClass::carrier_transition: return kActOfCarrierTransition;
        case CopyClass::concretizer_transition: return kActOfConcretizerTransition;
        case CopyClass::carrier_and_concretizer_transition:
            return kActOfCarrierAndConcretizerTransition;
    }
    return kActOfDuplication;
}

// Folds accepted alias spellings onto the canonical IRI.
inline const std::string& normalize(const std::string& full_iri) {
    if (full_iri == kActOfCarrierAndConcretizerTransitionAlias)
        return kActOfCarrierAndConcretizerTransition;
    return full_iri;
}

}  // namespace vocab

// Instance IRIs live outside every declared prefix on purpose: they render
// in angle brackets and cannot collide with vocabulary terms.
inline std::string instance_iri(const EntityId& id) { return "urn:tacio:" + id; }

inline Term instance(const EntityId& id) { return iri(instance_iri(id)); }

// Deterministic triple view. Lineage edges are emitted as the transitive
// reduction of the descendant relation; canonical membership is emitted per
// aggregate root under the given options.
inline std::vector<Triple> to_triples(const Graph& g, const CanonicityOptions& opts = {}) {
    if (!validate(g).empty()) {
        throw Error(Errc::invalid_graph, "graph has validation findings; fix before export");
    }
    std::vector<Triple> out;
    auto add = [&out](Term s, const std::string& p, Term o) {
        out.push_back({std::move(s), iri(p), std::move(o)});
    };

    for (const auto& [id, c] : g.contents()) {
        add(instance(id), vocab::kType, iri(vocab::kInformationContentEntity));
        for (const auto& topic : c.about) {
            add(instance(id), vocab::kDescribes, instance(topic));
        }
    }

    for (const auto& [id, c] : g.carriers()) {
        add(instance(id), vocab::kType, iri(vocab::kInformationBearer));
        add(instance(id), vocab::kType, iri(vocab::cco(c.carrier_type)));
        for (const auto& content : c.carries) {
            add(instance(id), vocab::kIsCarrierOf, instance(content));
        }
        for (const auto& part : c.parts) {
            add(instance(id), vocab::kHasPart, instance(part));
        }
    }

    for (const auto& [id, i] : g.icses()) {
        add(instance(id), vocab::kType, iri(vocab::kIcse));
        if (!i.payload.empty()) add(instance(id), vocab::kPrescription, literal(i.payload));
    }

    for (const auto& [id, a] : g.acts()) {
        switch (a.kind) {
            case ActKind::encoding:
                add(instance(id), vocab::kType, iri(vocab::kActOfEncoding));
                break;
            case ActKind::encoding_icse:
                add(instance(id), vocab::kType, iri(vocab::kActOfEncodingIcse));
                break;
            case ActKind::copying:
                add(instance(id), vocab::kType, iri(vocab::kActOfCopying));
                add(instance(id), vocab::kType, iri(vocab::class_iri(classify_copy_act(g, id))));
                break;
        }
        if (a.reference) add(instance(id), vocab::kHasInput, instance(*a.reference));
        add(instance(id), vocab::kHasOutput, instance(a.output));
        add(instance(a.agent), vocab::kAgentIn, instance(id));
        for (const auto& sub : a.sub_acts) {
            add(instance(id), vocab::kHasProcessPart, instance(sub));
        }
        if (a.prescribed_by) add(instance(id), vocab::kPrescribedBy, instance(*a.prescribed_by));
    }

    for (const auto& [id, d] : g.defeaters()) {
        add(instance(d.target), vocab::kHasDefeater, instance(id));
        add(instance(id), vocab::kDefeaterKind, literal(to_string(d.kind)));
        if (!d.statement.empty())
            add(instance(id), vocab::kDefeaterStatement, literal(d.statement));
    }

    // Transitive reduction of the descendant relation: keep an edge only
    // when no longer route covers it.
    {
        std::map<EntityId, std::set<EntityId>> adj;
        for (const auto& [from, to] : descendant_edges(g)) adj[from].insert(to);
        for (const auto& [from, tos] : adj) {
            for (const auto& to : tos) {
                bool redundant = false;
                for (const auto& mid : tos) {
                    if (mid == to) continue;
                    if (detail::reach(adj, mid).count(to)) {
                        redundant = true;
                        break;
                    }
                }
                if (!redundant) add(instance(from), vocab::kHasDescendantCopy, instance(to));
            }
        }
    }

    for (const auto& agg : all_aggregates(g)) {
        for (const auto& member : canonical_members(g, agg.root, opts)) {
            add(instance(agg.root), vocab::kHasCanonicalMember, instance(member));
        }
    }

    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace detail {

inline std::string escape_literal(std::string_view text) {
    std::string out;
    out.reserve(text.size() + 2);
    for (char c : text) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\r': out += "\\r"; break;
            case '\t': out += "\\t"; break;
            default: out += c;
        }
    }
    return out;
}

inline std::string render_term(const Term& t, const PrefixTable& prefixes) {
    if (t.kind == Term::Kind::literal) return "\"" + escape_literal(t.value) + "\"";
    if (auto name = prefixes.compress(t.value)) return *name;
    return "<" + t.value + ">";
}

inline std::string render_predicate(const Term& t, const PrefixTable& prefixes) {
    if (t.kind == Term::Kind::iri && t.value == vocab::kType) return "a";
    return render_term(t, prefixes);
}

}  // namespace detail

// Serializes triples grouped by subject, rdf:type first within a subject.
inline std::string triples_to_turtle(std::vector<Triple> triples) {
    const PrefixTable& prefixes = PrefixTable::base();
    std::ostringstream out;
    for (const auto& [prefix, base_iri] : prefixes.entries()) {
        out << "@prefix " << prefix << ": <" << base_iri << "> .\n";
    }

    auto sort_key = [](const Triple& t) {
        const int predicate_rank = t.predicate.value == vocab::kType ? 0 : 1;
        return std::tuple(t.subject, predicate_rank, t.predicate, t.object);
    };
    std::sort(triples.begin(), triples.end(),
              [&](const Triple& a, const Triple& b) { return sort_key(a) < sort_key(b); });
    triples.erase(std::unique(triples.begin(), triples.end()), triples.end());

    std::size_t i = 0;
    while (i < triples.size()) {
        const Term& subject = triples[i].subject;
        out << "\n" << detail::render_term(subject, prefixes);
        bool first_predicate = true;
        while (i < triples.size() && triples[i].subject == subject) {
            const Term& predicate = triples[i].predicate;
            out << (first_predicate ? " " : " ;\n    ")
                << detail::render_predicate(predicate, prefixes) << " ";
            first_predicate = false;
            bool first_object = true;
            while (i < triples.size() && triples[i].subject == subject &&
                   triples[i].predicate == predicate) {
                if (!first_object) out << ", ";
                out << detail::render_term(triples[i].object, prefixes);
                first_object = false;
                ++i;
            }
        }
        out << " .\n";
    }
    return out.str();
}

inline std::string export_turtle(const Graph& g, const CanonicityOptions& opts = {}) {
    return triples_to_turtle(to_triples(g, opts));
}

// ---------------------------------------------------------------------------
// Lexer shared by the Turtle reader and the query parser.

struct LexToken {
    enum class Kind {
        iri_ref,     // <...>, text holds the IRI
        pname,       // prefix:local, text holds both, colon included
        literal,     // "...", text holds the unescaped value
        variable,    // ?name, text holds the name
        keyword_a,   // bare 'a'
        ident,       // bare word (SELECT, WHERE, PREFIX, @prefix, ...)
        dot,
        semicolon,
        comma,
        lbrace,
        rbrace,
        star,
        bad,         // malformed input, text holds the message
        end,
    };
    Kind kind = Kind::end;
    std::string text;
    std::size_t line = 1;
    std::size_t column = 1;
};

class Lexer {
public:
    explicit Lexer(std::string_view input) : input_(input) {}

    LexToken next() {
        skip_space_and_comments();
        LexToken tok;
        tok.line = line_;
        tok.column = column_;
        if (pos_ >= input_.size()) {
            tok.kind = LexToken::Kind::end;
            return tok;
        }
        const char c = input_[pos_];
        switch (c) {
            case '.': advance(); tok.kind = LexToken::Kind::dot; return tok;
            case ';': advance(); tok.kind = LexToken::Kind::semicolon; return tok;
            case ',': advance(); tok.kind = LexToken::Kind::comma; return tok;
            case '{': advance(); tok.kind = LexToken::Kind::lbrace; return tok;
            case '}': advance(); tok.kind = LexToken::Kind::rbrace; return tok;
            case '*': advance(); tok.kind = LexToken::Kind::star; return tok;
            case '<': return lex_iri(tok);
            case '"': return lex_literal(tok);
            case '?': return lex_variable(tok);
            default: break;
        }
        if (c == '@' || std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return lex_word(tok);
        }
        fail(tok, "unexpected character '" + std::string(1, c) + "'");
        return tok;
    }

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    void advance() {
        if (pos_ < input_.size()) {
            if (input_[pos_] == '\n') {
                ++line_;
                column_ = 1;
            } else {
                ++column_;
            }
            ++pos_;
        }
    }

    void skip_space_and_comments() {
        while (pos_ < input_.size()) {
            const char c = input_[pos_];
            if (c == '#') {
                while (pos_ < input_.size() && input_[pos_] != '\n') advance();
            } else if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v') {
                advance();
            } else {
                break;
            }
        }
    }

    void fail(LexToken& tok, const std::string& message) {
        tok.kind = LexToken::Kind::bad;
        tok.text = message;
        advance();
    }

    LexToken lex_iri(LexToken tok) {
        advance();  // '<'
        std::string value;
        while (pos_ < input_.size() && input_[pos_] != '>' && input_[pos_] != '\n') {
            value += input_[pos_];
            advance();
        }
        if (pos_ >= input_.size() || input_[pos_] != '>') {
            fail(tok, "unterminated IRI");
            return tok;
        }
        advance();  // '>'
        tok.kind = LexToken::Kind::iri_ref;
        tok.text = std::move(value);
        return tok;
    }

    LexToken lex_literal(LexToken tok) {
        advance();  // opening quote
        std::string value;
        while (pos_ < input_.size() && input_[pos_] != '"') {
            char c = input_[pos_];
            if (c == '\n') break;
            if (c == '\\') {
                advance();
                if (pos_ >= input_.size()) break;
                switch (input_[pos_]) {
                    case '"': value += '"'; break;
                    case '\\': value += '\\'; break;
                    case 'n': value += '\n'; break;
                    case 'r': value += '\r'; break;
                    case 't': value += '\t'; break;
                    default:
                        fail(tok, std::string("unknown escape '\\") + input_[pos_] + "'");
                        return tok;
                }
                advance();
            } else {
                value += c;
                advance();
            }
        }
        if (pos_ >= input_.size() || input_[pos_] != '"') {
            fail(tok, "unterminated literal");
            return tok;
        }
        advance();  // closing quote
        tok.kind = LexToken::Kind::literal;
        tok.text = std::move(value);
        return tok;
    }

    LexToken lex_variable(LexToken tok) {
        advance();  // '?'
        std::string name;
        while (pos_ < input_.size() && (std::isalnum(static_cast<unsigned char>(input_[pos_])) ||
                                        input_[pos_] == '_')) {
            name += input_[pos_];
            advance();
        }
        if (name.empty()) {
            fail(tok, "'?' must be followed by a variable name");
            return tok;
        }
        tok.kind = LexToken::Kind::variable;
        tok.text = std::move(name);
        return tok;
    }

    static bool word_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
    }

    LexToken lex_word(LexToken tok) {
        std::string word;
        if (input_[pos_] == '@') {
            word += '@';
            advance();
        }
        while (pos_ < input_.size() && word_char(input_[pos_])) {
            word += input_[pos_];
            advance();
        }
        if (pos_ < input_.size() && input_[pos_] == ':') {
            advance();  // ':'
            std::string local;
            while (pos_ < input_.size() && word_char(input_[pos_])) {
                local += input_[pos_];
                advance();
            }
            tok.kind = LexToken::Kind::pname;
            tok.text = word + ":" + local;
            return tok;
        }
        if (word == "a") {
            tok.kind = LexToken::Kind::keyword_a;
            return tok;
        }
        tok.kind = LexToken::Kind::ident;
        tok.text = std::move(word);
        return tok;
    }

    std::string_view input_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t column_ = 1;
};

struct ImportResult {
    std::vector<Triple> triples;
    std::vector<Diagnostic> diagnostics;
};

namespace detail {

inline std::pair<std::string, std::string> split_pname(const std::string& text) {
    auto colon = text.find(':');
    return {text.substr(0, colon), text.substr(colon + 1)};
}

}  // namespace detail

// Reads the Turtle subset back into triples. Unknown constructs and
// unresolvable names yield diagnostics and are skipped, never failures.
inline ImportResult import_turtle(std::string_view text) {
    ImportResult result;
    PrefixTable prefixes;  // documents declare their own prefixes
    Lexer lexer(text);

    auto diagnose = [&result](std::size_t line, std::string_view code, const std::string& msg) {
        result.diagnostics.push_back({line, std::string(code), "", msg});
    };

    LexToken tok = lexer.next();
    auto take = [&]() { tok = lexer.next(); };

    auto skip_statement = [&]() {
        while (tok.kind != LexToken::Kind::dot && tok.kind != LexToken::Kind::end) take();
        if (tok.kind == LexToken::Kind::dot) take();
    };

    // Resolves a token to a term; nullopt means a diagnostic was recorded.
    auto term_of = [&](bool object_position) -> std::optional<Term> {
        if (tok.kind == LexToken::Kind::bad) {
            diagnose(tok.line, diag::syntax, tok.text);
            take();
            return std::nullopt;
        }
        if (tok.kind == LexToken::Kind::iri_ref) {
            Term t = iri(vocab::normalize(tok.text));
            take();
            return t;
        }
        if (tok.kind == LexToken::Kind::pname) {
            auto [prefix, local] = detail::split_pname(tok.text);
            auto expanded = prefixes.expand(prefix, local);
            if (!expanded) {
                diagnose(tok.line, diag::undeclared_prefix,
                         "prefix '" + prefix + ":' is not declared");
                take();
                return std::nullopt;
            }
            if (local.empty()) {
                diagnose(tok.line, diag::syntax, "prefixed name '" + tok.text + "' has no local part");
                take();
                return std::nullopt;
            }
            Term t = iri(vocab::normalize(*expanded));
            take();
            return t;
        }
        if (object_position && tok.kind == LexToken::Kind::literal) {
            Term t = literal(tok.text);
            take();
            return t;
        }
        diagnose(tok.line, diag::syntax, "expected an IRI, prefixed name"
                                         + std::string(object_position ? ", or literal" : ""));
        take();
        return std::nullopt;
    };

    while (tok.kind != LexToken::Kind::end) {
        if (tok.kind == LexToken::Kind::bad) {
            diagnose(tok.line, diag::syntax, tok.text);
            take();
            continue;
        }
        // Prefix declarations in either spelling.
        if (tok.kind == LexToken::Kind::ident &&
            (tok.text == "@prefix" || tok.text == "PREFIX" || tok.text == "prefix")) {
            const bool directive = tok.text == "@prefix";
            take();
            if (tok.kind != LexToken::Kind::pname) {
                diagnose(tok.line, diag::syntax, "expected 'prefix:' after prefix keyword");
                skip_statement();
                continue;
            }
            auto [prefix, local] = detail::split_pname(tok.text);
            if (!local.empty()) {
                diagnose(tok.line, diag::syntax, "prefix declaration must end with ':'");
                skip_statement();
                continue;
            }
            take();
            if (tok.kind != LexToken::Kind::iri_ref) {
                diagnose(tok.line, diag::syntax, "expected <iri> in prefix declaration");
                skip_statement();
                continue;
            }
            prefixes.declare(prefix, tok.text);
            take();
            if (directive) {
                if (tok.kind == LexToken::Kind::dot) {
                    take();
                } else {
                    diagnose(tok.line, diag::syntax, "@prefix declaration must end with '.'");
                }
            }
            continue;
        }

        auto subject = term_of(false);
        if (!subject) {
            skip_statement();
            continue;
        }

        bool statement_ok = true;
        while (true) {
            std::optional<Term> predicate;
            if (tok.kind == LexToken::Kind::keyword_a) {
                predicate = iri(vocab::kType);
                take();
            } else {
                predicate = term_of(false);
            }
            if (!predicate) {
                statement_ok = false;
                break;
            }
            while (true) {
                auto object = term_of(true);
                if (object) {
                    result.triples.push_back({*subject, *predicate, *object});
                }
                if (tok.kind == LexToken::Kind::comma) {
                    take();
                    continue;
                }
                break;
            }
            if (tok.kind == LexToken::Kind::semicolon) {
                take();
                continue;
            }
            break;
        }
        if (!statement_ok) {
            skip_statement();
            continue;
        }
        if (tok.kind == LexToken::Kind::dot) {
            take();
        } else {
            diagnose(tok.line, diag::syntax, "statement must end with '.'");
            skip_statement();
        }
    }

    return result;
}

}  // namespace tacio
