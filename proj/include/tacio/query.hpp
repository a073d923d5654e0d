#pragma once
// Basic-graph-pattern queries over the triple view: PREFIX declarations,
// SELECT [DISTINCT] with explicit variables or *, and a WHERE block of
// triple patterns joined naturally. Nothing else -- no FILTER, no OPTIONAL.

#include "tacio/rdf.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace tacio {

struct PatternTerm {
    enum class Kind { variable, iri, pname, literal };
    Kind kind = Kind::variable;
    std::string value;  // variable name, full IRI, raw prefix:local, or literal text

    auto operator<=>(const PatternTerm&) const = default;
};

struct TriplePattern {
    PatternTerm subject;
    PatternTerm predicate;
    PatternTerm object;

    auto operator<=>(const TriplePattern&) const = default;
};

struct BgpQuery {
    std::map<std::string, std::string> prefixes;  // additions over the base table
    std::vector<std::string> projection;          // empty when star
    bool star = false;
    bool distinct = false;
    std::vector<TriplePattern> patterns;
};

struct BindingTable {
    std::vector<std::string> columns;
    std::vector<std::vector<Term>> rows;

    bool operator==(const BindingTable&) const = default;
};

// Query text rejection, with the position that stopped the parse.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& expected)
        : Error(Errc::invalid_field,
                "parse error at " + std::to_string(line) + ":" + std::to_string(column) +
                    ": expected " + expected),
          line_(line),
          column_(column),
          expected_(expected) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& expected() const { return expected_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string expected_;
};

namespace detail {

inline bool ident_is(const LexToken& tok, std::string_view keyword) {
    if (tok.kind != LexToken::Kind::ident) return false;
    if (tok.text.size() != keyword.size()) return false;
    for (std::size_t i = 0; i < keyword.size(); ++i) {
        if (std::toupper(static_cast<unsigned char>(tok.text[i])) != keyword[i]) return false;
    }
    return true;
}

}  // namespace detail

inline BgpQuery parse_query(std::string_view text) {
    Lexer lexer(text);
    LexToken tok = lexer.next();
    auto take = [&]() { tok = lexer.next(); };
    auto expect_fail = [&](const std::string& expected) -> ParseError {
        return ParseError(tok.line, tok.column, expected);
    };

    BgpQuery query;

    while (detail::ident_is(tok, "PREFIX")) {
        take();
        if (tok.kind != LexToken::Kind::pname) throw expect_fail("'prefix:' after PREFIX");
        auto [prefix, local] = detail::split_pname(tok.text);
        if (!local.empty()) throw expect_fail("prefix declaration ending in ':'");
        take();
        if (tok.kind != LexToken::Kind::iri_ref) throw expect_fail("<iri> in PREFIX declaration");
        query.prefixes[prefix] = tok.text;
        take();
    }

    if (!detail::ident_is(tok, "SELECT")) throw expect_fail("SELECT");
    take();
    if (detail::ident_is(tok, "DISTINCT")) {
        query.distinct = true;
        take();
    }
    if (tok.kind == LexToken::Kind::star) {
        query.star = true;
        take();
    } else {
        while (tok.kind == LexToken::Kind::variable) {
            query.projection.push_back(tok.text);
            take();
        }
        if (query.projection.empty()) throw expect_fail("'*' or at least one ?variable");
    }

    if (!detail::ident_is(tok, "WHERE")) throw expect_fail("WHERE");
    take();
    if (tok.kind != LexToken::Kind::lbrace) throw expect_fail("'{'");
    take();

    auto term = [&](bool object_position, bool predicate_position) -> PatternTerm {
        PatternTerm t;
        switch (tok.kind) {
            case LexToken::Kind::variable:
                t.kind = PatternTerm::Kind::variable;
                t.value = tok.text;
                break;
            case LexToken::Kind::iri_ref:
                t.kind = PatternTerm::Kind::iri;
                t.value = tok.text;
                break;
            case LexToken::Kind::pname:
                if (detail::split_pname(tok.text).second.empty()) {
                    throw expect_fail("a prefixed name with a local part");
                }
                t.kind = PatternTerm::Kind::pname;
                t.value = tok.text;
                break;
            case LexToken::Kind::keyword_a:
                if (!predicate_position) throw expect_fail("a term ('a' is only a predicate)");
                t.kind = PatternTerm::Kind::iri;
                t.value = vocab::kType;
                break;
            case LexToken::Kind::literal:
                if (!object_position) throw expect_fail("an IRI or variable");
                t.kind = PatternTerm::Kind::literal;
                t.value = tok.text;
                break;
            case LexToken::Kind::bad:
                throw ParseError(tok.line, tok.column, "valid token (" + tok.text + ")");
            default:
                throw expect_fail(object_position ? "a variable, IRI, or literal"
                                                  : "a variable or IRI");
        }
        take();
        return t;
    };

    while (tok.kind != LexToken::Kind::rbrace) {
        if (tok.kind == LexToken::Kind::end) throw expect_fail("'}'");
        PatternTerm subject = term(false, false);
        while (true) {
            PatternTerm predicate = term(false, true);
            while (true) {
                PatternTerm object = term(true, false);
                query.patterns.push_back({subject, predicate, object});
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
        if (tok.kind == LexToken::Kind::dot) {
            take();
        } else if (tok.kind != LexToken::Kind::rbrace) {
            throw expect_fail("'.', ';', ',' or '}'");
        }
    }
    take();  // '}'
    if (tok.kind != LexToken::Kind::end) throw expect_fail("end of query");

    if (query.patterns.empty()) throw ParseError(1, 1, "at least one triple pattern");

    std::set<std::string> pattern_vars;
    for (const auto& p : query.patterns) {
        for (const auto* t : {&p.subject, &p.predicate, &p.object}) {
            if (t->kind == PatternTerm::Kind::variable) pattern_vars.insert(t->value);
        }
    }
    for (const auto& var : query.projection) {
        if (!pattern_vars.count(var)) {
            throw ParseError(1, 1, "projected variable ?" + var + " to appear in a pattern");
        }
    }
    return query;
}

namespace detail {

struct ResolvedTerm {
    std::optional<std::string> variable;  // set for variables
    Term constant;                        // set otherwise
};

struct ResolvedPattern {
    ResolvedTerm subject, predicate, object;
};

inline ResolvedTerm resolve_term(const PatternTerm& t,
                                 const std::map<std::string, std::string>& additions) {
    switch (t.kind) {
        case PatternTerm::Kind::variable: return {t.value, {}};
        case PatternTerm::Kind::literal: return {std::nullopt, literal(t.value)};
        case PatternTerm::Kind::iri: return {std::nullopt, iri(vocab::normalize(t.value))};
        case PatternTerm::Kind::pname: break;
    }
    auto [prefix, local] = split_pname(t.value);
    if (auto it = additions.find(prefix); it != additions.end()) {
        return {std::nullopt, iri(vocab::normalize(it->second + local))};
    }
    if (auto expanded = PrefixTable::base().expand(prefix, local)) {
        return {std::nullopt, iri(vocab::normalize(*expanded))};
    }
    throw Error(Errc::unknown_prefix, "prefix '" + prefix + ":' is not declared");
}

// All variables of the query, sorted: the column set for SELECT *.
inline std::vector<std::string> star_columns(const std::vector<ResolvedPattern>& patterns) {
    std::set<std::string> vars;
    for (const auto& p : patterns) {
        for (const auto* t : {&p.subject, &p.predicate, &p.object}) {
            if (t->variable) vars.insert(*t->variable);
        }
    }
    return {vars.begin(), vars.end()};
}

}  // namespace detail

// Natural join of the per-pattern match relations. Patterns are greedily
// reordered (bound variables first, rare constants next); the result is
// order-independent, the reordering is speed only. Rows come back sorted.
inline BindingTable evaluate(const BgpQuery& q, const std::vector<Triple>& triples) {
    std::vector<detail::ResolvedPattern> patterns;
    patterns.reserve(q.patterns.size());
    for (const auto& p : q.patterns) {
        patterns.push_back({detail::resolve_term(p.subject, q.prefixes),
                            detail::resolve_term(p.predicate, q.prefixes),
                            detail::resolve_term(p.object, q.prefixes)});
    }

    auto constant_matches = [&triples](const detail::ResolvedPattern& p) {
        std::size_t n = 0;
        for (const auto& t : triples) {
            if (!p.subject.variable && !(p.subject.constant == t.subject)) continue;
            if (!p.predicate.variable && !(p.predicate.constant == t.predicate)) continue;
            if (!p.object.variable && !(p.object.constant == t.object)) continue;
            ++n;
        }
        return n;
    };
    std::vector<std::size_t> estimate;
    estimate.reserve(patterns.size());
    for (const auto& p : patterns) estimate.push_back(constant_matches(p));

    using Row = std::map<std::string, Term>;
    std::vector<Row> rows{Row{}};
    std::set<std::string> bound;
    std::vector<bool> used(patterns.size(), false);

    auto bound_vars_in = [&bound](const detail::ResolvedPattern& p) {
        std::size_t n = 0;
        for (const auto* t : {&p.subject, &p.predicate, &p.object}) {
            if (t->variable && bound.count(*t->variable)) ++n;
        }
        return n;
    };

    for (std::size_t step = 0; step < patterns.size(); ++step) {
        std::size_t pick = patterns.size();
        for (std::size_t i = 0; i < patterns.size(); ++i) {
            if (used[i]) continue;
            if (pick == patterns.size()) {
                pick = i;
                continue;
            }
            auto key = [&](std::size_t idx) {
                return std::pair(bound_vars_in(patterns[idx]), ~estimate[idx]);
            };
            if (key(i) > key(pick)) pick = i;
        }
        used[pick] = true;
        const auto& p = patterns[pick];

        std::vector<Row> next;
        for (const auto& row : rows) {
            auto match_side = [&row](const detail::ResolvedTerm& t, const Term& value,
                                     Row& extension) {
                if (!t.variable) return t.constant == value;
                if (auto it = row.find(*t.variable); it != row.end()) return it->second == value;
                if (auto it = extension.find(*t.variable); it != extension.end())
                    return it->second == value;
                extension.emplace(*t.variable, value);
                return true;
            };
            for (const auto& triple : triples) {
                Row extension;
                if (!match_side(p.subject, triple.subject, extension)) continue;
                if (!match_side(p.predicate, triple.predicate, extension)) continue;
                if (!match_side(p.object, triple.object, extension)) continue;
                Row merged = row;
                merged.insert(extension.begin(), extension.end());
                next.push_back(std::move(merged));
            }
        }
        rows = std::move(next);
        for (const auto* t : {&p.subject, &p.predicate, &p.object}) {
            if (t->variable) bound.insert(*t->variable);
        }
        if (rows.empty()) break;
    }

    BindingTable table;
    table.columns = q.star ? detail::star_columns(patterns) : q.projection;
    for (const auto& row : rows) {
        std::vector<Term> tuple;
        tuple.reserve(table.columns.size());
        for (const auto& col : table.columns) tuple.push_back(row.at(col));
        table.rows.push_back(std::move(tuple));
    }
    std::sort(table.rows.begin(), table.rows.end());
    if (q.distinct) {
        table.rows.erase(std::unique(table.rows.begin(), table.rows.end()), table.rows.end());
    }
    return table;
}

}  // namespace tacio
