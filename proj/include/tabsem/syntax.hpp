#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tabsem/relation.hpp"
#include "tabsem/term.hpp"

namespace tabsem {

/// Procedure call: an n-ary procedure symbol with an argument tuple of order n.
struct Call {
    std::string symbol;
    TermTuple args;

    bool operator==(const Call& o) const { return symbol == o.symbol && args == o.args; }
    bool operator<(const Call& o) const {
        if (symbol != o.symbol) return symbol < o.symbol;
        return args < o.args;
    }
};

/// Procedure body: a set of calls. Duplicates collapse, order is irrelevant.
struct Body {
    std::set<Call> calls;

    bool operator==(const Body& o) const = default;
    bool operator<(const Body& o) const { return calls < o.calls; }
};

/// Clause: parameter tuple plus body.
struct Clause {
    TermTuple params;
    Body body;

    bool operator==(const Clause& o) const = default;
    bool operator<(const Clause& o) const {
        if (params != o.params) return params < o.params;
        return body < o.body;
    }
};

/// Set of clauses of one arity. A procedure may be empty; it still has an
/// arity (symbols that are called but never defined denote the empty
/// procedure, whose meaning comes from the interpretation).
struct Procedure {
    int arity = 0;
    std::set<Clause> clauses;

    Procedure() = default;
    Procedure(int arity, std::set<Clause> clauses);

    bool operator==(const Procedure& o) const = default;
};

/// Tuple of procedures indexed by procedure symbol.
struct ProceduralProgram {
    std::map<std::string, Procedure> procedures;

    bool defines(const std::string& symbol) const { return procedures.count(symbol) > 0; }
    const Procedure& at(const std::string& symbol) const;

    /// Every call symbol must name a procedure of matching arity.
    void validate() const;

    bool operator==(const ProceduralProgram& o) const = default;
};

/// Positive Horn clause in clausal notation.
struct HornClause {
    Atom head;
    std::set<Atom> body;

    bool operator==(const HornClause& o) const = default;
    bool operator<(const HornClause& o) const {
        if (!(head == o.head)) return head < o.head;
        return body < o.body;
    }
};

/// A sentence: a set of positive Horn clauses.
struct ClausalSentence {
    std::set<HornClause> clauses;

    bool operator==(const ClausalSentence& o) const = default;
};

struct SourcePos {
    int line = 1;
    int column = 1;
};

class ParseError : public std::runtime_error {
public:
    ParseError(SourcePos pos, const std::string& message);
    SourcePos pos;
};

/// A symbol was used with two different arities; every symbol indexes exactly
/// one procedure (or function) here.
class ArityConflictError : public ParseError {
public:
    using ParseError::ParseError;
};

/// Parses pure-Prolog source: `head.` facts and `head :- a, b.` rules, with
/// `%` line comments. Names starting with a lowercase letter are constants
/// or functors, names starting with an uppercase letter or `_` are
/// variables, and each bare `_` is a fresh variable. `[H|T]` and `[a,b]`
/// sugar the `'.'` pair functor; `[]` is the constant nil.
///
/// Duplicate clauses and duplicate body atoms collapse (with a warning when
/// a sink is given). Predicate and functor arity conflicts are errors.
ClausalSentence parse_program(std::string_view text, std::vector<std::string>* warnings = nullptr);

/// Parses a single term; the whole input must be consumed.
Term parse_term_text(std::string_view text);

/// Parses one parenthesized ground tuple, e.g. "(a,f(b))".
TermTuple parse_tuple_text(std::string_view text);

/// Parses a comma-separated conjunction of calls, e.g. "app(X,Y,Z), mem(X,Z)".
Body parse_goal(std::string_view text);

/// Groups clauses by head symbol; head argument tuples become parameter
/// tuples and body atoms become calls. Symbols that only appear in bodies
/// map to the empty procedure.
ProceduralProgram to_procedural(const ClausalSentence& s);

/// Inverse of to_procedural.
ClausalSentence to_clausal(const ProceduralProgram& p);

/// Harvests constants and functors from every term of the program, and the
/// procedure symbols with their arities.
Signature infer_signature(const ProceduralProgram& p);

/// Adds the constants and functors occurring in t to sig.
void harvest_term_symbols(const Term& t, Signature& sig);

/// Renames every defining occurrence and every call through rho, which must
/// be total on the program's symbols and injective. Terms are untouched.
ProceduralProgram rename_predicates(const ProceduralProgram& p,
                                    const std::map<std::string, std::string>& rho);

}  // namespace tabsem
