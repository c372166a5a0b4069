#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tabsem {

/// Variable identifier. The lexicographic order on names is the canonical
/// total order used throughout: when two variables are equated, the smaller
/// name becomes the representative.
struct Variable {
    std::string name;

    bool operator==(const Variable& o) const { return name == o.name; }
    bool operator!=(const Variable& o) const { return name != o.name; }
    bool operator<(const Variable& o) const { return name < o.name; }
};

/// First-order term: a variable or a compound; constants are compounds of
/// arity zero. Immutable after construction.
class Term {
public:
    static Term var(std::string name);
    static Term var(const Variable& v);
    static Term make(std::string functor, std::vector<Term> args = {});

    bool is_var() const { return is_var_; }
    bool is_compound() const { return !is_var_; }
    bool is_constant() const { return !is_var_ && args_.empty(); }

    /// Variable name for variables, functor for compounds.
    const std::string& symbol() const { return symbol_; }
    const std::vector<Term>& args() const { return args_; }
    Variable as_var() const;

    bool ground() const;
    /// Constants (and variables) have depth 0; f(t0..tk) has 1 + max arg depth.
    int depth() const;

    bool operator==(const Term& o) const;
    bool operator!=(const Term& o) const { return !(*this == o); }
    bool operator<(const Term& o) const;

private:
    Term() = default;

    bool is_var_ = false;
    std::string symbol_;
    std::vector<Term> args_;
};

/// Three-way structural comparison: variables before compounds, then by
/// symbol, arity, and arguments left to right.
int compare(const Term& a, const Term& b);

/// Parameter or argument tuple of order n.
using TermTuple = std::vector<Term>;

struct TermEquation {
    Term lhs;
    Term rhs;
};

std::set<Variable> variables_of(const Term& t);
std::set<Variable> variables_of(const TermTuple& t);

class SolvedForm;
struct SolveResult;
SolveResult solve(const std::vector<TermEquation>& equations);

/// Substitution in canonical solved form: the bound variables are pairwise
/// distinct, never occur in any right-hand side, and identity bindings are
/// dropped. Applying a solved form twice equals applying it once.
///
/// The public constructor canonicalizes, so equated variables are always
/// represented by the smallest name and right-hand sides are fully resolved.
class SolvedForm {
public:
    SolvedForm() = default;

    /// Canonicalizes the given bindings (equivalent to solving {x = t}).
    /// Throws std::invalid_argument if they have no solved form.
    explicit SolvedForm(const std::map<Variable, Term>& bindings);

    const std::map<Variable, Term>& bindings() const { return bindings_; }
    bool identity() const { return bindings_.empty(); }
    std::optional<Term> lookup(const Variable& v) const;

    bool operator==(const SolvedForm& o) const { return bindings_ == o.bindings_; }
    bool operator!=(const SolvedForm& o) const { return !(*this == o); }
    bool operator<(const SolvedForm& o) const { return bindings_ < o.bindings_; }

private:
    struct canonical_tag {};
    SolvedForm(canonical_tag, std::map<Variable, Term> b) : bindings_(std::move(b)) {}

    friend struct SolveResult;
    friend SolveResult solve(const std::vector<TermEquation>& equations);

    std::map<Variable, Term> bindings_;
};

/// Simultaneous substitution. Idempotent: apply(s, apply(s, t)) == apply(s, t).
Term apply(const SolvedForm& s, const Term& t);
TermTuple apply(const SolvedForm& s, const TermTuple& t);

/// One simultaneous substitution pass over a raw variable-to-term map, with
/// no solved-form canonicalization.
Term substitute(const std::map<Variable, Term>& bind, const Term& t);

enum class UnifyFail : std::uint8_t { clash, occurs };

/// Either the canonical solved form of a set of equations or a failure kind.
/// The kind is diagnostic only; both kinds mean "no solution".
struct SolveResult {
    std::optional<SolvedForm> solution;
    UnifyFail fail = UnifyFail::clash;

    explicit operator bool() const { return solution.has_value(); }
    const SolvedForm& operator*() const { return *solution; }
    const SolvedForm* operator->() const { return &*solution; }
};

/// Martelli-Montanari style solving with occurs check. The result is
/// canonical: it depends only on the equation set, not on its order.
SolveResult solve(const std::vector<TermEquation>& equations);
SolveResult unify(const Term& t0, const Term& t1);

/// Symbols of the term language plus the procedure symbols. Constant and
/// function namespaces are disjoint; every symbol carries exactly one arity.
struct Signature {
    std::set<std::string> constants;
    std::map<std::string, int> functions;   // arity >= 1
    std::map<std::string, int> predicates;  // arity >= 0

    void validate() const;
    /// Checks that every functor in t is declared with matching arity.
    void check_term(const Term& t) const;

    bool operator==(const Signature& o) const = default;
};

/// Finite truncation of the Herbrand universe: all ground terms over the
/// signature of depth <= depth_bound. Constants have depth 0, so a bound of
/// zero gives the constants-only (Datalog) case.
struct Universe {
    Signature signature;
    int depth_bound = 0;
};

/// All ground terms of depth <= depth_bound, ordered by depth then by the
/// structural term order, without duplicates. Throws std::invalid_argument
/// if the signature has no constants.
std::vector<Term> enumerate_ground(const Universe& u);

/// Counts tuples discarded by the depth clip.
struct ClipStats {
    long clipped = 0;
};

/// All instantiations of the tuple's variables by members of the universe.
/// Any resulting tuple with a component deeper than the bound is discarded;
/// discards are counted in *stats when given.
std::set<TermTuple> ground_instances(const TermTuple& t, const Universe& u,
                                     ClipStats* stats = nullptr);

/// Same, over a pre-enumerated universe; callers that instantiate many
/// tuples enumerate once and share.
std::set<TermTuple> ground_instances(const TermTuple& t, const Universe& u,
                                     const std::vector<Term>& herb, ClipStats* stats = nullptr);

/// Renders a term in parseable syntax; functors that are not plain lowercase
/// names are quoted.
std::string to_string(const Term& t);
/// Renders "(t0,t1,...)".
std::string to_string(const TermTuple& t);

}  // namespace tabsem
