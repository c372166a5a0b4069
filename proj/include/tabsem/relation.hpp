#pragma once

#include <map>
#include <set>
#include <string>

#include "tabsem/term.hpp"

namespace tabsem {

/// n-ary relation of ground tuples, indexed by 0..n-1.
struct IntRelation {
    int order = 0;
    std::set<TermTuple> tuples;

    IntRelation() = default;
    explicit IntRelation(int order);
    IntRelation(int order, std::set<TermTuple> tuples);

    bool empty() const { return tuples.empty(); }
    void insert(TermTuple t);
    bool contains(const TermTuple& t) const { return tuples.count(t) > 0; }
    bool subset_of(const IntRelation& o) const;

    bool operator==(const IntRelation& o) const = default;
};

/// Ground tuple indexed by variables; total on the owning relation's index set.
using VarTuple = std::map<Variable, Term>;

/// Relation of ground tuples indexed by a fixed finite set of variables.
/// All relations with no tuples compare equal, mirroring the null table.
struct VarRelation {
    std::set<Variable> index_set;
    std::set<VarTuple> tuples;

    VarRelation() = default;
    explicit VarRelation(std::set<Variable> index);
    VarRelation(std::set<Variable> index, std::set<VarTuple> tuples);

    bool empty() const { return tuples.empty(); }
    void insert(VarTuple t);

    bool operator==(const VarRelation& o) const;
    bool operator!=(const VarRelation& o) const { return !(*this == o); }
};

/// Ground atom: procedure symbol applied to a ground argument tuple.
struct Atom {
    std::string pred;
    TermTuple args;

    bool operator==(const Atom& o) const { return pred == o.pred && args == o.args; }
    bool operator<(const Atom& o) const {
        if (pred != o.pred) return pred < o.pred;
        return args < o.args;
    }
};

std::string to_string(const Atom& a);

/// Subset of the Herbrand base.
struct HerbrandInterpretation {
    std::set<Atom> atoms;

    bool operator==(const HerbrandInterpretation& o) const = default;
};

/// Tuple of integer-indexed relations indexed by procedure symbol.
struct RelationalInterpretation {
    std::map<std::string, IntRelation> relations;

    long total_tuples() const;

    bool operator==(const RelationalInterpretation& o) const = default;
};

/// Componentwise inclusion; both interpretations must cover the same symbols.
bool included_in(const RelationalInterpretation& a, const RelationalInterpretation& b);

/// Restriction of every tuple to sub (duplicates merge). Requires
/// sub to be a subset of the index set.
VarRelation rel_project(const VarRelation& r, const std::set<Variable>& sub);

/// Greatest relation on big over the universe whose projection back to the
/// original index set is r. Requires index_set(r) to be a subset of big.
VarRelation rel_cylinder(const VarRelation& r, const std::set<Variable>& big, const Universe& u);

/// Intersection of two relations on the same index set.
VarRelation intersect(const VarRelation& a, const VarRelation& b);

/// R(p) = all argument tuples of p-atoms; symbols without atoms map to empty
/// relations. Unknown symbols or arity mismatches are errors.
RelationalInterpretation herbrand_to_relational(const HerbrandInterpretation& i,
                                                const Signature& sig);

HerbrandInterpretation relational_to_herbrand(const RelationalInterpretation& r);

/// True iff i and r are images of each other under the bijection above.
bool correspond(const HerbrandInterpretation& i, const RelationalInterpretation& r,
                const Signature& sig);

}  // namespace tabsem
