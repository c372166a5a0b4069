#pragma once

#include <set>
#include <vector>

#include "tabsem/relation.hpp"
#include "tabsem/term.hpp"

namespace tabsem {

/// One row of a table: a substitution in canonical solved form, total on the
/// index set V. Variables of V without an explicit binding map to themselves,
/// which keeps the tuple of type V -> T_V while the stored solved form stays
/// idempotent.
class TableTuple {
public:
    TableTuple(std::set<Variable> index_set, SolvedForm solved);

    const std::set<Variable>& index_set() const { return index_set_; }
    /// The non-identity bindings.
    const SolvedForm& solved() const { return solved_; }
    /// Identity-totalized entry for v; v must belong to the index set.
    Term entry(const Variable& v) const;

    bool operator==(const TableTuple& o) const {
        return index_set_ == o.index_set_ && solved_ == o.solved_;
    }
    bool operator<(const TableTuple& o) const {
        if (index_set_ != o.index_set_) return index_set_ < o.index_set_;
        return solved_ < o.solved_;
    }

private:
    std::set<Variable> index_set_;
    SolvedForm solved_;
};

/// A set of substitutions over a common variable index set. Tables are
/// canonical values: tuples are deduplicated solved forms, and every table
/// with no tuples is the null table (equality ignores the index set then).
/// The unit table has an empty index set and the single empty tuple.
class Table {
public:
    Table() = default;  // the null table
    Table(std::set<Variable> index_set, std::set<TableTuple> tuples);

    static Table bottom() { return Table(); }
    static Table top();

    const std::set<Variable>& index_set() const { return index_set_; }
    const std::set<TableTuple>& tuples() const { return tuples_; }

    bool is_bottom() const { return tuples_.empty(); }
    bool is_top() const { return index_set_.empty() && !tuples_.empty(); }

    bool operator==(const Table& o) const;
    bool operator!=(const Table& o) const { return !(*this == o); }

private:
    std::set<Variable> index_set_;
    std::set<TableTuple> tuples_;
};

/// Table join on the union of the index sets: for every pair of rows whose
/// combined equations are solvable, the product contains their solved form.
/// Shared variable names coordinate; nothing is renamed apart.
Table product(const Table& t0, const Table& t1);

/// Product of a collection, with the empty collection yielding the unit
/// table. Canonical tables make the fold order irrelevant.
Table product_all(const std::vector<Table>& tables);

/// Matches the relation's rows against the argument tuple; the rows that
/// unify contribute their solved form. The table is indexed by the argument
/// tuple's variables. Throws if the tuple length differs from the order.
Table filter(const IntRelation& r, const TermTuple& args);

/// Instantiates the parameter tuple by every row and collects all ground
/// instances within the universe (depth-clipped).
IntRelation project(const TermTuple& params, const Table& t, const Universe& u,
                    ClipStats* stats = nullptr);

/// Extends every row to the larger index set with identity entries.
/// Requires index_set(t) to be a subset of big.
Table cylinder_table(const Table& t, const std::set<Variable>& big);

/// All ground instantiations of each row over the universe, depth-clipped.
VarRelation ground_table(const Table& t, const Universe& u);

/// Tables are equivalent when they ground to the same variable-indexed
/// relation once aligned (identity-extended) to their common index set.
bool tables_equivalent(const Table& t0, const Table& t1, const Universe& u);

}  // namespace tabsem
