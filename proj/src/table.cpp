#include "tabsem/table.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace tabsem {

TableTuple::TableTuple(std::set<Variable> index_set, SolvedForm solved)
    : index_set_(std::move(index_set)), solved_(std::move(solved)) {
    for (const auto& [v, t] : solved_.bindings()) {
        if (!index_set_.count(v))
            throw std::invalid_argument("binding outside table index set: " + v.name);
        for (const Variable& w : variables_of(t))
            if (!index_set_.count(w))
                throw std::invalid_argument("binding value outside table index set: " + w.name);
    }
}

Term TableTuple::entry(const Variable& v) const {
    if (!index_set_.count(v))
        throw std::invalid_argument("entry outside table index set: " + v.name);
    if (auto t = solved_.lookup(v)) return *t;
    return Term::var(v);
}

Table::Table(std::set<Variable> index_set, std::set<TableTuple> tuples)
    : index_set_(std::move(index_set)), tuples_(std::move(tuples)) {
    for (const TableTuple& t : tuples_)
        if (t.index_set() != index_set_)
            throw std::invalid_argument("table tuple index set differs from table's");
}

Table Table::top() {
    std::set<TableTuple> one{TableTuple({}, SolvedForm())};
    return Table({}, std::move(one));
}

bool Table::operator==(const Table& o) const {
    if (tuples_.empty() && o.tuples_.empty()) return true;
    return index_set_ == o.index_set_ && tuples_ == o.tuples_;
}

namespace {

void append_equations(const TableTuple& t, std::vector<TermEquation>& eqs) {
    for (const auto& [v, rhs] : t.solved().bindings()) eqs.push_back({Term::var(v), rhs});
}

}  // namespace

Table product(const Table& t0, const Table& t1) {
    std::set<Variable> index = t0.index_set();
    index.insert(t1.index_set().begin(), t1.index_set().end());

    std::set<TableTuple> out;
    for (const TableTuple& a : t0.tuples()) {
        for (const TableTuple& b : t1.tuples()) {
            std::vector<TermEquation> eqs;
            append_equations(a, eqs);
            append_equations(b, eqs);
            if (SolveResult r = solve(eqs)) out.emplace(index, *r.solution);
        }
    }
    return Table(std::move(index), std::move(out));
}

Table product_all(const std::vector<Table>& tables) {
    Table acc = Table::top();
    for (const Table& t : tables) acc = product(acc, t);
    return acc;
}

Table filter(const IntRelation& r, const TermTuple& args) {
    if (r.order != static_cast<int>(args.size()))
        throw std::invalid_argument("filtering arity mismatch");
    std::set<Variable> index = variables_of(args);
    std::set<TableTuple> out;
    for (const TermTuple& row : r.tuples) {
        std::vector<TermEquation> eqs;
        eqs.reserve(args.size());
        for (std::size_t i = 0; i < args.size(); ++i) eqs.push_back({args[i], row[i]});
        if (SolveResult s = solve(eqs)) out.emplace(index, *s.solution);
    }
    return Table(std::move(index), std::move(out));
}

IntRelation project(const TermTuple& params, const Table& t, const Universe& u,
                    ClipStats* stats) {
    IntRelation out(static_cast<int>(params.size()));
    std::vector<Term> herb;  // enumerated once, on the first non-ground row
    for (const TableTuple& row : t.tuples()) {
        TermTuple instantiated = apply(row.solved(), params);
        if (herb.empty() && !variables_of(instantiated).empty()) herb = enumerate_ground(u);
        for (TermTuple g : ground_instances(instantiated, u, herb, stats))
            out.insert(std::move(g));
    }
    return out;
}

Table cylinder_table(const Table& t, const std::set<Variable>& big) {
    for (const Variable& v : t.index_set())
        if (!big.count(v))
            throw std::invalid_argument("cylinder index set must contain " + v.name);
    std::set<TableTuple> out;
    for (const TableTuple& row : t.tuples()) out.emplace(big, row.solved());
    return Table(big, std::move(out));
}

VarRelation ground_table(const Table& t, const Universe& u) {
    VarRelation out(t.index_set());
    if (t.tuples().empty()) return out;

    std::vector<Variable> index(t.index_set().begin(), t.index_set().end());
    std::vector<Term> herb;  // enumerated once, on the first non-ground row
    for (const TableTuple& row : t.tuples()) {
        TermTuple entries;
        entries.reserve(index.size());
        for (const Variable& v : index) entries.push_back(row.entry(v));
        if (herb.empty() && !variables_of(entries).empty()) herb = enumerate_ground(u);
        for (TermTuple g : ground_instances(entries, u, herb)) {
            VarTuple tuple;
            for (std::size_t i = 0; i < index.size(); ++i)
                tuple.emplace(index[i], std::move(g[i]));
            out.tuples.insert(std::move(tuple));
        }
    }
    return out;
}

bool tables_equivalent(const Table& t0, const Table& t1, const Universe& u) {
    if (t0 == t1) return true;  // canonical equality is a sound fast path
    std::set<Variable> common = t0.index_set();
    common.insert(t1.index_set().begin(), t1.index_set().end());
    return ground_table(cylinder_table(t0, common), u) ==
           ground_table(cylinder_table(t1, common), u);
}

}  // namespace tabsem
