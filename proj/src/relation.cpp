#include "tabsem/relation.hpp"

#include <stdexcept>
#include <utility>

namespace tabsem {

IntRelation::IntRelation(int order) : order(order) {
    if (order < 0) throw std::invalid_argument("relation order must be >= 0");
}

IntRelation::IntRelation(int order, std::set<TermTuple> tuples) : IntRelation(order) {
    for (TermTuple t : tuples) insert(std::move(t));
}

void IntRelation::insert(TermTuple t) {
    if (static_cast<int>(t.size()) != order)
        throw std::invalid_argument("tuple length does not match relation order");
    for (const Term& c : t)
        if (!c.ground()) throw std::invalid_argument("relation tuples must be ground");
    tuples.insert(std::move(t));
}

bool IntRelation::subset_of(const IntRelation& o) const {
    if (order != o.order) return false;
    for (const TermTuple& t : tuples)
        if (!o.contains(t)) return false;
    return true;
}

VarRelation::VarRelation(std::set<Variable> index) : index_set(std::move(index)) {}

VarRelation::VarRelation(std::set<Variable> index, std::set<VarTuple> ts)
    : index_set(std::move(index)) {
    for (VarTuple t : ts) insert(std::move(t));
}

void VarRelation::insert(VarTuple t) {
    if (t.size() != index_set.size())
        throw std::invalid_argument("variable-indexed tuple not total on index set");
    for (const auto& [v, val] : t) {
        if (!index_set.count(v))
            throw std::invalid_argument("tuple entry outside index set: " + v.name);
        if (!val.ground())
            throw std::invalid_argument("variable-indexed tuples must be ground");
    }
    tuples.insert(std::move(t));
}

bool VarRelation::operator==(const VarRelation& o) const {
    if (tuples.empty() && o.tuples.empty()) return true;
    return index_set == o.index_set && tuples == o.tuples;
}

std::string to_string(const Atom& a) {
    std::string out = to_string(Term::make(a.pred));
    if (!a.args.empty()) out += to_string(a.args);
    return out;
}

long RelationalInterpretation::total_tuples() const {
    long n = 0;
    for (const auto& [_, r] : relations) n += static_cast<long>(r.tuples.size());
    return n;
}

bool included_in(const RelationalInterpretation& a, const RelationalInterpretation& b) {
    for (const auto& [p, r] : a.relations) {
        auto it = b.relations.find(p);
        if (it == b.relations.end()) {
            if (!r.empty()) return false;
            continue;
        }
        if (!r.subset_of(it->second)) return false;
    }
    return true;
}

VarRelation rel_project(const VarRelation& r, const std::set<Variable>& sub) {
    for (const Variable& v : sub)
        if (!r.index_set.count(v))
            throw std::invalid_argument("projection outside index set: " + v.name);
    VarRelation out(sub);
    for (const VarTuple& t : r.tuples) {
        VarTuple restricted;
        for (const Variable& v : sub) restricted.emplace(v, t.at(v));
        out.tuples.insert(std::move(restricted));
    }
    return out;
}

VarRelation rel_cylinder(const VarRelation& r, const std::set<Variable>& big,
                         const Universe& u) {
    for (const Variable& v : r.index_set)
        if (!big.count(v))
            throw std::invalid_argument("cylinder index set must contain " + v.name);

    std::vector<Variable> extra;
    for (const Variable& v : big)
        if (!r.index_set.count(v)) extra.push_back(v);

    VarRelation out(big);
    if (r.tuples.empty()) return out;
    std::vector<Term> herb = enumerate_ground(u);
    for (const VarTuple& t : r.tuples) {
        std::vector<std::size_t> idx(extra.size(), 0);
        while (true) {
            VarTuple extended = t;
            for (std::size_t i = 0; i < extra.size(); ++i) extended.emplace(extra[i], herb[idx[i]]);
            out.tuples.insert(std::move(extended));
            std::size_t k = 0;
            for (; k < idx.size(); ++k) {
                if (++idx[k] < herb.size()) break;
                idx[k] = 0;
            }
            if (k == idx.size()) break;
        }
    }
    return out;
}

VarRelation intersect(const VarRelation& a, const VarRelation& b) {
    if (a.index_set != b.index_set)
        throw std::invalid_argument("intersection requires equal index sets");
    VarRelation out(a.index_set);
    for (const VarTuple& t : a.tuples)
        if (b.tuples.count(t)) out.tuples.insert(t);
    return out;
}

RelationalInterpretation herbrand_to_relational(const HerbrandInterpretation& i,
                                                const Signature& sig) {
    RelationalInterpretation out;
    for (const auto& [p, arity] : sig.predicates) out.relations.emplace(p, IntRelation(arity));
    for (const Atom& a : i.atoms) {
        auto it = out.relations.find(a.pred);
        if (it == out.relations.end())
            throw std::invalid_argument("atom uses unknown procedure symbol: " + a.pred);
        it->second.insert(a.args);  // throws on arity mismatch
    }
    return out;
}

HerbrandInterpretation relational_to_herbrand(const RelationalInterpretation& r) {
    HerbrandInterpretation out;
    for (const auto& [p, rel] : r.relations)
        for (const TermTuple& t : rel.tuples) out.atoms.insert(Atom{p, t});
    return out;
}

bool correspond(const HerbrandInterpretation& i, const RelationalInterpretation& r,
                const Signature& sig) {
    return herbrand_to_relational(i, sig) == r;
}

}  // namespace tabsem
