#include "tabsem/semantics.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace tabsem {

Table eval_call(const EvalContext& ctx, const Call& c) {
    auto it = ctx.interp.relations.find(c.symbol);
    if (it == ctx.interp.relations.end())
        throw std::invalid_argument("call to symbol outside the interpretation: " + c.symbol);
    return filter(it->second, c.args);
}

Table eval_body(const EvalContext& ctx, const Body& b) {
    std::vector<Table> values;
    values.reserve(b.calls.size());
    for (const Call& c : b.calls) values.push_back(eval_call(ctx, c));
    return product_all(values);
}

IntRelation eval_clause(const EvalContext& ctx, const Clause& cl) {
    return project(cl.params, eval_body(ctx, cl.body), ctx.universe);
}

IntRelation eval_procedure(const EvalContext& ctx, const Procedure& proc) {
    IntRelation out(proc.arity);
    for (const Clause& cl : proc.clauses) {
        IntRelation r = eval_clause(ctx, cl);
        out.tuples.insert(r.tuples.begin(), r.tuples.end());
    }
    return out;
}

RelationalInterpretation eval_program(const EvalContext& ctx) {
    RelationalInterpretation out;
    for (const auto& [sym, proc] : ctx.program.procedures)
        out.relations.emplace(sym, eval_procedure(ctx, proc));
    return out;
}

// ---------------------------------------------------------------------------
// Immediate-consequence oracle. Deliberately self-contained: matching and
// instantiation are written out here instead of reusing solve/apply, so a
// defect in the table algebra cannot hide in its own oracle.

namespace {

bool match_ground(const Term& pattern, const Term& ground, std::map<Variable, Term>& bind) {
    if (pattern.is_var()) {
        Variable v = pattern.as_var();
        auto it = bind.find(v);
        if (it != bind.end()) return it->second == ground;
        bind.emplace(std::move(v), ground);
        return true;
    }
    if (ground.is_var() || pattern.symbol() != ground.symbol() ||
        pattern.args().size() != ground.args().size())
        return false;
    for (std::size_t i = 0; i < pattern.args().size(); ++i)
        if (!match_ground(pattern.args()[i], ground.args()[i], bind)) return false;
    return true;
}

Term instantiate(const Term& t, const std::map<Variable, Term>& bind) {
    if (t.is_var()) return bind.at(t.as_var());
    if (t.args().empty()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(instantiate(a, bind));
    return Term::make(t.symbol(), std::move(args));
}

void collect_unbound(const Term& t, int at, const std::map<Variable, Term>& bind,
                     std::map<Variable, int>& out) {
    if (t.is_var()) {
        Variable v = t.as_var();
        if (bind.count(v)) return;
        auto [it, inserted] = out.emplace(std::move(v), at);
        if (!inserted && at < it->second) it->second = at;
        return;
    }
    for (const Term& a : t.args()) collect_unbound(a, at + 1, bind, out);
}

void emit_heads(const Atom& head, const std::map<Variable, Term>& bind,
                const std::vector<Term>& herb, int depth_bound,
                std::set<Atom>& out) {
    // Head-only variables range over the universe, but a value deeper than
    // the bound minus the variable's nesting depth is certain to clip.
    std::map<Variable, int> unbound;
    for (const Term& t : head.args) collect_unbound(t, 0, bind, unbound);

    std::vector<Variable> order;
    std::vector<std::vector<const Term*>> candidates;
    for (const auto& [v, at] : unbound) {
        order.push_back(v);
        std::vector<const Term*> fits;
        for (const Term& g : herb)
            if (g.depth() + at <= depth_bound) fits.push_back(&g);
        if (fits.empty()) return;
        candidates.push_back(std::move(fits));
    }

    std::vector<std::size_t> idx(order.size(), 0);
    while (true) {
        std::map<Variable, Term> full = bind;
        for (std::size_t i = 0; i < order.size(); ++i) full.emplace(order[i], *candidates[i][idx[i]]);
        TermTuple args;
        args.reserve(head.args.size());
        bool clip = false;
        for (const Term& t : head.args) {
            Term g = instantiate(t, full);
            clip = clip || g.depth() > depth_bound;
            args.push_back(std::move(g));
        }
        if (!clip) out.insert(Atom{head.pred, std::move(args)});
        if (order.empty()) break;
        std::size_t k = 0;
        for (; k < idx.size(); ++k) {
            if (++idx[k] < candidates[k].size()) break;
            idx[k] = 0;
        }
        if (k == idx.size()) break;
    }
}

void match_body(const HornClause& clause, const std::vector<Atom>& body,
                std::size_t next, std::map<Variable, Term>& bind,
                const std::map<std::string, std::vector<const Atom*>>& by_pred,
                const std::vector<Term>& herb, int depth_bound, std::set<Atom>& out) {
    if (next == body.size()) {
        emit_heads(clause.head, bind, herb, depth_bound, out);
        return;
    }
    auto candidates = by_pred.find(body[next].pred);
    if (candidates == by_pred.end()) return;
    for (const Atom* fact : candidates->second) {
        if (fact->args.size() != body[next].args.size()) continue;
        std::map<Variable, Term> extended = bind;
        bool ok = true;
        for (std::size_t i = 0; ok && i < fact->args.size(); ++i)
            ok = match_ground(body[next].args[i], fact->args[i], extended);
        if (ok) match_body(clause, body, next + 1, extended, by_pred, herb, depth_bound, out);
    }
}

}  // namespace

HerbrandInterpretation tp_step(const ClausalSentence& s, const HerbrandInterpretation& i,
                               const Universe& u) {
    std::map<std::string, std::vector<const Atom*>> by_pred;
    for (const Atom& a : i.atoms) by_pred[a.pred].push_back(&a);

    std::vector<Term> herb = enumerate_ground(u);
    HerbrandInterpretation out;
    for (const HornClause& clause : s.clauses) {
        std::vector<Atom> body(clause.body.begin(), clause.body.end());
        std::map<Variable, Term> bind;
        match_body(clause, body, 0, bind, by_pred, herb, u.depth_bound, out.atoms);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Fixpoint drivers.

namespace {

RelationalInterpretation empty_interpretation(const ProceduralProgram& p) {
    RelationalInterpretation out;
    for (const auto& [sym, proc] : p.procedures) out.relations.emplace(sym, IntRelation(proc.arity));
    return out;
}

}  // namespace

FixpointReport lfp_M(const ProceduralProgram& p, const Universe& u, int max_iters,
                     const RelationalInterpretation* external) {
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

    RelationalInterpretation current = empty_interpretation(p);
    if (external) {
        for (const auto& [sym, rel] : external->relations) {
            auto it = current.relations.find(sym);
            if (it == current.relations.end())
                throw std::invalid_argument("external relation for unknown symbol: " + sym);
            if (it->second.order != rel.order)
                throw std::invalid_argument("external relation arity mismatch: " + sym);
            it->second = rel;
        }
    }

    FixpointReport report;
    report.sizes.push_back(current.total_tuples());
    for (int k = 1; k <= max_iters; ++k) {
        EvalContext ctx{current, u, p};
        RelationalInterpretation next = eval_program(ctx);
        if (external)
            for (const auto& [sym, rel] : external->relations) next.relations.at(sym) = rel;
        report.iterations = k;
        report.sizes.push_back(next.total_tuples());
        if (next == current) {
            report.converged = true;
            break;
        }
        current = std::move(next);
    }
    report.result = std::move(current);
    return report;
}

HerbrandFixpointReport lfp_T(const ClausalSentence& s, const Universe& u, int max_iters,
                             const HerbrandInterpretation* external) {
    if (max_iters < 1) throw std::invalid_argument("max_iters must be >= 1");

    HerbrandInterpretation current;
    if (external) current = *external;

    HerbrandFixpointReport report;
    report.sizes.push_back(static_cast<long>(current.atoms.size()));
    for (int k = 1; k <= max_iters; ++k) {
        HerbrandInterpretation next = tp_step(s, current, u);
        if (external) next.atoms.insert(external->atoms.begin(), external->atoms.end());
        report.iterations = k;
        report.sizes.push_back(static_cast<long>(next.atoms.size()));
        if (next == current) {
            report.converged = true;
            break;
        }
        current = std::move(next);
    }
    report.result = std::move(current);
    return report;
}

QueryResult query(const ProceduralProgram& p, const Body& goal, const Universe& u, int max_iters,
                  const RelationalInterpretation* external) {
    for (const Call& c : goal.calls) {
        auto it = p.procedures.find(c.symbol);
        if (it == p.procedures.end())
            throw std::invalid_argument("goal calls unknown predicate: " + c.symbol);
        if (it->second.arity != static_cast<int>(c.args.size()))
            throw std::invalid_argument("goal arity mismatch for: " + c.symbol);
    }
    FixpointReport fp = lfp_M(p, u, max_iters, external);
    EvalContext ctx{fp.result, u, p};
    return QueryResult{eval_body(ctx, goal), fp.converged, fp.iterations};
}

}  // namespace tabsem
