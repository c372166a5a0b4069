#include "tabsem/laws.hpp"

#include <algorithm>
#include <cmath>

#include "tabsem/render.hpp"

namespace tabsem {

namespace {

const char* kVarPool[] = {"X", "Y", "Z", "W"};

std::string show_table(const std::string& name, const Table& t) {
    std::string out = name + " (index";
    for (const Variable& v : t.index_set()) out += " " + v.name;
    out += "):\n";
    std::string rows = render_table(t, Format::records);
    if (rows.empty()) rows = "<no tuples>\n";
    return out + rows;
}

std::string show_relation(const std::string& name, const IntRelation& r) {
    std::string rows = render_relation(r, Format::records);
    if (rows.empty()) rows = "<no tuples>\n";
    return name + "/" + std::to_string(r.order) + ":\n" + rows;
}

std::string show_program(const ProceduralProgram& p) {
    std::string out = render_program(p);
    if (out.empty()) out = "<empty program>\n";
    return out;
}

void record_failure(LawOutcome& law, std::string counterexample) {
    ++law.failures;
    if (law.counterexamples.size() < 3) law.counterexamples.push_back(std::move(counterexample));
}

/// Greedy minimization: keeps dropping single tuples while the law still
/// fails on the shrunken tables.
std::vector<Table> shrink_tables(std::vector<Table> tables,
                                 const std::function<bool(const std::vector<Table>&)>& holds) {
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t t = 0; t < tables.size() && !improved; ++t) {
            for (const TableTuple& victim : tables[t].tuples()) {
                std::set<TableTuple> rest = tables[t].tuples();
                rest.erase(victim);
                std::vector<Table> candidate = tables;
                candidate[t] = Table(tables[t].index_set(), std::move(rest));
                if (!holds(candidate)) {
                    tables = std::move(candidate);
                    improved = true;
                    break;
                }
            }
        }
    }
    return tables;
}

}  // namespace

Universe random_law_universe(Rng& rng, int max_depth) {
    Signature sig;
    sig.constants.insert("a");
    if (rng.chance(60)) sig.constants.insert("b");
    sig.functions.emplace("f", 1);
    int depth = max_depth <= 0 ? 0 : 1 + static_cast<int>(rng.pick(static_cast<std::size_t>(max_depth)));
    return Universe{std::move(sig), depth};
}

Term random_ground_term(Rng& rng, const Universe& u) {
    std::vector<Term> herb = enumerate_ground(u);
    return herb[rng.pick(herb.size())];
}

namespace {

Term random_rhs_term(Rng& rng, const Universe& u, const std::vector<Variable>& vars, int budget) {
    if (!vars.empty() && rng.chance(35)) return Term::var(vars[rng.pick(vars.size())]);
    if (budget > 0 && rng.chance(40))
        return Term::make("f", {random_rhs_term(rng, u, vars, budget - 1)});
    std::vector<std::string> consts(u.signature.constants.begin(), u.signature.constants.end());
    return Term::make(consts[rng.pick(consts.size())]);
}

}  // namespace

Table random_table(Rng& rng, const Universe& u, int max_vars, bool ground_rows_only) {
    std::set<Variable> index;
    std::size_t nvars = rng.pick(static_cast<std::size_t>(max_vars) + 1);
    while (index.size() < nvars) index.insert(Variable{kVarPool[rng.pick(4)]});
    std::vector<Variable> vars(index.begin(), index.end());

    std::set<TableTuple> tuples;
    std::size_t rows = rng.pick(4);
    for (std::size_t r = 0; r < rows; ++r) {
        std::vector<TermEquation> eqs;
        for (const Variable& v : vars) {
            if (rng.chance(35)) continue;  // leave v unconstrained in this row
            Term rhs = ground_rows_only ? random_ground_term(rng, u)
                                        : random_rhs_term(rng, u, vars, 2);
            eqs.push_back({Term::var(v), rhs});
        }
        if (SolveResult s = solve(eqs)) tuples.emplace(index, *s.solution);
        // unsolvable rows (occurs) are simply not rows
    }
    return Table(std::move(index), std::move(tuples));
}

IntRelation random_relation(Rng& rng, const Universe& u, int order, int max_rows) {
    IntRelation out(order);
    std::size_t rows = rng.pick(static_cast<std::size_t>(max_rows) + 1);
    for (std::size_t r = 0; r < rows; ++r) {
        TermTuple t;
        for (int i = 0; i < order; ++i) t.push_back(random_ground_term(rng, u));
        out.insert(std::move(t));
    }
    return out;
}

TermTuple random_param_tuple(Rng& rng, const Universe& u, const std::set<Variable>& cover) {
    std::vector<Term> components;
    for (const Variable& v : cover) {
        Term t = Term::var(v);
        if (rng.chance(25)) t = Term::make("f", {t});
        components.push_back(std::move(t));
    }
    std::size_t extra = rng.pick(3);
    std::vector<Variable> vars(cover.begin(), cover.end());
    for (std::size_t i = 0; i < extra; ++i) {
        if (!vars.empty() && rng.chance(50))
            components.push_back(Term::var(vars[rng.pick(vars.size())]));
        else
            components.push_back(random_ground_term(rng, u));
    }
    for (std::size_t i = components.size(); i > 1; --i)
        std::swap(components[i - 1], components[rng.pick(i)]);
    return components;
}

ProceduralProgram random_program(Rng& rng) {
    const char* names[] = {"p", "q", "r"};
    std::size_t npreds = 1 + rng.pick(3);
    std::map<std::string, int> arities;
    for (std::size_t i = 0; i < npreds; ++i) arities.emplace(names[i], static_cast<int>(rng.pick(3)));

    // Clause terms stay within the law signature: constants a/b, unary f.
    Universe scratch{Signature{{"a", "b"}, {{"f", 1}}, {}}, 1};
    auto random_clause_term = [&](const std::vector<Variable>& vars) {
        return random_rhs_term(rng, scratch, vars, 1);
    };

    ProceduralProgram out;
    for (const auto& [name, arity] : arities) out.procedures.emplace(name, Procedure(arity, {}));
    std::vector<std::string> name_list;
    for (const auto& [name, _] : arities) name_list.push_back(name);

    std::size_t total_clauses = rng.pick(5);  // up to 4
    for (std::size_t c = 0; c < total_clauses; ++c) {
        const std::string& owner = name_list[rng.pick(name_list.size())];
        int arity = arities.at(owner);

        std::vector<Variable> vars;
        std::size_t nvars = rng.pick(4);
        const char* pool[] = {"X", "Y", "Z"};
        for (std::size_t i = 0; i < nvars; ++i) vars.push_back(Variable{pool[i]});

        TermTuple params;
        for (int i = 0; i < arity; ++i) params.push_back(random_clause_term(vars));

        Body body;
        std::size_t natoms = rng.pick(3);
        for (std::size_t i = 0; i < natoms; ++i) {
            const std::string& callee = name_list[rng.pick(name_list.size())];
            TermTuple args;
            for (int k = 0; k < arities.at(callee); ++k) args.push_back(random_clause_term(vars));
            body.calls.insert(Call{callee, std::move(args)});
        }
        out.procedures.at(owner).clauses.insert(Clause{std::move(params), std::move(body)});
    }
    return out;
}

RelationalInterpretation random_interpretation(Rng& rng, const Universe& u,
                                               const ProceduralProgram& p) {
    RelationalInterpretation out;
    std::vector<Term> herb = enumerate_ground(u);
    for (const auto& [sym, proc] : p.procedures) {
        IntRelation rel(proc.arity);
        // Draw a sparse subset of Herb^arity.
        std::vector<std::size_t> idx(static_cast<std::size_t>(proc.arity), 0);
        while (true) {
            if (rng.chance(18)) {
                TermTuple t;
                for (std::size_t i : idx) t.push_back(herb[i]);
                rel.insert(std::move(t));
            }
            if (idx.empty()) break;
            std::size_t k = 0;
            for (; k < idx.size(); ++k) {
                if (++idx[k] < herb.size()) break;
                idx[k] = 0;
            }
            if (k == idx.size()) break;
        }
        out.relations.emplace(sym, std::move(rel));
    }
    return out;
}

std::vector<LawOutcome> run_table_laws(const LawConfig& config) {
    return run_table_laws(config, [](const Table& a, const Table& b) { return product(a, b); });
}

std::vector<LawOutcome> run_table_laws(const LawConfig& config, const ProductFn& prod) {
    LawOutcome commutative{"product-commutative"};
    LawOutcome associative{"product-associative"};
    LawOutcome absorbing{"bottom-absorbing"};
    LawOutcome unit{"top-unit"};
    LawOutcome square{"square-equivalent"};
    LawOutcome exact{"filter-project-exact"};
    LawOutcome inclusion{"project-filter-inclusion"};
    LawOutcome distinct{"distinct-vars-equality"};

    Rng rng(config.seed);
    for (long n = 0; n < config.cases; ++n) {
        Universe u = random_law_universe(rng, config.max_depth);
        Table t0 = random_table(rng, u, 4, rng.chance(50));
        Table t1 = random_table(rng, u, 4, rng.chance(50));
        Table t2 = random_table(rng, u, 3, rng.chance(50));

        ++commutative.cases;
        if (!(prod(t0, t1) == prod(t1, t0))) {
            auto holds = [&](const std::vector<Table>& ts) {
                return prod(ts[0], ts[1]) == prod(ts[1], ts[0]);
            };
            std::vector<Table> min = shrink_tables({t0, t1}, holds);
            record_failure(commutative, show_table("t0", min[0]) + show_table("t1", min[1]));
        }

        ++associative.cases;
        if (!(prod(prod(t0, t1), t2) == prod(t0, prod(t1, t2)))) {
            auto holds = [&](const std::vector<Table>& ts) {
                return prod(prod(ts[0], ts[1]), ts[2]) == prod(ts[0], prod(ts[1], ts[2]));
            };
            std::vector<Table> min = shrink_tables({t0, t1, t2}, holds);
            record_failure(associative, show_table("t0", min[0]) + show_table("t1", min[1]) +
                                            show_table("t2", min[2]));
        }

        ++absorbing.cases;
        if (!(prod(Table::bottom(), t0) == Table::bottom() &&
              prod(t0, Table::bottom()) == Table::bottom())) {
            record_failure(absorbing, show_table("t", t0));
        }

        ++unit.cases;
        if (!(prod(Table::top(), t0) == t0 && prod(t0, Table::top()) == t0)) {
            auto holds = [&](const std::vector<Table>& ts) {
                return prod(Table::top(), ts[0]) == ts[0] && prod(ts[0], Table::top()) == ts[0];
            };
            std::vector<Table> min = shrink_tables({t0}, holds);
            record_failure(unit, show_table("t", min[0]));
        }

        ++square.cases;
        if (!tables_equivalent(prod(t0, t0), t0, u)) {
            record_failure(square, show_table("t", t0) + show_table("t*t", prod(t0, t0)));
        }

        // Theorem: filtering a projection back through the same tuple is
        // equivalent to the original table, provided projection lost nothing
        // to the depth clip.
        ++exact.cases;
        {
            TermTuple params = random_param_tuple(rng, u, t0.index_set());
            ClipStats stats;
            IntRelation projected = project(params, t0, u, &stats);
            if (stats.clipped > 0) {
                ++exact.skipped;
            } else if (!tables_equivalent(filter(projected, params), t0, u)) {
                record_failure(exact, show_table("T", t0) + "tuple: " + to_string(params) + "\n" +
                                          show_relation("projected", projected));
            }
        }

        ++inclusion.cases;
        {
            int order = static_cast<int>(rng.pick(4));
            IntRelation r = random_relation(rng, u, order, 4);
            std::set<Variable> somevars;
            std::size_t nv = rng.pick(3);
            while (somevars.size() < nv) somevars.insert(Variable{kVarPool[rng.pick(4)]});
            TermTuple t;
            std::vector<Variable> vlist(somevars.begin(), somevars.end());
            for (int i = 0; i < order; ++i) {
                if (!vlist.empty() && rng.chance(60))
                    t.push_back(rng.chance(30) ? Term::make("f", {Term::var(vlist[rng.pick(vlist.size())])})
                                               : Term::var(vlist[rng.pick(vlist.size())]));
                else
                    t.push_back(random_ground_term(rng, u));
            }
            if (!project(t, filter(r, t), u).subset_of(r)) {
                record_failure(inclusion,
                               show_relation("r", r) + "tuple: " + to_string(t) + "\n");
            }
        }

        ++distinct.cases;
        {
            int order = static_cast<int>(rng.pick(4));
            IntRelation r = random_relation(rng, u, order, 4);
            TermTuple xs;
            for (int i = 0; i < order; ++i) xs.push_back(Term::var(Variable{kVarPool[i]}));
            if (!(project(xs, filter(r, xs), u) == r)) {
                record_failure(distinct,
                               show_relation("r", r) + "tuple: " + to_string(xs) + "\n");
            }
        }
    }
    return {commutative, associative, absorbing, unit, square, exact, inclusion, distinct};
}

LawOutcome run_table_cylinder_law(const LawConfig& config) {
    LawOutcome law{"table-cylinder"};
    Rng rng(config.seed + 1);
    for (long n = 0; n < config.cylinder_cases(); ++n) {
        Universe u = random_law_universe(rng, config.max_depth);
        Table t0 = random_table(rng, u, 3, rng.chance(50));
        Table t1 = random_table(rng, u, 3, rng.chance(50));

        std::set<Variable> both = t0.index_set();
        both.insert(t1.index_set().begin(), t1.index_set().end());
        std::set<Variable> big = both;
        big.insert(Variable{"F1"});
        double herb_size = static_cast<double>(enumerate_ground(u).size());
        if (std::pow(herb_size, static_cast<double>(big.size()) + 1) <= 50000.0)
            big.insert(Variable{"F2"});

        VarRelation left = ground_table(product(t0, t1), u);
        VarRelation right = rel_project(
            intersect(rel_cylinder(ground_table(t0, u), big, u),
                      rel_cylinder(ground_table(t1, u), big, u)),
            both);
        ++law.cases;
        if (!(left == right))
            record_failure(law, show_table("t0", t0) + show_table("t1", t1));
    }
    return law;
}

namespace {

Universe program_universe(Rng& rng, int max_depth, const ProceduralProgram& p) {
    Signature sig = infer_signature(p);
    // The program may mention few symbols; evaluate over the full law
    // signature so interpretations have room.
    sig.constants.insert("a");
    sig.constants.insert("b");
    sig.functions.emplace("f", 1);
    int depth = max_depth <= 0 ? 0 : 1 + static_cast<int>(rng.pick(static_cast<std::size_t>(max_depth)));
    return Universe{std::move(sig), depth};
}

long herbrand_base_bound(const ProceduralProgram& p, const Universe& u) {
    long herb = static_cast<long>(enumerate_ground(u).size());
    long total = 0;
    for (const auto& [sym, proc] : p.procedures) {
        long cells = 1;
        for (int i = 0; i < proc.arity; ++i) cells *= herb;
        total += cells;
    }
    return total + 2;
}

}  // namespace

LawOutcome run_one_step_law(const LawConfig& config) {
    LawOutcome law{"one-step-consequence"};
    Rng rng(config.seed + 2);
    for (long n = 0; n < config.semantics_cases(); ++n) {
        ProceduralProgram p = random_program(rng);
        Universe u = program_universe(rng, config.max_depth, p);
        RelationalInterpretation interp = random_interpretation(rng, u, p);

        EvalContext ctx{interp, u, p};
        HerbrandInterpretation via_tables = relational_to_herbrand(eval_program(ctx));
        HerbrandInterpretation via_oracle =
            tp_step(to_clausal(p), relational_to_herbrand(interp), u);

        ++law.cases;
        if (!(via_tables == via_oracle))
            record_failure(law, show_program(p) + "interpretation:\n" +
                                    render_interpretation(interp, Format::records));
    }
    return law;
}

LawOutcome run_fixpoint_law(const LawConfig& config) {
    LawOutcome law{"least-fixpoint"};
    Rng rng(config.seed + 3);
    for (long n = 0; n < config.semantics_cases(); ++n) {
        ProceduralProgram p = random_program(rng);
        Universe u = program_universe(rng, config.max_depth, p);
        int bound = static_cast<int>(herbrand_base_bound(p, u));

        FixpointReport m = lfp_M(p, u, bound);
        HerbrandFixpointReport t = lfp_T(to_clausal(p), u, bound);

        ++law.cases;
        bool ok = m.converged && t.converged &&
                  correspond(t.result, m.result, u.signature);
        if (!ok) record_failure(law, show_program(p));
    }
    return law;
}

LawOutcome run_renaming_law(const LawConfig& config) {
    LawOutcome law{"renaming-invariance"};
    Rng rng(config.seed + 4);
    for (long n = 0; n < config.renaming_cases(); ++n) {
        ProceduralProgram p = random_program(rng);
        Universe u = program_universe(rng, config.max_depth, p);

        std::vector<std::string> symbols;
        for (const auto& [sym, _] : p.procedures) symbols.push_back(sym);
        std::map<std::string, std::string> rho;
        if (rng.chance(50)) {
            std::vector<std::string> shuffled = symbols;
            for (std::size_t i = shuffled.size(); i > 1; --i)
                std::swap(shuffled[i - 1], shuffled[rng.pick(i)]);
            for (std::size_t i = 0; i < symbols.size(); ++i) rho[symbols[i]] = shuffled[i];
        } else {
            for (std::size_t i = 0; i < symbols.size(); ++i)
                rho[symbols[i]] = "fresh" + std::to_string(i);
        }

        int bound = static_cast<int>(herbrand_base_bound(p, u));
        FixpointReport original = lfp_M(p, u, bound);
        FixpointReport renamed = lfp_M(rename_predicates(p, rho), u, bound);

        ++law.cases;
        bool ok = original.converged && renamed.converged;
        for (const auto& [sym, rel] : original.result.relations)
            ok = ok && renamed.result.relations.at(rho.at(sym)) == rel;
        if (!ok)
            record_failure(law, show_program(p));
    }
    return law;
}

std::vector<LawOutcome> run_all_laws(const LawConfig& config) {
    std::vector<LawOutcome> out = run_table_laws(config);
    out.push_back(run_table_cylinder_law(config));
    out.push_back(run_one_step_law(config));
    out.push_back(run_fixpoint_law(config));
    out.push_back(run_renaming_law(config));
    return out;
}

std::string render_law_summary(const std::vector<LawOutcome>& outcomes) {
    std::size_t width = 0;
    for (const LawOutcome& law : outcomes) width = std::max(width, law.name.size());
    std::string out;
    bool all_ok = true;
    for (const LawOutcome& law : outcomes) {
        all_ok = all_ok && law.ok();
        std::string line = "law " + law.name;
        line.append(width - law.name.size() + 2, ' ');
        line += "cases=" + std::to_string(law.cases);
        line += " failures=" + std::to_string(law.failures);
        if (law.skipped > 0) line += " skipped=" + std::to_string(law.skipped);
        out += line + "\n";
        for (const std::string& cx : law.counterexamples)
            out += "counterexample (" + law.name + "):\n" + cx;
    }
    out += std::string("result: ") + (all_ok ? "PASS" : "FAIL") + "\n";
    return out;
}

}  // namespace tabsem
