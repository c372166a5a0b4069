#pragma once

#include <vector>

#include "tabsem/relation.hpp"
#include "tabsem/syntax.hpp"
#include "tabsem/table.hpp"

namespace tabsem {

/// Everything a meaning evaluation depends on: the relational interpretation
/// read by calls, the truncated universe, and the program itself.
struct EvalContext {
    RelationalInterpretation interp;
    Universe universe;
    ProceduralProgram program;
};

/// Value of a call: the interpretation's relation filtered by the arguments.
Table eval_call(const EvalContext& ctx, const Call& c);

/// Value of a body: the product of its calls' tables; empty bodies are unit.
Table eval_body(const EvalContext& ctx, const Body& b);

/// Value of a clause: the body table projected on the parameter tuple.
IntRelation eval_clause(const EvalContext& ctx, const Clause& cl);

/// Value of a procedure: the union of its clauses' relations.
IntRelation eval_procedure(const EvalContext& ctx, const Procedure& proc);

/// The full meaning function: one relation per procedure symbol.
RelationalInterpretation eval_program(const EvalContext& ctx);

/// Immediate-consequence operator over the truncated universe: all clause
/// head instances whose body instances are in i, with heads outside the
/// depth bound discarded. Implemented by direct ground matching against i,
/// sharing nothing with the table algebra; serves as the independent oracle.
HerbrandInterpretation tp_step(const ClausalSentence& s, const HerbrandInterpretation& i,
                               const Universe& u);

struct FixpointReport {
    RelationalInterpretation result;
    int iterations = 0;
    bool converged = false;
    std::vector<long> sizes;  // total tuples of each iterate, starting at I0
};

struct HerbrandFixpointReport {
    HerbrandInterpretation result;
    int iterations = 0;
    bool converged = false;
    std::vector<long> sizes;
};

/// Iterates the meaning function from the all-empty interpretation until it
/// repeats or max_iters is reached. Relations in *external stay pinned to
/// their initial value (their symbols must name procedures of the program,
/// normally empty ones).
FixpointReport lfp_M(const ProceduralProgram& p, const Universe& u, int max_iters,
                     const RelationalInterpretation* external = nullptr);

/// Same iteration over the immediate-consequence operator.
HerbrandFixpointReport lfp_T(const ClausalSentence& s, const Universe& u, int max_iters,
                             const HerbrandInterpretation* external = nullptr);

struct QueryResult {
    Table answers;
    bool converged = false;
    int iterations = 0;
};

/// Evaluates the goal body against the least fixpoint of the program. The
/// answer table is indexed by the goal's variables.
QueryResult query(const ProceduralProgram& p, const Body& goal, const Universe& u, int max_iters,
                  const RelationalInterpretation* external = nullptr);

}  // namespace tabsem
