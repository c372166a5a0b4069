#pragma once

#include <string>

#include "tabsem/relation.hpp"
#include "tabsem/semantics.hpp"
#include "tabsem/syntax.hpp"
#include "tabsem/table.hpp"

namespace tabsem {

enum class Format { pretty, records };

/// Transposed layout: one row per index variable, one column per tuple
/// (pretty), or one sorted `var=term` record line per tuple (records).
/// The null table renders as "bottom" / no records, the unit table as
/// "top" / "()".
std::string render_table(const Table& t, Format f);

/// Transposed layout with integer index rows (pretty), or one `(t0,...)`
/// line per tuple (records).
std::string render_relation(const IntRelation& r, Format f);

/// `symbol/arity:` blocks with one indented tuple line each, sorted.
std::string render_interpretation(const RelationalInterpretation& ri, Format f);

std::string render_fixpoint_report(const FixpointReport& r, int depth_bound, int max_iters,
                                   Format f);

std::string to_string(const Call& c);
std::string to_string(const Body& goal);

/// Prints a program back as parseable source, one clause per line in
/// canonical order. parse_program of the result reproduces the program.
std::string render_program(const ProceduralProgram& p);

/// Answer rendering for queries: "no" for the null table, "yes" for the unit
/// table, the transposed table otherwise.
std::string render_answers(const Table& answers, Format f);

/// Reads a relation from dump format: one parenthesized ground tuple per
/// line, `%` comments and blank lines ignored. The order is taken from the
/// first tuple unless expected_order >= 0.
IntRelation parse_relation_text(const std::string& text, int expected_order = -1);

IntRelation load_relation_file(const std::string& path, int expected_order = -1);

}  // namespace tabsem
