#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tabsem/semantics.hpp"
#include "tabsem/syntax.hpp"
#include "tabsem/table.hpp"

namespace tabsem {

/// Deterministic source of randomness for the law suite. Only the raw
/// mt19937_64 stream is used (no standard distributions), so a fixed seed
/// reproduces the same instances everywhere.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t next() { return eng_(); }
    std::size_t pick(std::size_t n) { return n == 0 ? 0 : next() % n; }
    bool chance(int percent) { return pick(100) < static_cast<std::size_t>(percent); }

private:
    std::mt19937_64 eng_;
};

struct LawConfig {
    std::uint64_t seed = 42;
    long cases = 500;   // table-law case count; the heavier suites scale down from it
    int max_depth = 2;  // cap on the universe depth bound

    long cylinder_cases() const { return std::max(1L, cases * 2 / 5); }
    long semantics_cases() const { return std::max(1L, cases * 2 / 5); }
    long renaming_cases() const { return std::max(1L, cases / 10); }
};

struct LawOutcome {
    std::string name;
    long cases = 0;
    long failures = 0;
    long skipped = 0;  // clipped instances of the exactness law
    std::vector<std::string> counterexamples;

    LawOutcome() = default;
    explicit LawOutcome(std::string name) : name(std::move(name)) {}

    bool ok() const { return failures == 0; }
};

// Generators (shared with the tests).
Universe random_law_universe(Rng& rng, int max_depth);
Term random_ground_term(Rng& rng, const Universe& u);
Table random_table(Rng& rng, const Universe& u, int max_vars, bool ground_rows_only);
IntRelation random_relation(Rng& rng, const Universe& u, int order, int max_rows);
/// Tuple whose variable set is exactly `cover`.
TermTuple random_param_tuple(Rng& rng, const Universe& u, const std::set<Variable>& cover);
ProceduralProgram random_program(Rng& rng);
RelationalInterpretation random_interpretation(Rng& rng, const Universe& u,
                                               const ProceduralProgram& p);

using ProductFn = std::function<Table(const Table&, const Table&)>;

/// Product laws, the grounding-equivalence of squares, and the
/// projection/filtering inverse theorems. The product operation is
/// injectable so the failure path stays testable.
std::vector<LawOutcome> run_table_laws(const LawConfig& config, const ProductFn& prod);
std::vector<LawOutcome> run_table_laws(const LawConfig& config);

/// Grounding of a product equals the projected intersection of cylinders.
LawOutcome run_table_cylinder_law(const LawConfig& config);

/// One application of the meaning function corresponds to one step of the
/// immediate-consequence operator.
LawOutcome run_one_step_law(const LawConfig& config);

/// Both least fixpoints converge on the truncated lattice and correspond.
LawOutcome run_fixpoint_law(const LawConfig& config);

/// Fixpoints commute with predicate renaming.
LawOutcome run_renaming_law(const LawConfig& config);

std::vector<LawOutcome> run_all_laws(const LawConfig& config);

std::string render_law_summary(const std::vector<LawOutcome>& outcomes);

}  // namespace tabsem
