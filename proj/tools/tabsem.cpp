// tabsem: bottom-up evaluation of pure Prolog through the table algebra.
//
// Subcommands:
//   fixpoint    compute the least fixpoint of a program and print every relation
//   query       answer a goal against the least fixpoint
//   check-laws  run the randomized algebraic law suite
//   example     replay the built-in worked example end to end

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tabsem/laws.hpp"
#include "tabsem/render.hpp"
#include "tabsem/semantics.hpp"
#include "tabsem/syntax.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitNotConverged = 2;
constexpr int kExitLawViolation = 3;

struct ProgramOptions {
    std::string file;
    int depth = 2;
    int max_iters = 200;
    std::vector<std::string> externs;  // symbol=path
    std::string format = "pretty";
};

tabsem::Format parse_format(const std::string& name) {
    if (name == "records") return tabsem::Format::records;
    return tabsem::Format::pretty;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

struct LoadedProgram {
    tabsem::ClausalSentence sentence;
    tabsem::ProceduralProgram program;
    tabsem::Signature signature;
    tabsem::RelationalInterpretation external;
    bool has_external = false;

    tabsem::Universe universe(int depth) const {
        if (signature.constants.empty())
            throw std::invalid_argument(
                "the program mentions no constants, so the Herbrand universe is empty");
        for (const auto& [symbol, rel] : external.relations)
            for (const tabsem::TermTuple& t : rel.tuples)
                for (const tabsem::Term& term : t)
                    if (term.depth() > depth)
                        throw std::invalid_argument(
                            "extern tuple exceeds depth bound " + std::to_string(depth) + ": " +
                            tabsem::to_string(term) + " (in " + symbol + ")");
        return tabsem::Universe{signature, depth};
    }
};

LoadedProgram load(const ProgramOptions& opt) {
    LoadedProgram out;
    std::vector<std::string> warnings;
    out.sentence = tabsem::parse_program(read_file(opt.file), &warnings);
    for (const std::string& w : warnings) std::cerr << "warning: " << w << "\n";
    out.program = tabsem::to_procedural(out.sentence);

    out.signature = tabsem::infer_signature(out.program);
    for (const std::string& binding : opt.externs) {
        std::size_t eq = binding.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--extern expects symbol=file, got: " + binding);
        std::string symbol = binding.substr(0, eq);
        std::string path = binding.substr(eq + 1);

        int expected = -1;
        if (out.program.defines(symbol)) {
            if (!out.program.at(symbol).clauses.empty())
                throw std::invalid_argument("--extern target has clauses of its own: " + symbol);
            expected = out.program.at(symbol).arity;
        }
        tabsem::IntRelation rel = tabsem::load_relation_file(path, expected);
        if (!out.program.defines(symbol)) {
            out.program.procedures.emplace(symbol, tabsem::Procedure(rel.order, {}));
            out.signature.predicates.emplace(symbol, rel.order);
        }
        for (const tabsem::TermTuple& t : rel.tuples)
            for (const tabsem::Term& term : t) tabsem::harvest_term_symbols(term, out.signature);
        out.external.relations.emplace(symbol, std::move(rel));
        out.has_external = true;
    }
    return out;
}

int cmd_fixpoint(const ProgramOptions& opt) {
    LoadedProgram loaded = load(opt);
    tabsem::FixpointReport report =
        tabsem::lfp_M(loaded.program, loaded.universe(opt.depth), opt.max_iters,
                      loaded.has_external ? &loaded.external : nullptr);
    std::cout << tabsem::render_fixpoint_report(report, opt.depth, opt.max_iters,
                                                parse_format(opt.format));
    return report.converged ? kExitOk : kExitNotConverged;
}

int cmd_query(const ProgramOptions& opt, const std::string& goal_text) {
    LoadedProgram loaded = load(opt);
    tabsem::Body goal = tabsem::parse_goal(goal_text);
    // Goal terms may mention constants the program does not; they belong to
    // the universe of the query.
    for (const tabsem::Call& call : goal.calls)
        for (const tabsem::Term& t : call.args) tabsem::harvest_term_symbols(t, loaded.signature);
    tabsem::QueryResult result =
        tabsem::query(loaded.program, goal, loaded.universe(opt.depth), opt.max_iters,
                      loaded.has_external ? &loaded.external : nullptr);
    std::cout << "goal: " << tabsem::to_string(goal) << "\n";
    std::cout << "depth: " << opt.depth << "\n";
    std::cout << "converged: " << (result.converged ? "yes" : "no") << "\n";
    std::cout << "answers: " << result.answers.tuples().size() << "\n";
    std::cout << tabsem::render_answers(result.answers, parse_format(opt.format));
    return result.converged ? kExitOk : kExitNotConverged;
}

int cmd_check_laws(std::uint64_t seed, long cases, int depth) {
    tabsem::LawConfig config;
    config.seed = seed;
    config.cases = cases;
    config.max_depth = depth;
    std::cout << "check-laws seed=" << config.seed << " cases=" << config.cases
              << " depth=" << config.max_depth << "\n";
    std::vector<tabsem::LawOutcome> outcomes = tabsem::run_all_laws(config);
    std::cout << tabsem::render_law_summary(outcomes);
    for (const tabsem::LawOutcome& law : outcomes)
        if (!law.ok()) return kExitLawViolation;
    return kExitOk;
}

// The worked example: relation p filtered by two calls, their product, and
// the projection on the clause's parameter tuple.
int cmd_example() {
    using tabsem::Term;
    auto a = Term::make("a");
    auto b = Term::make("b");
    auto f = [](Term t) { return Term::make("f", {std::move(t)}); };
    auto X = Term::var("X");
    auto Y = Term::var("Y");
    auto Z = Term::var("Z");

    tabsem::IntRelation p(2, {{a, f(b)}, {f(a), b}, {f(a), f(b)}, {f(b), f(a)}});
    tabsem::Universe u{tabsem::Signature{{"a", "b"}, {{"f", 1}}, {{"p", 2}}}, 2};

    tabsem::TermTuple call0{X, f(Y)};
    tabsem::TermTuple call1{f(X), Z};
    tabsem::TermTuple params{f(Y), Z};

    tabsem::Table t0 = tabsem::filter(p, call0);
    tabsem::Table t1 = tabsem::filter(p, call1);
    tabsem::Table body = tabsem::product(t0, t1);
    tabsem::IntRelation clause = tabsem::project(params, body, u);

    std::cout << "clause: (f(Y),Z) :- p(X,f(Y)), p(f(X),Z)\n";
    std::cout << "depth: " << u.depth_bound << "\n\n";
    std::cout << "relation p/2\n" << tabsem::render_relation(p, tabsem::Format::pretty) << "\n";
    std::cout << "call p(X,f(Y))\n" << tabsem::render_table(t0, tabsem::Format::pretty) << "\n";
    std::cout << "call p(f(X),Z)\n" << tabsem::render_table(t1, tabsem::Format::pretty) << "\n";
    std::cout << "body p(X,f(Y)), p(f(X),Z)\n"
              << tabsem::render_table(body, tabsem::Format::pretty) << "\n";
    std::cout << "clause value (f(Y),Z) / body\n"
              << tabsem::render_relation(clause, tabsem::Format::pretty);
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Compositional table-algebra semantics for pure Prolog"};
    app.require_subcommand(1);

    ProgramOptions fixpoint_opt;
    CLI::App* fixpoint = app.add_subcommand("fixpoint", "Compute the least fixpoint of a program");
    fixpoint->add_option("file", fixpoint_opt.file, "program file")->required();
    fixpoint->add_option("--depth", fixpoint_opt.depth, "Herbrand depth bound (semantics-affecting)")
        ->check(CLI::NonNegativeNumber);
    fixpoint->add_option("--max-iters", fixpoint_opt.max_iters, "iteration cap")
        ->check(CLI::PositiveNumber);
    fixpoint->add_option("--extern", fixpoint_opt.externs, "bind symbol=file to a relation dump");
    fixpoint->add_option("--format", fixpoint_opt.format, "pretty|records")
        ->check(CLI::IsMember({"pretty", "records"}));

    ProgramOptions query_opt;
    std::string goal_text;
    CLI::App* query = app.add_subcommand("query", "Answer a goal against the least fixpoint");
    query->add_option("file", query_opt.file, "program file")->required();
    query->add_option("goal", goal_text, "goal body, e.g. \"mem(X,[a,b])\"")->required();
    query->add_option("--depth", query_opt.depth, "Herbrand depth bound (semantics-affecting)")
        ->check(CLI::NonNegativeNumber);
    query->add_option("--max-iters", query_opt.max_iters, "iteration cap")
        ->check(CLI::PositiveNumber);
    query->add_option("--extern", query_opt.externs, "bind symbol=file to a relation dump");
    query->add_option("--format", query_opt.format, "pretty|records")
        ->check(CLI::IsMember({"pretty", "records"}));

    std::uint64_t seed = 42;
    long cases = 500;
    int law_depth = 2;
    CLI::App* laws = app.add_subcommand("check-laws", "Run the randomized algebraic law suite");
    laws->add_option("--seed", seed, "random seed");
    laws->add_option("--cases", cases, "table-law case count")->check(CLI::PositiveNumber);
    laws->add_option("--depth", law_depth, "max universe depth bound")
        ->check(CLI::NonNegativeNumber);

    app.add_subcommand("example", "Replay the built-in worked example");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (app.got_subcommand("fixpoint")) return cmd_fixpoint(fixpoint_opt);
        if (app.got_subcommand("query")) return cmd_query(query_opt, goal_text);
        if (app.got_subcommand("check-laws")) return cmd_check_laws(seed, cases, law_depth);
        if (app.got_subcommand("example")) return cmd_example();
    } catch (const tabsem::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
