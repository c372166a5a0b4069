#include "tabsem/syntax.hpp"

#include "doctest.h"
#include "tabsem/laws.hpp"
#include "tabsem/render.hpp"

using namespace tabsem;

namespace {

Term c(const std::string& name) { return Term::make(name); }
Term V(const std::string& name) { return Term::var(name); }
Term cons(Term h, Term t) { return Term::make(".", {std::move(h), std::move(t)}); }

const char* kAppendSource =
    "app(nil, Y, Y).\n"
    "app('.'(U, X), Y, '.'(U, Z)) :- app(X, Y, Z).\n"
    "mem(X, Y) :- app(U, '.'(X, V), Y).\n";

}  // namespace

TEST_CASE("facts and rules parse") {
    ClausalSentence s = parse_program("app(nil,Y,Y).");
    REQUIRE(s.clauses.size() == 1);
    const HornClause& fact = *s.clauses.begin();
    CHECK(fact.head == Atom{"app", {c("nil"), V("Y"), V("Y")}});
    CHECK(fact.body.empty());

    ClausalSentence rule = parse_program("mem(X,Y) :- app(U,'.'(X,V),Y).");
    REQUIRE(rule.clauses.size() == 1);
    const HornClause& r = *rule.clauses.begin();
    CHECK(r.head == Atom{"mem", {V("X"), V("Y")}});
    REQUIRE(r.body.size() == 1);
    CHECK(*r.body.begin() == Atom{"app", {V("U"), cons(V("X"), V("V")), V("Y")}});
}

TEST_CASE("list sugar expands to the pair functor") {
    ClausalSentence s = parse_program("p([]). q([a,b]). r([H|T]).");
    ProceduralProgram prog = to_procedural(s);
    CHECK(prog.at("p").clauses.begin()->params == TermTuple{c("nil")});
    CHECK(prog.at("q").clauses.begin()->params ==
          TermTuple{cons(c("a"), cons(c("b"), c("nil")))});
    CHECK(prog.at("r").clauses.begin()->params == TermTuple{cons(V("H"), V("T"))});
}

TEST_CASE("each bare underscore is a fresh variable") {
    ClausalSentence s = parse_program("p(_, _, _G1).");
    const HornClause& clause = *s.clauses.begin();
    std::set<Variable> vars = variables_of(clause.head.args);
    CHECK(vars.size() == 3);  // the two _ differ from each other and from _G1
    CHECK(vars.count(Variable{"_G1"}));
}

TEST_CASE("syntax errors carry positions") {
    try {
        parse_program("p(a).\nq(a,.\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.pos.line == 2);
        CHECK(doctest::String(e.what()).size() > 0);
    }

    CHECK_THROWS_AS(parse_program("p(a)"), ParseError);           // missing dot
    CHECK_THROWS_AS(parse_program("p(a) :- ."), ParseError);      // empty body
    CHECK_THROWS_AS(parse_program("'unterminated."), ParseError);
    CHECK_THROWS_AS(parse_program("p(1)."), ParseError);          // no numerals in the language
}

TEST_CASE("arity conflicts are their own error") {
    CHECK_THROWS_AS(parse_program("p(X) :- q(X,Y). q(a,b). q(a,b,c)."), ArityConflictError);
    CHECK_THROWS_AS(parse_program("p(f(a), f(a,b))."), ArityConflictError);
    // also via the quoted functor
    CHECK_THROWS_AS(parse_program("p('.'(a)). q('.'(a,b))."), ArityConflictError);
}

TEST_CASE("bodies are sets; duplicates collapse with a warning") {
    std::vector<std::string> warnings;
    ClausalSentence s = parse_program("p(X) :- q(X), q(X).\np(X) :- q(X), q(X).", &warnings);
    REQUIRE(s.clauses.size() == 1);
    CHECK(s.clauses.begin()->body.size() == 1);
    CHECK(warnings.size() >= 2);  // duplicate atom + duplicate clause
}

TEST_CASE("clause and body order are irrelevant") {
    ClausalSentence a = parse_program("p(X) :- q(X), r(X). s(a). ");
    ClausalSentence b = parse_program("s(a). p(X) :- r(X), q(X).");
    CHECK(to_procedural(a) == to_procedural(b));
}

TEST_CASE("the append program converts to the expected procedures") {
    ProceduralProgram p = to_procedural(parse_program(kAppendSource));
    REQUIRE(p.procedures.size() == 2);

    const Procedure& app = p.at("app");
    CHECK(app.arity == 3);
    CHECK(app.clauses.size() == 2);
    CHECK(app.clauses.count(Clause{{c("nil"), V("Y"), V("Y")}, {}}));
    Body rec_body;
    rec_body.calls.insert(Call{"app", {V("X"), V("Y"), V("Z")}});
    CHECK(app.clauses.count(
        Clause{{cons(V("U"), V("X")), V("Y"), cons(V("U"), V("Z"))}, rec_body}));

    const Procedure& mem = p.at("mem");
    CHECK(mem.arity == 2);
    REQUIRE(mem.clauses.size() == 1);
    CHECK(mem.clauses.begin()->body.calls.size() == 1);
}

TEST_CASE("clausal and procedural forms are mutually inverse") {
    ClausalSentence s = parse_program(kAppendSource);
    CHECK(to_clausal(to_procedural(s)) == s);

    CHECK(to_procedural(ClausalSentence{}) == ProceduralProgram{});

    // Clausal text can only mention occurring symbols, so the roundtrip
    // reconstructs the program restricted to those.
    Rng rng(41);
    for (int n = 0; n < 50; ++n) {
        ProceduralProgram p = random_program(rng);
        std::set<std::string> occurring;
        for (const auto& [sym, proc] : p.procedures) {
            if (!proc.clauses.empty()) occurring.insert(sym);
            for (const Clause& cl : proc.clauses)
                for (const Call& call : cl.body.calls) occurring.insert(call.symbol);
        }
        ProceduralProgram expected;
        for (const std::string& sym : occurring)
            expected.procedures.emplace(sym, p.at(sym));
        CHECK(to_procedural(to_clausal(p)) == expected);
    }
}

TEST_CASE("parsing a printed program reproduces it") {
    ClausalSentence append = parse_program(kAppendSource);
    CHECK(parse_program(render_program(to_procedural(append))) == append);

    Rng rng(47);
    for (int n = 0; n < 50; ++n) {
        ClausalSentence s = to_clausal(random_program(rng));
        CHECK(parse_program(render_program(to_procedural(s))) == s);
    }
}

TEST_CASE("called-but-undefined symbols denote the empty procedure") {
    ProceduralProgram p = to_procedural(parse_program("reach(X) :- edge(a, X)."));
    REQUIRE(p.defines("edge"));
    CHECK(p.at("edge").arity == 2);
    CHECK(p.at("edge").clauses.empty());
    p.validate();
}

TEST_CASE("signature inference harvests terms and procedure symbols") {
    ProceduralProgram p = to_procedural(parse_program(kAppendSource));
    Signature sig = infer_signature(p);
    CHECK(sig.constants == std::set<std::string>{"nil"});
    CHECK(sig.functions == std::map<std::string, int>{{".", 2}});
    CHECK(sig.predicates == std::map<std::string, int>{{"app", 3}, {"mem", 2}});

    CHECK(infer_signature(ProceduralProgram{}) == Signature{});

    ProceduralProgram q = to_procedural(parse_program("p(f(a, g(b)))."));
    Signature qs = infer_signature(q);
    CHECK(qs.constants == std::set<std::string>{"a", "b"});
    CHECK(qs.functions == std::map<std::string, int>{{"f", 2}, {"g", 1}});
}

TEST_CASE("predicate renaming") {
    ProceduralProgram p = to_procedural(parse_program(kAppendSource));

    std::map<std::string, std::string> identity{{"app", "app"}, {"mem", "mem"}};
    CHECK(rename_predicates(p, identity) == p);

    std::map<std::string, std::string> swap{{"app", "mem"}, {"mem", "app"}};
    CHECK(rename_predicates(rename_predicates(p, swap), swap) == p);

    std::map<std::string, std::string> renamed{{"app", "conc"}, {"mem", "elem"}};
    ProceduralProgram q = rename_predicates(p, renamed);
    CHECK(q.defines("conc"));
    CHECK(q.at("conc").clauses.size() == 2);
    for (const Clause& cl : q.at("elem").clauses)
        for (const Call& call : cl.body.calls) CHECK(call.symbol == "conc");

    CHECK_THROWS_AS(rename_predicates(p, {{"app", "x"}}), std::invalid_argument);
    CHECK_THROWS_AS(rename_predicates(p, {{"app", "x"}, {"mem", "x"}}),
                    std::invalid_argument);
}

TEST_CASE("goals and standalone terms parse") {
    Body goal = parse_goal("app(X, Y, '.'(a, nil)), mem(X, Y)");
    CHECK(goal.calls.size() == 2);

    CHECK(parse_term_text("f(X, [a])") ==
          Term::make("f", {V("X"), cons(c("a"), c("nil"))}));
    CHECK(parse_tuple_text("(a, f(b))") == TermTuple{c("a"), Term::make("f", {c("b")})});
    CHECK(parse_tuple_text("()").empty());
    CHECK_THROWS_AS(parse_term_text("f(a) extra"), ParseError);
}

TEST_CASE("quoted names roundtrip through printing") {
    Term t = parse_term_text("'.'(a, 'odd name'(b))");
    CHECK(to_string(t) == "'.'(a,'odd name'(b))");
    CHECK(parse_term_text(to_string(t)) == t);

    Term quoted_quote = parse_term_text("'it''s'");
    CHECK(quoted_quote.symbol() == "it's");
    CHECK(parse_term_text(to_string(quoted_quote)) == quoted_quote);
}
