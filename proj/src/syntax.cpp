#include "tabsem/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <utility>

namespace tabsem {

Procedure::Procedure(int arity, std::set<Clause> clauses)
    : arity(arity), clauses(std::move(clauses)) {
    if (arity < 0) throw std::invalid_argument("procedure arity must be >= 0");
    for (const Clause& c : this->clauses)
        if (static_cast<int>(c.params.size()) != arity)
            throw std::invalid_argument("clause parameter tuple does not match procedure arity");
}

const Procedure& ProceduralProgram::at(const std::string& symbol) const {
    auto it = procedures.find(symbol);
    if (it == procedures.end())
        throw std::invalid_argument("unknown procedure symbol: " + symbol);
    return it->second;
}

void ProceduralProgram::validate() const {
    for (const auto& [sym, proc] : procedures) {
        for (const Clause& c : proc.clauses) {
            for (const Call& call : c.body.calls) {
                auto it = procedures.find(call.symbol);
                if (it == procedures.end())
                    throw std::invalid_argument("call to unknown procedure: " + call.symbol);
                if (it->second.arity != static_cast<int>(call.args.size()))
                    throw std::invalid_argument("call arity mismatch for: " + call.symbol);
            }
        }
        (void)sym;
    }
}

ParseError::ParseError(SourcePos pos, const std::string& message)
    : std::runtime_error("line " + std::to_string(pos.line) + ", column " +
                         std::to_string(pos.column) + ": " + message),
      pos(pos) {}

namespace {

enum class Tok { name, variable, lparen, rparen, comma, dot, neck, lbracket, rbracket, pipe, end };

struct Token {
    Tok kind;
    std::string text;
    SourcePos pos;
};

bool name_start(char c) { return c >= 'a' && c <= 'z'; }
bool var_start(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }
bool ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}

std::vector<Token> tokenize(std::string_view text) {
    std::vector<Token> out;
    SourcePos pos;
    std::size_t i = 0;
    auto advance = [&]() {
        if (text[i] == '\n') {
            ++pos.line;
            pos.column = 1;
        } else {
            ++pos.column;
        }
        ++i;
    };

    while (i < text.size()) {
        char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            advance();
            continue;
        }
        if (c == '%') {
            while (i < text.size() && text[i] != '\n') advance();
            continue;
        }
        SourcePos start = pos;
        if (name_start(c)) {
            std::string s;
            while (i < text.size() && ident_char(text[i])) {
                s += text[i];
                advance();
            }
            out.push_back({Tok::name, std::move(s), start});
            continue;
        }
        if (var_start(c)) {
            std::string s;
            while (i < text.size() && ident_char(text[i])) {
                s += text[i];
                advance();
            }
            out.push_back({Tok::variable, std::move(s), start});
            continue;
        }
        if (c == '\'') {
            advance();
            std::string s;
            bool closed = false;
            while (i < text.size()) {
                if (text[i] == '\'') {
                    if (i + 1 < text.size() && text[i + 1] == '\'') {
                        s += '\'';
                        advance();
                        advance();
                        continue;
                    }
                    advance();
                    closed = true;
                    break;
                }
                s += text[i];
                advance();
            }
            if (!closed) throw ParseError(start, "unterminated quoted name");
            if (s.empty()) throw ParseError(start, "empty quoted name");
            out.push_back({Tok::name, std::move(s), start});
            continue;
        }
        if (c == ':') {
            if (i + 1 < text.size() && text[i + 1] == '-') {
                advance();
                advance();
                out.push_back({Tok::neck, ":-", start});
                continue;
            }
            throw ParseError(start, "unexpected character ':'");
        }
        if (c == '.') {
            // A clause-terminating dot must be followed by layout or a comment.
            char next = i + 1 < text.size() ? text[i + 1] : '\n';
            if (next == ' ' || next == '\t' || next == '\r' || next == '\n' || next == '%') {
                advance();
                out.push_back({Tok::dot, ".", start});
                continue;
            }
            throw ParseError(start, "'.' here must end a clause (quote '.' to use it as a functor)");
        }
        switch (c) {
            case '(': out.push_back({Tok::lparen, "(", start}); advance(); continue;
            case ')': out.push_back({Tok::rparen, ")", start}); advance(); continue;
            case ',': out.push_back({Tok::comma, ",", start}); advance(); continue;
            case '[': out.push_back({Tok::lbracket, "[", start}); advance(); continue;
            case ']': out.push_back({Tok::rbracket, "]", start}); advance(); continue;
            case '|': out.push_back({Tok::pipe, "|", start}); advance(); continue;
            default: break;
        }
        throw ParseError(start, std::string("unexpected character '") + c + "'");
    }
    out.push_back({Tok::end, "", pos});
    return out;
}

class Parser {
public:
    explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {
        for (const Token& t : tokens_)
            if (t.kind == Tok::variable) used_var_names_.insert(t.text);
    }

    const Token& peek() const { return tokens_[i_]; }
    Token take() { return tokens_[i_++]; }

    Token expect(Tok kind, const std::string& what) {
        if (peek().kind != kind)
            throw ParseError(peek().pos, "expected " + what);
        return take();
    }

    bool at_end() const { return peek().kind == Tok::end; }

    Term parse_term() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::variable: {
                Token v = take();
                if (v.text == "_") return Term::var(fresh_var_name());
                return Term::var(v.text);
            }
            case Tok::name: {
                Token n = take();
                std::vector<Term> args;
                if (peek().kind == Tok::lparen) {
                    take();
                    args.push_back(parse_term());
                    while (peek().kind == Tok::comma) {
                        take();
                        args.push_back(parse_term());
                    }
                    expect(Tok::rparen, "')'");
                    if (args.empty()) throw ParseError(n.pos, "empty argument list");
                }
                note_functor(n.text, static_cast<int>(args.size()), n.pos);
                return Term::make(n.text, std::move(args));
            }
            case Tok::lbracket: return parse_list();
            default: throw ParseError(t.pos, "expected a term");
        }
    }

    Term parse_list() {
        Token open = expect(Tok::lbracket, "'['");
        if (peek().kind == Tok::rbracket) {
            take();
            note_functor("nil", 0, open.pos);
            return Term::make("nil");
        }
        std::vector<Term> items;
        items.push_back(parse_term());
        while (peek().kind == Tok::comma) {
            take();
            items.push_back(parse_term());
        }
        Term tail = Term::make("nil");
        if (peek().kind == Tok::pipe) {
            take();
            tail = parse_term();
        } else {
            note_functor("nil", 0, open.pos);
        }
        expect(Tok::rbracket, "']'");
        note_functor(".", 2, open.pos);
        for (auto it = items.rbegin(); it != items.rend(); ++it)
            tail = Term::make(".", {*it, tail});
        return tail;
    }

    Atom parse_atom() {
        Token n = expect(Tok::name, "a predicate name");
        TermTuple args;
        if (peek().kind == Tok::lparen) {
            take();
            args.push_back(parse_term());
            while (peek().kind == Tok::comma) {
                take();
                args.push_back(parse_term());
            }
            expect(Tok::rparen, "')'");
        }
        note_predicate(n.text, static_cast<int>(args.size()), n.pos);
        return Atom{n.text, std::move(args)};
    }

    HornClause parse_clause(std::vector<std::string>* warnings) {
        Atom head = parse_atom();
        std::set<Atom> body;
        if (peek().kind == Tok::neck) {
            take();
            while (true) {
                SourcePos at = peek().pos;
                Atom a = parse_atom();
                if (!body.insert(a).second && warnings)
                    warnings->push_back("line " + std::to_string(at.line) +
                                       ": duplicate body atom collapses (bodies are sets)");
                if (peek().kind != Tok::comma) break;
                take();
            }
        }
        expect(Tok::dot, "'.' at end of clause");
        return HornClause{std::move(head), std::move(body)};
    }

private:
    std::string fresh_var_name() {
        while (true) {
            std::string candidate = "_G" + std::to_string(fresh_counter_++);
            if (!used_var_names_.count(candidate)) return candidate;
        }
    }

    void note_functor(const std::string& name, int arity, SourcePos pos) {
        auto [it, inserted] = functor_arity_.emplace(name, arity);
        if (!inserted && it->second != arity)
            throw ArityConflictError(
                pos, "functor '" + name + "' used with arity " + std::to_string(arity) +
                         " but previously with arity " + std::to_string(it->second));
    }

    void note_predicate(const std::string& name, int arity, SourcePos pos) {
        auto [it, inserted] = pred_arity_.emplace(name, arity);
        if (!inserted && it->second != arity)
            throw ArityConflictError(
                pos, "predicate '" + name + "' used with arity " + std::to_string(arity) +
                         " but previously with arity " + std::to_string(it->second));
    }

    std::vector<Token> tokens_;
    std::size_t i_ = 0;
    std::set<std::string> used_var_names_;
    std::map<std::string, int> functor_arity_;
    std::map<std::string, int> pred_arity_;
    int fresh_counter_ = 1;
};

}  // namespace

ClausalSentence parse_program(std::string_view text, std::vector<std::string>* warnings) {
    Parser p(tokenize(text));
    ClausalSentence out;
    while (!p.at_end()) {
        HornClause c = p.parse_clause(warnings);
        if (!out.clauses.insert(c).second && warnings)
            warnings->push_back("duplicate clause for '" + c.head.pred +
                                "' collapses (programs are clause sets)");
    }
    return out;
}

Term parse_term_text(std::string_view text) {
    Parser p(tokenize(text));
    Term t = p.parse_term();
    if (!p.at_end()) throw ParseError(p.peek().pos, "trailing input after term");
    return t;
}

TermTuple parse_tuple_text(std::string_view text) {
    Parser p(tokenize(text));
    p.expect(Tok::lparen, "'('");
    TermTuple out;
    if (p.peek().kind != Tok::rparen) {
        out.push_back(p.parse_term());
        while (p.peek().kind == Tok::comma) {
            p.take();
            out.push_back(p.parse_term());
        }
    }
    p.expect(Tok::rparen, "')'");
    if (!p.at_end()) throw ParseError(p.peek().pos, "trailing input after tuple");
    return out;
}

Body parse_goal(std::string_view text) {
    Parser p(tokenize(text));
    Body out;
    Atom a = p.parse_atom();
    out.calls.insert(Call{a.pred, a.args});
    while (p.peek().kind == Tok::comma) {
        p.take();
        Atom next = p.parse_atom();
        out.calls.insert(Call{next.pred, next.args});
    }
    if (!p.at_end()) throw ParseError(p.peek().pos, "trailing input after goal");
    return out;
}

ProceduralProgram to_procedural(const ClausalSentence& s) {
    std::map<std::string, int> arities;
    auto note = [&](const std::string& sym, int arity) {
        auto [it, inserted] = arities.emplace(sym, arity);
        if (!inserted && it->second != arity)
            throw std::invalid_argument("arity conflict for procedure symbol: " + sym);
    };
    for (const HornClause& c : s.clauses) {
        note(c.head.pred, static_cast<int>(c.head.args.size()));
        for (const Atom& a : c.body) note(a.pred, static_cast<int>(a.args.size()));
    }

    ProceduralProgram out;
    for (const auto& [sym, arity] : arities) out.procedures.emplace(sym, Procedure(arity, {}));
    for (const HornClause& c : s.clauses) {
        Body body;
        for (const Atom& a : c.body) body.calls.insert(Call{a.pred, a.args});
        out.procedures.at(c.head.pred).clauses.insert(Clause{c.head.args, std::move(body)});
    }
    return out;
}

ClausalSentence to_clausal(const ProceduralProgram& p) {
    ClausalSentence out;
    for (const auto& [sym, proc] : p.procedures) {
        for (const Clause& c : proc.clauses) {
            HornClause hc;
            hc.head = Atom{sym, c.params};
            for (const Call& call : c.body.calls) hc.body.insert(Atom{call.symbol, call.args});
            out.clauses.insert(std::move(hc));
        }
    }
    return out;
}

void harvest_term_symbols(const Term& t, Signature& sig) {
    if (t.is_var()) return;
    if (t.args().empty()) {
        if (sig.functions.count(t.symbol()))
            throw std::invalid_argument("symbol used as constant and function: " + t.symbol());
        sig.constants.insert(t.symbol());
        return;
    }
    auto [it, inserted] = sig.functions.emplace(t.symbol(), static_cast<int>(t.args().size()));
    if (!inserted && it->second != static_cast<int>(t.args().size()))
        throw std::invalid_argument("function arity conflict: " + t.symbol());
    if (sig.constants.count(t.symbol()))
        throw std::invalid_argument("symbol used as constant and function: " + t.symbol());
    for (const Term& a : t.args()) harvest_term_symbols(a, sig);
}

Signature infer_signature(const ProceduralProgram& p) {
    Signature sig;
    for (const auto& [sym, proc] : p.procedures) {
        sig.predicates.emplace(sym, proc.arity);
        for (const Clause& c : proc.clauses) {
            for (const Term& t : c.params) harvest_term_symbols(t, sig);
            for (const Call& call : c.body.calls)
                for (const Term& t : call.args) harvest_term_symbols(t, sig);
        }
    }
    sig.validate();
    return sig;
}

ProceduralProgram rename_predicates(const ProceduralProgram& p,
                                    const std::map<std::string, std::string>& rho) {
    std::set<std::string> range;
    for (const auto& [sym, proc] : p.procedures) {
        auto it = rho.find(sym);
        if (it == rho.end())
            throw std::invalid_argument("renaming not total: missing " + sym);
        if (!range.insert(it->second).second)
            throw std::invalid_argument("renaming not injective at " + it->second);
        (void)proc;
    }

    ProceduralProgram out;
    for (const auto& [sym, proc] : p.procedures) {
        Procedure renamed;
        renamed.arity = proc.arity;
        for (const Clause& c : proc.clauses) {
            Body body;
            for (const Call& call : c.body.calls) {
                auto it = rho.find(call.symbol);
                if (it == rho.end())
                    throw std::invalid_argument("renaming not total: missing " + call.symbol);
                body.calls.insert(Call{it->second, call.args});
            }
            renamed.clauses.insert(Clause{c.params, std::move(body)});
        }
        out.procedures.emplace(rho.at(sym), std::move(renamed));
    }
    return out;
}

}  // namespace tabsem
