#include "tabsem/term.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace tabsem {

Term Term::var(std::string name) {
    if (name.empty()) throw std::invalid_argument("variable name must not be empty");
    Term t;
    t.is_var_ = true;
    t.symbol_ = std::move(name);
    return t;
}

Term Term::var(const Variable& v) { return var(v.name); }

Term Term::make(std::string functor, std::vector<Term> args) {
    if (functor.empty()) throw std::invalid_argument("functor must not be empty");
    Term t;
    t.is_var_ = false;
    t.symbol_ = std::move(functor);
    t.args_ = std::move(args);
    return t;
}

Variable Term::as_var() const {
    if (!is_var_) throw std::logic_error("as_var() on a compound term");
    return Variable{symbol_};
}

bool Term::ground() const {
    if (is_var_) return false;
    for (const Term& a : args_)
        if (!a.ground()) return false;
    return true;
}

int Term::depth() const {
    int d = 0;
    for (const Term& a : args_) d = std::max(d, a.depth() + 1);
    return d;
}

int compare(const Term& a, const Term& b) {
    if (a.is_var() != b.is_var()) return a.is_var() ? -1 : 1;
    if (int c = a.symbol().compare(b.symbol()); c != 0) return c < 0 ? -1 : 1;
    if (a.args().size() != b.args().size())
        return a.args().size() < b.args().size() ? -1 : 1;
    for (std::size_t i = 0; i < a.args().size(); ++i)
        if (int c = compare(a.args()[i], b.args()[i]); c != 0) return c;
    return 0;
}

bool Term::operator==(const Term& o) const { return compare(*this, o) == 0; }
bool Term::operator<(const Term& o) const { return compare(*this, o) < 0; }

namespace {

void collect_vars(const Term& t, std::set<Variable>& out) {
    if (t.is_var()) {
        out.insert(Variable{t.symbol()});
        return;
    }
    for (const Term& a : t.args()) collect_vars(a, out);
}

bool occurs_in(const Variable& v, const Term& t) {
    if (t.is_var()) return t.symbol() == v.name;
    for (const Term& a : t.args())
        if (occurs_in(v, a)) return true;
    return false;
}

}  // namespace

std::set<Variable> variables_of(const Term& t) {
    std::set<Variable> out;
    collect_vars(t, out);
    return out;
}

Term substitute(const std::map<Variable, Term>& bind, const Term& t) {
    if (t.is_var()) {
        auto it = bind.find(Variable{t.symbol()});
        return it == bind.end() ? t : it->second;
    }
    if (t.args().empty()) return t;
    std::vector<Term> args;
    args.reserve(t.args().size());
    for (const Term& a : t.args()) args.push_back(substitute(bind, a));
    return Term::make(t.symbol(), std::move(args));
}

std::set<Variable> variables_of(const TermTuple& t) {
    std::set<Variable> out;
    for (const Term& c : t) collect_vars(c, out);
    return out;
}

SolvedForm::SolvedForm(const std::map<Variable, Term>& bindings) {
    std::vector<TermEquation> eqs;
    eqs.reserve(bindings.size());
    for (const auto& [v, t] : bindings) eqs.push_back({Term::var(v), t});
    SolveResult r = solve(eqs);
    if (!r) throw std::invalid_argument("bindings have no solved form");
    bindings_ = r.solution->bindings_;
}

std::optional<Term> SolvedForm::lookup(const Variable& v) const {
    auto it = bindings_.find(v);
    if (it == bindings_.end()) return std::nullopt;
    return it->second;
}

Term apply(const SolvedForm& s, const Term& t) { return substitute(s.bindings(), t); }

TermTuple apply(const SolvedForm& s, const TermTuple& t) {
    TermTuple out;
    out.reserve(t.size());
    for (const Term& c : t) out.push_back(apply(s, c));
    return out;
}

SolveResult solve(const std::vector<TermEquation>& equations) {
    std::map<Variable, Term> bind;  // kept fully resolved at every step
    std::vector<std::pair<Term, Term>> work;
    work.reserve(equations.size());
    for (const TermEquation& e : equations) work.emplace_back(e.lhs, e.rhs);

    while (!work.empty()) {
        Term a = substitute(bind, work.back().first);
        Term b = substitute(bind, work.back().second);
        work.pop_back();
        if (a == b) continue;

        if (a.is_compound() && b.is_compound()) {
            if (a.symbol() != b.symbol() || a.args().size() != b.args().size())
                return {std::nullopt, UnifyFail::clash};
            for (std::size_t i = 0; i < a.args().size(); ++i)
                work.emplace_back(a.args()[i], b.args()[i]);
            continue;
        }

        // At least one side is an unbound variable. Between two variables the
        // larger name gets bound, keeping the smaller as representative.
        Variable x;
        Term rhs = a;
        if (a.is_var() && b.is_var()) {
            Variable va = a.as_var();
            Variable vb = b.as_var();
            x = std::max(va, vb);
            rhs = Term::var(std::min(va, vb));
        } else if (a.is_var()) {
            x = a.as_var();
            rhs = b;
        } else {
            x = b.as_var();
        }
        if (occurs_in(x, rhs)) return {std::nullopt, UnifyFail::occurs};

        std::map<Variable, Term> step{{x, rhs}};
        for (auto& [v, t] : bind) t = substitute(step, t);
        bind.emplace(std::move(x), std::move(rhs));
    }

    SolveResult out;
    out.solution = SolvedForm(SolvedForm::canonical_tag{}, std::move(bind));
    return out;
}

SolveResult unify(const Term& t0, const Term& t1) { return solve({{t0, t1}}); }

void Signature::validate() const {
    for (const auto& [f, n] : functions) {
        if (n < 1) throw std::invalid_argument("function arity must be >= 1: " + f);
        if (constants.count(f))
            throw std::invalid_argument("symbol is both constant and function: " + f);
    }
    for (const auto& [p, n] : predicates)
        if (n < 0) throw std::invalid_argument("negative predicate arity: " + p);
}

void Signature::check_term(const Term& t) const {
    if (t.is_var()) return;
    if (t.args().empty()) {
        if (!constants.count(t.symbol()))
            throw std::invalid_argument("unknown constant: " + t.symbol());
    } else {
        auto it = functions.find(t.symbol());
        if (it == functions.end())
            throw std::invalid_argument("unknown function symbol: " + t.symbol());
        if (it->second != static_cast<int>(t.args().size()))
            throw std::invalid_argument("arity mismatch for function symbol: " + t.symbol());
    }
    for (const Term& a : t.args()) check_term(a);
}

std::vector<Term> enumerate_ground(const Universe& u) {
    if (u.signature.constants.empty())
        throw std::invalid_argument("universe signature has no constants");

    std::vector<Term> layer;  // terms of the depth handled last
    for (const std::string& c : u.signature.constants) layer.push_back(Term::make(c));
    std::sort(layer.begin(), layer.end());

    std::vector<Term> all = layer;  // grows depth by depth, so ordered by depth
    std::vector<Term> shallower;    // strictly shallower than the current layer
    for (int d = 1; d <= u.depth_bound; ++d) {
        std::size_t prev_count = shallower.size();
        shallower.insert(shallower.end(), layer.begin(), layer.end());
        std::vector<Term> next;
        for (const auto& [f, arity] : u.signature.functions) {
            // Odometer over argument choices; at least one argument must come
            // from the deepest layer so the result has depth exactly d.
            std::vector<std::size_t> idx(static_cast<std::size_t>(arity), 0);
            while (true) {
                bool deep_enough = false;
                for (std::size_t i : idx) deep_enough = deep_enough || i >= prev_count;
                if (deep_enough) {
                    std::vector<Term> args;
                    args.reserve(idx.size());
                    for (std::size_t i : idx) args.push_back(shallower[i]);
                    next.push_back(Term::make(f, std::move(args)));
                }
                std::size_t k = 0;
                for (; k < idx.size(); ++k) {
                    if (++idx[k] < shallower.size()) break;
                    idx[k] = 0;
                }
                if (k == idx.size()) break;
            }
        }
        std::sort(next.begin(), next.end());
        all.insert(all.end(), next.begin(), next.end());
        layer = std::move(next);
        if (layer.empty()) break;  // no functions: nothing deeper exists
    }
    return all;
}

namespace {

void min_occurrence_depths(const Term& t, int at, std::map<Variable, int>& out) {
    if (t.is_var()) {
        auto [it, inserted] = out.emplace(Variable{t.symbol()}, at);
        if (!inserted && at < it->second) it->second = at;
        return;
    }
    for (const Term& a : t.args()) min_occurrence_depths(a, at + 1, out);
}

unsigned long long saturating_mul(unsigned long long a, unsigned long long b) {
    unsigned long long r;
    if (__builtin_mul_overflow(a, b, &r)) return ~0ULL;
    return r;
}

}  // namespace

std::set<TermTuple> ground_instances(const TermTuple& t, const Universe& u, ClipStats* stats) {
    std::map<Variable, int> occ;
    for (const Term& c : t) min_occurrence_depths(c, 0, occ);
    if (occ.empty()) return ground_instances(t, u, {}, stats);  // no enumeration needed
    return ground_instances(t, u, enumerate_ground(u), stats);
}

std::set<TermTuple> ground_instances(const TermTuple& t, const Universe& u,
                                     const std::vector<Term>& herb, ClipStats* stats) {
    auto clipped = [&](const TermTuple& candidate) {
        for (const Term& c : candidate)
            if (c.depth() > u.depth_bound) return true;
        return false;
    };

    std::set<TermTuple> out;
    std::map<Variable, int> occ;
    for (const Term& c : t) min_occurrence_depths(c, 0, occ);
    if (occ.empty()) {
        if (clipped(t)) {
            if (stats) ++stats->clipped;
        } else {
            out.insert(t);
        }
        return out;
    }

    // A variable occurring under k functors can only take values of depth
    // <= bound - k; anything deeper is certain to clip. The excluded
    // combinations are counted so the statistics match plain enumeration.
    std::vector<Variable> order;
    std::vector<std::vector<const Term*>> candidates;
    unsigned long long all_combos = 1, kept_combos = 1;
    for (const auto& [v, depth_in_tuple] : occ) {
        order.push_back(v);
        std::vector<const Term*> fits;
        for (const Term& g : herb)
            if (g.depth() + depth_in_tuple <= u.depth_bound) fits.push_back(&g);
        all_combos = saturating_mul(all_combos, herb.size());
        kept_combos = saturating_mul(kept_combos, fits.size());
        candidates.push_back(std::move(fits));
    }
    if (stats) stats->clipped += static_cast<long>(all_combos - kept_combos);
    if (kept_combos == 0) return out;

    std::vector<std::size_t> idx(order.size(), 0);
    while (true) {
        std::map<Variable, Term> bind;
        for (std::size_t i = 0; i < order.size(); ++i) bind.emplace(order[i], *candidates[i][idx[i]]);
        TermTuple candidate;
        candidate.reserve(t.size());
        for (const Term& c : t) candidate.push_back(substitute(bind, c));
        if (clipped(candidate)) {
            if (stats) ++stats->clipped;
        } else {
            out.insert(std::move(candidate));
        }
        std::size_t k = 0;
        for (; k < idx.size(); ++k) {
            if (++idx[k] < candidates[k].size()) break;
            idx[k] = 0;
        }
        if (k == idx.size()) break;
    }
    return out;
}

namespace {

bool plain_name(const std::string& s) {
    if (s.empty() || !((s[0] >= 'a' && s[0] <= 'z'))) return false;
    for (char c : s) {
        bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
                  c == '_';
        if (!ok) return false;
    }
    return true;
}

std::string quoted(const std::string& s) {
    std::string out = "'";
    for (char c : s) {
        out += c;
        if (c == '\'') out += c;  // doubled quote escape
    }
    out += "'";
    return out;
}

}  // namespace

std::string to_string(const Term& t) {
    if (t.is_var()) return t.symbol();
    std::string out = plain_name(t.symbol()) ? t.symbol() : quoted(t.symbol());
    if (!t.args().empty()) {
        out += "(";
        for (std::size_t i = 0; i < t.args().size(); ++i) {
            if (i) out += ",";
            out += to_string(t.args()[i]);
        }
        out += ")";
    }
    return out;
}

std::string to_string(const TermTuple& t) {
    std::string out = "(";
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (i) out += ",";
        out += to_string(t[i]);
    }
    out += ")";
    return out;
}

}  // namespace tabsem
