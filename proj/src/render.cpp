#include "tabsem/render.hpp"

#include <fstream>
#include <sstream>
#include <vector>

namespace tabsem {

namespace {

/// Pads a grid of cells (first column is the row label) into aligned rows.
std::string layout_grid(const std::vector<std::string>& labels,
                        const std::vector<std::vector<std::string>>& columns) {
    std::size_t label_width = 0;
    for (const std::string& l : labels) label_width = std::max(label_width, l.size());
    std::vector<std::size_t> widths(columns.size(), 0);
    for (std::size_t c = 0; c < columns.size(); ++c)
        for (const std::string& cell : columns[c]) widths[c] = std::max(widths[c], cell.size());

    std::string out;
    for (std::size_t r = 0; r < labels.size(); ++r) {
        std::string line = labels[r];
        line.append(label_width - labels[r].size(), ' ');
        line += " |";
        for (std::size_t c = 0; c < columns.size(); ++c) {
            line += ' ';
            line += columns[c][r];
            if (c + 1 < columns.size()) line.append(widths[c] - columns[c][r].size(), ' ');
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    }
    return out;
}

}  // namespace

std::string render_table(const Table& t, Format f) {
    if (f == Format::records) {
        std::string out;
        for (const TableTuple& row : t.tuples()) {
            if (row.index_set().empty()) {
                out += "()\n";
                continue;
            }
            std::string line;
            for (const Variable& v : row.index_set()) {
                if (!line.empty()) line += ' ';
                line += v.name + "=" + to_string(row.entry(v));
            }
            out += line;
            out += '\n';
        }
        return out;
    }
    if (t.is_bottom()) return "bottom\n";
    if (t.is_top()) return "top\n";

    std::vector<std::string> labels;
    for (const Variable& v : t.index_set()) labels.push_back(v.name);
    std::vector<std::vector<std::string>> columns;
    for (const TableTuple& row : t.tuples()) {
        std::vector<std::string> col;
        for (const Variable& v : t.index_set()) col.push_back(to_string(row.entry(v)));
        columns.push_back(std::move(col));
    }
    return layout_grid(labels, columns);
}

std::string render_relation(const IntRelation& r, Format f) {
    if (f == Format::records) {
        std::string out;
        for (const TermTuple& t : r.tuples) {
            out += to_string(t);
            out += '\n';
        }
        return out;
    }
    if (r.tuples.empty()) return "(empty)\n";
    if (r.order == 0) return "()\n";

    std::vector<std::string> labels;
    for (int i = 0; i < r.order; ++i) labels.push_back(std::to_string(i));
    std::vector<std::vector<std::string>> columns;
    for (const TermTuple& t : r.tuples) {
        std::vector<std::string> col;
        for (const Term& c : t) col.push_back(to_string(c));
        columns.push_back(std::move(col));
    }
    return layout_grid(labels, columns);
}

std::string render_interpretation(const RelationalInterpretation& ri, Format f) {
    std::string out;
    bool first = true;
    for (const auto& [sym, rel] : ri.relations) {
        if (f == Format::pretty && !first) out += '\n';
        first = false;
        out += to_string(Term::make(sym)) + "/" + std::to_string(rel.order) + ": " +
               std::to_string(rel.tuples.size()) +
               (rel.tuples.size() == 1 ? " tuple\n" : " tuples\n");
        if (f == Format::records) {
            for (const TermTuple& t : rel.tuples) out += "  " + to_string(t) + "\n";
        } else {
            std::string grid = render_relation(rel, Format::pretty);
            std::istringstream lines(grid);
            std::string line;
            while (std::getline(lines, line)) out += "  " + line + "\n";
        }
    }
    return out;
}

std::string render_fixpoint_report(const FixpointReport& r, int depth_bound, int max_iters,
                                   Format f) {
    std::string out;
    out += "depth: " + std::to_string(depth_bound) + "\n";
    out += "max-iters: " + std::to_string(max_iters) + "\n";
    out += "iterations: " + std::to_string(r.iterations) + "\n";
    out += std::string("converged: ") + (r.converged ? "yes" : "no") + "\n";
    out += "sizes:";
    for (long s : r.sizes) out += " " + std::to_string(s);
    out += "\n\n";
    out += render_interpretation(r.result, f);
    return out;
}

std::string to_string(const Call& c) {
    std::string out = to_string(Term::make(c.symbol));
    if (!c.args.empty()) out += to_string(c.args);
    return out;
}

std::string to_string(const Body& goal) {
    std::string out;
    for (const Call& c : goal.calls) {
        if (!out.empty()) out += ", ";
        out += to_string(c);
    }
    return out;
}

std::string render_program(const ProceduralProgram& p) {
    std::string out;
    for (const HornClause& c : to_clausal(p).clauses) {
        out += to_string(c.head);
        if (!c.body.empty()) {
            out += " :- ";
            bool first = true;
            for (const Atom& a : c.body) {
                if (!first) out += ", ";
                first = false;
                out += to_string(a);
            }
        }
        out += ".\n";
    }
    return out;
}

std::string render_answers(const Table& answers, Format f) {
    if (answers.is_bottom()) return "no\n";
    if (answers.is_top()) return "yes\n";
    return render_table(answers, f);
}

IntRelation parse_relation_text(const std::string& text, int expected_order) {
    IntRelation out(expected_order >= 0 ? expected_order : 0);
    bool have_order = expected_order >= 0;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::size_t start = line.find_first_not_of(" \t\r");
        if (start == std::string::npos || line[start] == '%') continue;
        TermTuple t;
        try {
            t = parse_tuple_text(line.substr(start));
        } catch (const ParseError& e) {
            throw ParseError(SourcePos{lineno, e.pos.column}, "in relation data: " + std::string(e.what()));
        }
        for (const Term& c : t)
            if (!c.ground())
                throw ParseError(SourcePos{lineno, 1}, "relation tuples must be ground");
        if (!have_order) {
            out.order = static_cast<int>(t.size());
            have_order = true;
        }
        if (static_cast<int>(t.size()) != out.order)
            throw ParseError(SourcePos{lineno, 1},
                             "tuple of order " + std::to_string(t.size()) + " in relation of order " +
                                 std::to_string(out.order));
        out.tuples.insert(std::move(t));
    }
    if (!have_order)
        throw std::invalid_argument("cannot determine the order of an empty relation");
    return out;
}

IntRelation load_relation_file(const std::string& path, int expected_order) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open relation file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_relation_text(buf.str(), expected_order);
}

}  // namespace tabsem
