#include "tw/fo.hpp"

#include <algorithm>
#include <set>

#include "tw/errors.hpp"
#include "tw/permutation.hpp"

namespace tw {

namespace {

FormulaPtr make(Formula f) { return std::make_shared<const Formula>(std::move(f)); }

} // namespace

FormulaPtr f_rel(std::string rel, std::string x, std::string y) {
    Formula f;
    f.kind = Formula::Kind::rel;
    f.rel_name = std::move(rel);
    f.var1 = std::move(x);
    f.var2 = std::move(y);
    return make(std::move(f));
}

FormulaPtr f_eq(std::string x, std::string y) {
    Formula f;
    f.kind = Formula::Kind::eq;
    f.var1 = std::move(x);
    f.var2 = std::move(y);
    return make(std::move(f));
}

FormulaPtr f_not(FormulaPtr c) {
    Formula f;
    f.kind = Formula::Kind::neg;
    f.children = {std::move(c)};
    return make(std::move(f));
}

FormulaPtr f_and(std::vector<FormulaPtr> fs) {
    if (fs.empty()) throw input_error("f_and: needs at least one conjunct");
    Formula f;
    f.kind = Formula::Kind::conj;
    f.children = std::move(fs);
    return make(std::move(f));
}

FormulaPtr f_or(std::vector<FormulaPtr> fs) {
    if (fs.empty()) throw input_error("f_or: needs at least one disjunct");
    Formula f;
    f.kind = Formula::Kind::disj;
    f.children = std::move(fs);
    return make(std::move(f));
}

FormulaPtr f_exists(std::string v, FormulaPtr c) {
    Formula f;
    f.kind = Formula::Kind::exists;
    f.qvar = std::move(v);
    f.children = {std::move(c)};
    return make(std::move(f));
}

FormulaPtr f_forall(std::string v, FormulaPtr c) {
    Formula f;
    f.kind = Formula::Kind::forall;
    f.qvar = std::move(v);
    f.children = {std::move(c)};
    return make(std::move(f));
}

namespace {

void collect_free(const FormulaPtr& f, std::vector<std::string>& bound,
                  std::set<std::string>& out) {
    switch (f->kind) {
        case Formula::Kind::rel:
        case Formula::Kind::eq:
            for (const auto& v : {f->var1, f->var2})
                if (std::find(bound.begin(), bound.end(), v) == bound.end()) out.insert(v);
            break;
        case Formula::Kind::exists:
        case Formula::Kind::forall:
            bound.push_back(f->qvar);
            collect_free(f->children[0], bound, out);
            bound.pop_back();
            break;
        default:
            for (const auto& c : f->children) collect_free(c, bound, out);
    }
}

} // namespace

std::vector<std::string> free_variables(const FormulaPtr& f) {
    std::vector<std::string> bound;
    std::set<std::string> out;
    collect_free(f, bound, out);
    return {out.begin(), out.end()};
}

namespace {

struct Parser {
    const std::string& text;
    size_t pos = 0;

    explicit Parser(const std::string& t) : text(t) {}

    void skip_ws() {
        while (pos < text.size() &&
               (text[pos] == ' ' || text[pos] == '\n' || text[pos] == '\t' || text[pos] == '\r'))
            ++pos;
        if (pos < text.size() && text[pos] == ';') { // comment to end of line
            while (pos < text.size() && text[pos] != '\n') ++pos;
            skip_ws();
        }
    }

    bool at_end() {
        skip_ws();
        return pos >= text.size();
    }

    char peek() {
        skip_ws();
        if (pos >= text.size()) throw input_error("formula: unexpected end of input");
        return text[pos];
    }

    void expect(char c) {
        if (peek() != c)
            throw input_error(std::string("formula: expected '") + c + "' at position " +
                              std::to_string(pos));
        ++pos;
    }

    std::string symbol() {
        skip_ws();
        size_t start = pos;
        while (pos < text.size() && text[pos] != '(' && text[pos] != ')' && text[pos] != ' ' &&
               text[pos] != '\n' && text[pos] != '\t' && text[pos] != '\r')
            ++pos;
        if (start == pos) throw input_error("formula: expected a symbol at position " +
                                            std::to_string(start));
        return text.substr(start, pos - start);
    }

    FormulaPtr parse(std::vector<std::string>& bound) {
        expect('(');
        std::string head = symbol();
        FormulaPtr out;
        auto check_var = [&](const std::string& v) {
            if (std::find(bound.begin(), bound.end(), v) == bound.end())
                throw input_error("formula: unbound variable `" + v + "`");
        };
        if (head == "exists" || head == "forall") {
            expect('(');
            std::vector<std::string> vars;
            while (peek() != ')') vars.push_back(symbol());
            expect(')');
            if (vars.empty()) throw input_error("formula: empty quantifier variable list");
            for (const auto& v : vars) bound.push_back(v);
            FormulaPtr body = parse(bound);
            for (size_t i = vars.size(); i-- > 0;) {
                body = head == "exists" ? f_exists(vars[i], body) : f_forall(vars[i], body);
                bound.pop_back();
            }
            out = body;
        } else if (head == "and" || head == "or") {
            std::vector<FormulaPtr> kids;
            while (peek() != ')') kids.push_back(parse(bound));
            out = head == "and" ? f_and(std::move(kids)) : f_or(std::move(kids));
        } else if (head == "not") {
            out = f_not(parse(bound));
        } else if (head == "=") {
            std::string a = symbol(), b = symbol();
            check_var(a);
            check_var(b);
            out = f_eq(a, b);
        } else {
            std::string a = symbol(), b = symbol();
            check_var(a);
            check_var(b);
            out = f_rel(head, a, b);
        }
        expect(')');
        return out;
    }
};

} // namespace

FormulaPtr parse_formula(const std::string& text) {
    Parser p(text);
    std::vector<std::string> bound;
    FormulaPtr f = p.parse(bound);
    if (!p.at_end()) throw input_error("formula: trailing content after the sentence");
    return f;
}

std::string format_formula(const FormulaPtr& f) {
    switch (f->kind) {
        case Formula::Kind::rel:
            return "(" + f->rel_name + " " + f->var1 + " " + f->var2 + ")";
        case Formula::Kind::eq: return "(= " + f->var1 + " " + f->var2 + ")";
        case Formula::Kind::neg: return "(not " + format_formula(f->children[0]) + ")";
        case Formula::Kind::conj:
        case Formula::Kind::disj: {
            std::string s = f->kind == Formula::Kind::conj ? "(and" : "(or";
            for (const auto& c : f->children) s += " " + format_formula(c);
            return s + ")";
        }
        case Formula::Kind::exists:
        case Formula::Kind::forall: {
            std::string head = f->kind == Formula::Kind::exists ? "exists" : "forall";
            return "(" + head + " (" + f->qvar + ") " + format_formula(f->children[0]) + ")";
        }
    }
    return "?";
}

namespace {

int lookup(const std::vector<std::pair<std::string, int>>& env, const std::string& v) {
    for (size_t i = env.size(); i-- > 0;)
        if (env[i].first == v) return env[i].second;
    throw input_error("evaluate: unbound variable `" + v + "`");
}

bool eval_rec(const BinaryStructure& s, const FormulaPtr& f,
              std::vector<std::pair<std::string, int>>& env) {
    switch (f->kind) {
        case Formula::Kind::rel: {
            int r = s.find_relation(f->rel_name);
            if (r < 0) throw input_error("evaluate: unknown relation `" + f->rel_name + "`");
            return s.holds(r, lookup(env, f->var1), lookup(env, f->var2));
        }
        case Formula::Kind::eq: return lookup(env, f->var1) == lookup(env, f->var2);
        case Formula::Kind::neg: return !eval_rec(s, f->children[0], env);
        case Formula::Kind::conj:
            for (const auto& c : f->children)
                if (!eval_rec(s, c, env)) return false;
            return true;
        case Formula::Kind::disj:
            for (const auto& c : f->children)
                if (eval_rec(s, c, env)) return true;
            return false;
        case Formula::Kind::exists:
        case Formula::Kind::forall: {
            bool want = f->kind == Formula::Kind::exists;
            env.emplace_back(f->qvar, 0);
            for (int v = 0; v < s.n(); ++v) {
                env.back().second = v;
                if (eval_rec(s, f->children[0], env) == want) {
                    env.pop_back();
                    return want;
                }
            }
            env.pop_back();
            return !want;
        }
    }
    throw input_error("evaluate: malformed formula");
}

} // namespace

bool evaluate(const BinaryStructure& s, const FormulaPtr& f,
              const std::vector<std::pair<std::string, int>>& env) {
    auto env_copy = env;
    return eval_rec(s, f, env_copy);
}

bool model_check(const BinaryStructure& s, const FormulaPtr& f) {
    if (!free_variables(f).empty())
        throw input_error("model_check: formula has free variables");
    std::vector<std::pair<std::string, int>> env;
    return eval_rec(s, f, env);
}

FormulaPtr ds_formula(int k, bool reflexive) {
    if (k < 1) throw input_error("ds_formula: k must be >= 1");
    std::vector<FormulaPtr> disjuncts;
    for (int i = 1; i <= k; ++i) {
        std::string xi = "x" + std::to_string(i);
        disjuncts.push_back(f_rel("arc", "y", xi));
        if (reflexive) disjuncts.push_back(f_eq("y", xi));
    }
    FormulaPtr body = f_forall("y", f_or(std::move(disjuncts)));
    for (int i = k; i >= 1; --i) body = f_exists("x" + std::to_string(i), body);
    return body;
}

FormulaPtr fvs_formula(int k) {
    if (k < 1) throw input_error("fvs_formula: k must be >= 1");
    std::vector<FormulaPtr> disjuncts;
    for (const char* u : {"u", "v", "w"})
        for (int i = 1; i <= k; ++i) disjuncts.push_back(f_eq(u, "x" + std::to_string(i)));
    disjuncts.push_back(
        f_not(f_and({f_rel("arc", "u", "v"), f_rel("arc", "v", "w"), f_rel("arc", "w", "u")})));
    FormulaPtr body =
        f_forall("u", f_forall("v", f_forall("w", f_or(std::move(disjuncts)))));
    for (int i = k; i >= 1; --i) body = f_exists("x" + std::to_string(i), body);
    return body;
}

InterpretationResult apply_interpretation(const Interpretation& phi, const BinaryStructure& s) {
    InterpretationResult out;
    std::vector<std::pair<std::string, int>> env;
    env.emplace_back("x", 0);
    for (int v = 0; v < s.n(); ++v) {
        env.back().second = v;
        if (eval_rec(s, phi.dom, env)) out.kept.push_back(v);
    }
    // Relations are evaluated on the full structure, then restricted.
    out.structure = BinaryStructure(int(out.kept.size()));
    env.emplace_back("y", 0);
    for (const auto& [name, formula] : phi.relations) {
        std::vector<Bitset> rows(out.kept.size(), Bitset(int(out.kept.size())));
        for (size_t i = 0; i < out.kept.size(); ++i) {
            env[0].second = out.kept[i];
            for (size_t j = 0; j < out.kept.size(); ++j) {
                env[1].second = out.kept[j];
                if (eval_rec(s, formula, env)) rows[i].set(int(j));
            }
        }
        out.structure.add_relation(name, std::move(rows));
    }
    return out;
}

std::optional<OrderDependenceWitness> classify_biordered_tournament(const Digraph& t,
                                                                    const VertexOrder& o1,
                                                                    const VertexOrder& o2) {
    if (t.kind() != GraphKind::tournament)
        throw input_error("classify_biordered_tournament: input must be a tournament");
    OrderDependenceWitness w;
    for (auto& row : w.eta) row = {-1, -1, -1};
    for (int x = 0; x < t.n(); ++x)
        for (int y = 0; y < t.n(); ++y) {
            if (x == y) continue;
            int a = order_type(o1.rank[x], o1.rank[y]);
            int b = order_type(o2.rank[x], o2.rank[y]);
            int val = t.has_arc(x, y) ? 1 : 0;
            int& cell = w.eta[a + 1][b + 1];
            if (cell == -1)
                cell = val;
            else if (cell != val)
                return std::nullopt;
        }
    // Which single coordinate explains the table?
    auto consistent = [&](int coord, int positive) {
        for (int a : {-1, 1})
            for (int b : {-1, 1}) {
                int cell = w.eta[a + 1][b + 1];
                if (cell == -1) continue;
                int key = coord == 1 ? a : b;
                if (cell != (key == positive ? 1 : 0)) return false;
            }
        return true;
    };
    if (t.n() >= 2) {
        if (consistent(1, 1)) w.outcome = OrderDependence::order1;
        else if (consistent(1, -1)) w.outcome = OrderDependence::reverse_order1;
        else if (consistent(2, 1)) w.outcome = OrderDependence::order2;
        else if (consistent(2, -1)) w.outcome = OrderDependence::reverse_order2;
        else
            throw verification_error("classify_biordered_tournament: consistent table without "
                                     "a single-order outcome");
    } else {
        w.outcome = OrderDependence::order1;
    }
    // Make the table total on the off-diagonal keys.
    for (int a : {-1, 1})
        for (int b : {-1, 1}) {
            int& cell = w.eta[a + 1][b + 1];
            if (cell != -1) continue;
            switch (w.outcome) {
                case OrderDependence::order1: cell = a == 1; break;
                case OrderDependence::reverse_order1: cell = a == -1; break;
                case OrderDependence::order2: cell = b == 1; break;
                case OrderDependence::reverse_order2: cell = b == -1; break;
            }
        }
    return w;
}

} // namespace tw
