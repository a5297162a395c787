#ifndef TW_FO_HPP
#define TW_FO_HPP

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tw/bst.hpp"
#include "tw/digraph.hpp"
#include "tw/structure.hpp"

namespace tw {

// First-order formulas over binary signatures. Atoms are R(x,y) and
// x = y; connectives not/and/or; quantifiers bind one variable each.
struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { rel, eq, neg, conj, disj, exists, forall };
    Kind kind;
    std::string rel_name;             // rel
    std::string var1, var2;           // rel, eq
    std::string qvar;                 // exists, forall
    std::vector<FormulaPtr> children; // neg: 1, conj/disj: >= 1, quantifier: 1
};

FormulaPtr f_rel(std::string rel, std::string x, std::string y);
FormulaPtr f_eq(std::string x, std::string y);
FormulaPtr f_not(FormulaPtr f);
FormulaPtr f_and(std::vector<FormulaPtr> fs);
FormulaPtr f_or(std::vector<FormulaPtr> fs);
FormulaPtr f_exists(std::string v, FormulaPtr f);
FormulaPtr f_forall(std::string v, FormulaPtr f);

std::vector<std::string> free_variables(const FormulaPtr& f);

// S-expression surface syntax, e.g.
//   (exists (x) (forall (y) (or (arc y x) (= y x))))
// Quantifier variable lists may name several variables. Unbound
// variables are rejected at parse time.
FormulaPtr parse_formula(const std::string& text);
std::string format_formula(const FormulaPtr& f);

// Naive evaluation over all assignments; the trusted oracle. The formula
// must be a sentence and all relation symbols must exist in s.
bool model_check(const BinaryStructure& s, const FormulaPtr& f);

// Evaluation with free variables bound by env (name -> vertex).
bool evaluate(const BinaryStructure& s, const FormulaPtr& f,
              const std::vector<std::pair<std::string, int>>& env);

// Dominating-set formula: exists x_1..x_k, every y has an arc to some x_i
// or equals it. reflexive=false drops the equality disjunct.
FormulaPtr ds_formula(int k, bool reflexive = true);

// Feedback-vertex-set formula: exists x_1..x_k meeting all directed
// 3-cycles.
FormulaPtr fvs_formula(int k);

struct Interpretation {
    FormulaPtr dom;                                          // free: x
    std::vector<std::pair<std::string, FormulaPtr>> relations; // free: x, y
};

struct InterpretationResult {
    BinaryStructure structure; // renumbered 0..|kept|-1
    std::vector<int> kept;     // original vertex of each new id
};

InterpretationResult apply_interpretation(const Interpretation& phi, const BinaryStructure& s);

enum class OrderDependence { order1, reverse_order1, order2, reverse_order2 };

struct OrderDependenceWitness {
    std::array<std::array<int, 3>, 3> eta; // indexed by ot+1; -1 unused
    OrderDependence outcome;
};

// If the arc directions of t factor through the order types of o1 and o2,
// t is transitive and follows one of the orders or their reverses.
// Returns the factoring table and the matched outcome, or nullopt.
std::optional<OrderDependenceWitness> classify_biordered_tournament(const Digraph& t,
                                                                    const VertexOrder& o1,
                                                                    const VertexOrder& o2);

} // namespace tw

#endif
