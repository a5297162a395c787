#ifndef TW_OBSTRUCTIONS_HPP
#define TW_OBSTRUCTIONS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "tw/chain_order.hpp"
#include "tw/digraph.hpp"
#include "tw/fo.hpp"
#include "tw/matrix.hpp"
#include "tw/permutation.hpp"

namespace tw {

enum class ObstructionKind { eq, leq, geq };

const char* obstruction_kind_name(ObstructionKind r);

// Partition of the 2n obstruction vertices into the two chains.
struct RoleMap {
    std::vector<int> x_ids; // x_ids[i] = vertex playing x_{i+1}
    std::vector<int> y_ids;
};

// The 2n-vertex tournament with chains X, Y (each ordered by vertex
// index) and an arc y_j -> x_i exactly when i R sigma^{-1}(j); every
// other cross pair is oriented x -> y.
std::pair<Digraph, RoleMap> build_F(ObstructionKind r, const Permutation& sigma);

// One-element extension that makes the X/Y split definable without
// colors: for eq append a fixed point; for leq/geq prepend the new
// maximum. Requires |sigma| >= 2.
Permutation extend_sigma(ObstructionKind r, const Permutation& sigma);

struct DecodeResult {
    std::optional<Permutation> sigma;
    std::string reason; // set when sigma is empty
    RoleMap roles;      // filled on success
};

// Inverse of build_F(extend_sigma(.)): locates the distinguished vertex
// from the kind's degree anchor, reconstructs X and Y, reads the
// permutation, and validates every structural property used along the
// way. Any failure yields a NotInImage reason instead of a guess.
DecodeResult decode_F(ObstructionKind r, const Digraph& t);

struct ChainOrderRepresentation {
    std::vector<int> a, b;      // disjoint vertex subsets
    ChainQuasiOrder order1, order2;
    MatrixClassKind kind;
    Permutation sigma;
};

struct RepresentationViolation {
    std::string what;
};

// Checks that order1 totally orders a, order2 totally orders b, and the
// adjacency matrix of a versus b under those orders equals
// build_M(kind, sigma).
std::optional<RepresentationViolation> verify_chain_representation(
    const ChainOrderRepresentation& rep, const Digraph& g);

struct DisjointifiedDivision {
    std::vector<std::pair<int, int>> row_parts; // position intervals, inclusive
    std::vector<std::pair<int, int>> col_parts;
    bool rows_first = true; // row parts precede column parts in the order
};

// From 2k row intervals and 2k column intervals of a common order,
// selects k of each so that all 2k chosen intervals are pairwise
// disjoint (one family entirely before the other).
DisjointifiedDivision disjointify_division(const std::vector<std::pair<int, int>>& row_parts,
                                           const std::vector<std::pair<int, int>>& col_parts);

struct FamilyEnumeration {
    int m = 0;
    int distinct = 0;             // pairwise distinct canonical forms
    bool all_rigid = true;        // every generator has trivial automorphisms
    std::vector<std::string> canonical_forms;   // sorted
    std::vector<std::uint64_t> automorphism_counts;
};

// Enumerates the generators build_F(r, extend_sigma(r, sigma)) over all
// sigma of each size m in [2, m_max], canonicalizes, and counts
// automorphisms. threads > 1 splits the per-sigma work.
std::vector<FamilyEnumeration> enumerate_family(ObstructionKind r, int m_max, int threads = 1);

// The decoding as a first-order interpretation: applied to
// build_F(r, extend_sigma(r, sigma)), it produces the bi-order of sigma
// (relations `ord` and `ord2`) on the surviving vertices.
Interpretation decode_interpretation(ObstructionKind r);

} // namespace tw

#endif
