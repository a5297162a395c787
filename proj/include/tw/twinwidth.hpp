#ifndef TW_TWINWIDTH_HPP
#define TW_TWINWIDTH_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "tw/bst.hpp"
#include "tw/digraph.hpp"
#include "tw/matrix.hpp"
#include "tw/structure.hpp"

namespace tw {

// n-1 merge events; parts are named by any current member, canonically by
// their minimum original vertex.
struct ContractionSequence {
    int n = 0;
    std::vector<std::pair<int, int>> merges;
};

struct WidthReport {
    int width = 0;
    std::vector<int> step_max;  // max error degree after each merge
    int argmax_step = -1;       // 0-based merge index, -1 if width 0 trivially
    int argmax_part = -1;       // representative of the offending part
};

enum class WidthMode { recompute, incremental };

// Replays the sequence and reports the maximum error degree per step.
// recompute evaluates homogeneity from the definition at every step and
// exists as the oracle; incremental maintains per-pair relation states.
WidthReport width_of_sequence(const BinaryStructure& s, const ContractionSequence& seq,
                              WidthMode mode = WidthMode::incremental);

// Exact twin-width by memoized search over reachable partitions.
// The witness sequence is canonical: among optimal merges the first in
// representative order is taken.
std::pair<int, ContractionSequence> exact_twin_width(const BinaryStructure& s, int cap = 8);

enum class GreedyPolicy { best_pair, order_adjacent };

// Greedy upper bound. best_pair scans all part pairs per step;
// order_adjacent only merges parts adjacent in the given total order
// (which must outlive the call for that policy).
std::pair<WidthReport, ContractionSequence> greedy_contraction(
    const BinaryStructure& s, GreedyPolicy policy, const VertexOrder* order = nullptr);

struct TournamentApproxResult {
    enum class Kind { rank_division, contraction };
    Kind kind = Kind::contraction;
    VertexOrder order;        // the BST order used
    // rank_division branch
    Division division;
    bool division_exact = true;
    // contraction branch: sequence and width on the bi-relation (g, <_S)
    WidthReport report;
    ContractionSequence seq;
};

// Builds a BST order for g, then either finds a rank-k division of the
// adjacency matrix under that order (a largeness witness) or returns an
// order-adjacent greedy contraction sequence of the bi-relation as an
// upper-bound witness. Every returned witness is re-verified by its
// independent checker before returning.
TournamentApproxResult approximate_tournament_tww(const Digraph& g, int k,
                                                  BstStrategy strategy, std::uint64_t seed);

// Contraction sequence text format: `cs <n>` then n-1 lines `<u> <v>`.
ContractionSequence parse_contraction_sequence(std::istream& in);
std::string format_contraction_sequence(const ContractionSequence& seq);

} // namespace tw

#endif
