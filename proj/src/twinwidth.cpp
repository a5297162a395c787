#include "tw/twinwidth.hpp"

#include <algorithm>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "tw/errors.hpp"

namespace tw {

namespace {

inline std::uint8_t combine_state(std::uint8_t a, std::uint8_t b) {
    return a == b ? a : std::uint8_t(2);
}

// Incremental bookkeeping: per relation, a 3-state flag for each ordered
// pair of parts (0 all absent, 1 all present, 2 mixed), plus per-pair
// non-homogeneity and per-part error degrees.
struct PartitionTracker {
    const BinaryStructure& s;
    int n;
    std::vector<int> rep;             // vertex -> part representative (min vertex)
    std::vector<Bitset> members;      // by representative
    std::vector<int> alive;           // sorted representatives
    std::vector<std::vector<std::uint8_t>> state; // [r][p*n+q]
    std::vector<std::uint8_t> nonhom; // [p*n+q], symmetric
    std::vector<int> errdeg;          // by representative

    explicit PartitionTracker(const BinaryStructure& st) : s(st), n(st.n()) {
        rep.resize(n);
        std::iota(rep.begin(), rep.end(), 0);
        members.assign(n, Bitset(n));
        for (int v = 0; v < n; ++v) members[v].set(v);
        alive.resize(n);
        std::iota(alive.begin(), alive.end(), 0);
        state.assign(s.relation_count(), std::vector<std::uint8_t>(size_t(n) * n, 0));
        for (int r = 0; r < s.relation_count(); ++r)
            for (int u = 0; u < n; ++u)
                for (int v = 0; v < n; ++v)
                    if (u != v) state[r][size_t(u) * n + v] = s.holds(r, u, v) ? 1 : 0;
        nonhom.assign(size_t(n) * n, 0);
        errdeg.assign(n, 0);
    }

    std::uint8_t pair_nonhom(int a, int q, int b) const {
        // would-be non-homogeneity of (a u b) vs q
        for (int r = 0; r < s.relation_count(); ++r) {
            if (combine_state(state[r][size_t(a) * n + q], state[r][size_t(b) * n + q]) == 2)
                return 1;
            if (combine_state(state[r][size_t(q) * n + a], state[r][size_t(q) * n + b]) == 2)
                return 1;
        }
        return 0;
    }

    // Step width if parts a and b were merged; no mutation.
    int eval_merge(int a, int b) const {
        int worst = 0, merged_deg = 0;
        for (int q : alive) {
            if (q == a || q == b) continue;
            std::uint8_t nh = pair_nonhom(a, q, b);
            merged_deg += nh;
            int deg = errdeg[q] - nonhom[size_t(a) * n + q] - nonhom[size_t(b) * n + q] + nh;
            worst = std::max(worst, deg);
        }
        return std::max(worst, merged_deg);
    }

    // Merges the parts with representatives a and b; returns the maximum
    // error degree of the new partition.
    int merge(int a, int b) {
        int m = std::min(a, b), other = std::max(a, b);
        int merged_deg = 0;
        for (int q : alive) {
            if (q == a || q == b) continue;
            std::uint8_t nh = pair_nonhom(a, q, b);
            for (int r = 0; r < s.relation_count(); ++r) {
                state[r][size_t(m) * n + q] =
                    combine_state(state[r][size_t(a) * n + q], state[r][size_t(b) * n + q]);
                state[r][size_t(q) * n + m] =
                    combine_state(state[r][size_t(q) * n + a], state[r][size_t(q) * n + b]);
            }
            errdeg[q] += nh - nonhom[size_t(a) * n + q] - nonhom[size_t(b) * n + q];
            nonhom[size_t(m) * n + q] = nonhom[size_t(q) * n + m] = nh;
            merged_deg += nh;
        }
        errdeg[m] = merged_deg;
        members[m] |= members[other];
        members[other].for_each([&](int v) { rep[v] = m; });
        alive.erase(std::remove(alive.begin(), alive.end(), other), alive.end());
        int worst = 0;
        for (int q : alive) worst = std::max(worst, errdeg[q]);
        return worst;
    }
};

void check_sequence_shape(const BinaryStructure& s, const ContractionSequence& seq) {
    if (seq.n != s.n())
        throw input_error("width_of_sequence: sequence is for a different domain size");
    if (int(seq.merges.size()) != std::max(0, s.n() - 1))
        throw input_error("width_of_sequence: expected " + std::to_string(s.n() - 1) +
                          " merges, got " + std::to_string(seq.merges.size()));
}

} // namespace

WidthReport width_of_sequence(const BinaryStructure& s, const ContractionSequence& seq,
                              WidthMode mode) {
    check_sequence_shape(s, seq);
    WidthReport report;
    if (mode == WidthMode::incremental) {
        PartitionTracker tr(s);
        for (auto [u, v] : seq.merges) {
            if (u < 0 || u >= s.n() || v < 0 || v >= s.n())
                throw input_error("width_of_sequence: merge vertex out of range");
            int a = tr.rep[u], b = tr.rep[v];
            if (a == b) throw input_error("width_of_sequence: merging a part with itself");
            int step = tr.merge(a, b);
            report.step_max.push_back(step);
        }
    } else {
        // From-the-definition replay: recompute every pair's homogeneity
        // at every step. This is the oracle path.
        int n = s.n();
        std::vector<int> rep(n);
        std::iota(rep.begin(), rep.end(), 0);
        std::vector<Bitset> members(n, Bitset(n));
        for (int v = 0; v < n; ++v) members[v].set(v);
        std::vector<int> alive(n);
        std::iota(alive.begin(), alive.end(), 0);
        for (auto [u, v] : seq.merges) {
            if (u < 0 || u >= n || v < 0 || v >= n)
                throw input_error("width_of_sequence: merge vertex out of range");
            int a = rep[u], b = rep[v];
            if (a == b) throw input_error("width_of_sequence: merging a part with itself");
            int m = std::min(a, b), other = std::max(a, b);
            members[m] |= members[other];
            members[other].for_each([&](int w) { rep[w] = m; });
            alive.erase(std::remove(alive.begin(), alive.end(), other), alive.end());
            int step = 0, worst_part = -1;
            for (int p : alive) {
                int deg = 0;
                for (int q : alive)
                    if (q != p && !is_homogeneous(s, members[p], members[q])) ++deg;
                if (deg > step) {
                    step = deg;
                    worst_part = p;
                }
            }
            report.step_max.push_back(step);
            if (step > report.width) {
                report.width = step;
                report.argmax_step = int(report.step_max.size()) - 1;
                report.argmax_part = worst_part;
            }
        }
        return report;
    }
    for (size_t i = 0; i < report.step_max.size(); ++i)
        if (report.step_max[i] > report.width) {
            report.width = report.step_max[i];
            report.argmax_step = int(i);
        }
    if (report.argmax_step >= 0) {
        // Recover the offending part for the report.
        PartitionTracker tr(s);
        for (int i = 0; i <= report.argmax_step; ++i) {
            auto [u, v] = seq.merges[i];
            tr.merge(tr.rep[u], tr.rep[v]);
        }
        for (int q : tr.alive)
            if (tr.errdeg[q] == report.width) {
                report.argmax_part = q;
                break;
            }
    }
    return report;
}

namespace {

// Partition as sorted single-word block masks; usable while n <= 64.
using PartitionKey = std::vector<std::uint64_t>;

struct ExactSolver {
    const BinaryStructure& s;
    int n;
    std::vector<std::uint64_t> rel_rows; // [r*n + u]
    struct Entry {
        int value;
        int cost;
    };
    std::map<PartitionKey, Entry> memo;

    explicit ExactSolver(const BinaryStructure& st) : s(st), n(st.n()) {
        rel_rows.resize(size_t(s.relation_count()) * n);
        for (int r = 0; r < s.relation_count(); ++r)
            for (int u = 0; u < n; ++u)
                rel_rows[size_t(r) * n + u] =
                    s.row(r, u).words().empty() ? 0 : s.row(r, u).words()[0];
    }

    bool homogeneous(std::uint64_t x, std::uint64_t y) const {
        for (int r = 0; r < s.relation_count(); ++r) {
            for (auto [a, b] : {std::pair<std::uint64_t, std::uint64_t>{x, y}, {y, x}}) {
                int mode = -1;
                for (std::uint64_t rest = a; rest;) {
                    int u = __builtin_ctzll(rest);
                    rest &= rest - 1;
                    std::uint64_t bits = rel_rows[size_t(r) * n + u] & b;
                    int m = bits == 0 ? 0 : (bits == b ? 1 : 2);
                    if (m == 2 || (mode != -1 && m != mode)) return false;
                    mode = m;
                }
            }
        }
        return true;
    }

    int cost(const PartitionKey& parts) const {
        int worst = 0;
        for (size_t i = 0; i < parts.size(); ++i) {
            int deg = 0;
            for (size_t j = 0; j < parts.size(); ++j)
                if (i != j && !homogeneous(parts[i], parts[j])) ++deg;
            worst = std::max(worst, deg);
        }
        return worst;
    }

    Entry solve(const PartitionKey& parts) {
        auto it = memo.find(parts);
        if (it != memo.end()) return it->second;
        Entry e{0, cost(parts)};
        if (parts.size() <= 1) {
            e.value = e.cost;
            memo[parts] = e;
            return e;
        }
        int best = std::numeric_limits<int>::max();
        for (size_t i = 0; i < parts.size(); ++i)
            for (size_t j = i + 1; j < parts.size(); ++j) {
                PartitionKey next;
                next.reserve(parts.size() - 1);
                std::uint64_t merged = parts[i] | parts[j];
                for (size_t t = 0; t < parts.size(); ++t)
                    if (t != i && t != j) next.push_back(parts[t]);
                next.push_back(merged);
                std::sort(next.begin(), next.end());
                best = std::min(best, solve(next).value);
            }
        e.value = std::max(e.cost, best);
        memo[parts] = e;
        return e;
    }
};

} // namespace

std::pair<int, ContractionSequence> exact_twin_width(const BinaryStructure& s, int cap) {
    if (s.n() > cap)
        throw size_limit_error("exact_twin_width: n=" + std::to_string(s.n()) +
                               " exceeds cap " + std::to_string(cap));
    // The memo ranges over all partitions of [n]; past n=11 it no longer
    // fits in memory, so refuse rather than thrash.
    if (s.n() > 11)
        throw size_limit_error("exact_twin_width: n=" + std::to_string(s.n()) +
                               " exceeds the hard cap 11");
    ContractionSequence seq;
    seq.n = s.n();
    if (s.n() <= 1) return {0, seq};
    ExactSolver solver(s);
    PartitionKey parts;
    for (int v = 0; v < s.n(); ++v) parts.push_back(std::uint64_t(1) << v);
    int width = solver.solve(parts).value;
    // Reconstruct a canonical witness: at each state take the first merge
    // (in representative order) that achieves the optimum.
    PartitionKey cur = parts;
    while (cur.size() > 1) {
        // sort part indices by representative
        std::vector<size_t> idx(cur.size());
        std::iota(idx.begin(), idx.end(), 0);
        std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) {
            return __builtin_ctzll(cur[a]) < __builtin_ctzll(cur[b]);
        });
        bool advanced = false;
        for (size_t ii = 0; ii < idx.size() && !advanced; ++ii)
            for (size_t jj = ii + 1; jj < idx.size() && !advanced; ++jj) {
                size_t i = idx[ii], j = idx[jj];
                PartitionKey next;
                next.reserve(cur.size() - 1);
                for (size_t t = 0; t < cur.size(); ++t)
                    if (t != i && t != j) next.push_back(cur[t]);
                next.push_back(cur[i] | cur[j]);
                std::sort(next.begin(), next.end());
                auto e = solver.solve(next);
                if (std::max(e.cost, e.value) <= width) {
                    seq.merges.emplace_back(__builtin_ctzll(cur[i]), __builtin_ctzll(cur[j]));
                    cur = next;
                    advanced = true;
                }
            }
        if (!advanced) throw verification_error("exact_twin_width: witness reconstruction failed");
    }
    return {width, seq};
}

std::pair<WidthReport, ContractionSequence> greedy_contraction(const BinaryStructure& s,
                                                               GreedyPolicy policy,
                                                               const VertexOrder* order) {
    if (policy == GreedyPolicy::order_adjacent && order == nullptr)
        throw input_error("greedy_contraction: order_adjacent policy needs an order");
    ContractionSequence seq;
    seq.n = s.n();
    WidthReport report;
    if (s.n() <= 1) return {report, seq};
    PartitionTracker tr(s);
    // For order_adjacent: parts stay intervals of the order; keep them as
    // a list sorted by leftmost position.
    std::vector<int> interval_parts;
    if (policy == GreedyPolicy::order_adjacent) interval_parts = order->seq;
    for (int step = 0; step < s.n() - 1; ++step) {
        int best_a = -1, best_b = -1, best_cost = std::numeric_limits<int>::max();
        auto consider = [&](int a, int b) {
            int ra = std::min(tr.rep[a], tr.rep[b]);
            int rb = std::max(tr.rep[a], tr.rep[b]);
            int c = tr.eval_merge(ra, rb);
            if (c < best_cost ||
                (c == best_cost && std::pair(ra, rb) < std::pair(best_a, best_b))) {
                best_cost = c;
                best_a = ra;
                best_b = rb;
            }
        };
        if (policy == GreedyPolicy::best_pair) {
            for (size_t i = 0; i < tr.alive.size(); ++i)
                for (size_t j = i + 1; j < tr.alive.size(); ++j)
                    consider(tr.alive[i], tr.alive[j]);
        } else {
            for (size_t i = 0; i + 1 < interval_parts.size(); ++i)
                consider(interval_parts[i], interval_parts[i + 1]);
        }
        int stepmax = tr.merge(best_a, best_b);
        report.step_max.push_back(stepmax);
        seq.merges.emplace_back(best_a, best_b);
        if (policy == GreedyPolicy::order_adjacent) {
            // Collapse the two merged interval markers into one.
            std::vector<int> next;
            next.reserve(interval_parts.size() - 1);
            int prev_rep = -1;
            for (int v : interval_parts) {
                int r = tr.rep[v];
                if (r != prev_rep) next.push_back(v);
                prev_rep = r;
            }
            interval_parts = std::move(next);
        }
    }
    for (size_t i = 0; i < report.step_max.size(); ++i)
        if (report.step_max[i] > report.width) {
            report.width = report.step_max[i];
            report.argmax_step = int(i);
        }
    return {report, seq};
}

TournamentApproxResult approximate_tournament_tww(const Digraph& g, int k,
                                                  BstStrategy strategy, std::uint64_t seed) {
    if (g.kind() != GraphKind::tournament)
        throw input_error("approximate_tournament_tww: input must be a tournament");
    if (k < 1) throw input_error("approximate_tournament_tww: k must be >= 1");
    TournamentApproxResult res;
    BstTree t = bst_build(g, strategy, seed);
    if (auto bad = bst_validate(g, t))
        throw verification_error("approximate_tournament_tww: built BST invalid: " +
                                 bad->reason);
    res.order = left_to_right(t);
    if (g.n() >= 2) {
        Matrix adj = adjacency_matrix(g, res.order.seq);
        RankDivisionResult rd = find_rank_division(adj, k);
        if (rd.status == RankDivisionResult::Status::found) {
            if (!is_rank_division(adj, rd.division, k))
                throw verification_error("approximate_tournament_tww: rank division failed "
                                         "its re-check");
            res.kind = TournamentApproxResult::Kind::rank_division;
            res.division = rd.division;
            res.division_exact = rd.exact;
            return res;
        }
    }
    res.kind = TournamentApproxResult::Kind::contraction;
    BinaryStructure bi = BinaryStructure::from_digraph_with_order(g, res.order);
    auto [report, seq] = greedy_contraction(bi, GreedyPolicy::order_adjacent, &res.order);
    WidthReport check = width_of_sequence(bi, seq, WidthMode::recompute);
    if (check.width != report.width)
        throw verification_error("approximate_tournament_tww: width replay mismatch");
    res.report = report;
    res.seq = seq;
    return res;
}

ContractionSequence parse_contraction_sequence(std::istream& in) {
    std::string line;
    ContractionSequence seq;
    int lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        if (!have_header) {
            std::string tag;
            if (!(ls >> tag >> seq.n) || tag != "cs" || seq.n < 1)
                throw input_error("sequence line " + std::to_string(lineno) +
                                  ": expected `cs <n>`");
            have_header = true;
        } else {
            int u, v;
            if (!(ls >> u >> v))
                throw input_error("sequence line " + std::to_string(lineno) + ": bad merge");
            seq.merges.emplace_back(u - 1, v - 1);
        }
    }
    if (!have_header) throw input_error("sequence: missing `cs <n>` header");
    return seq;
}

std::string format_contraction_sequence(const ContractionSequence& seq) {
    std::string s = "cs " + std::to_string(seq.n) + "\n";
    for (auto [u, v] : seq.merges)
        s += std::to_string(u + 1) + " " + std::to_string(v + 1) + "\n";
    return s;
}

} // namespace tw
