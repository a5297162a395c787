#ifndef TW_PERMUTATION_HPP
#define TW_PERMUTATION_HPP

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tw/errors.hpp"

namespace tw {

// Permutation of {0,...,n-1} in one-line notation: image[i] = sigma(i).
// Text formats use the 1-based convention.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<int> image);

    static Permutation identity(int n);
    // From 1-based one-line notation, e.g. {3,1,4,5,2}.
    static Permutation from_one_line_1based(const std::vector<int>& vals);
    // The permutation on k*k elements mapping position k*i+j to k*j+i
    // (0-based); its matrix contains a k-grid.
    static Permutation grid_construction(int k);
    static Permutation reversal(int n); // i -> n-1-i

    int size() const { return int(image_.size()); }
    int operator()(int i) const { return image_[i]; }
    const std::vector<int>& image() const { return image_; }

    Permutation inverse() const;
    // (*this) after f: returns sigma with sigma(i) = this(f(i)).
    Permutation after(const Permutation& f) const;

    bool operator==(const Permutation& o) const = default;

    std::string to_string_1based() const;

private:
    std::vector<int> image_;
};

// Superposition of the natural order on [n] and the order induced by a
// permutation: i <_sigma j iff sigma(i) < sigma(j).
struct BiOrder {
    Permutation perm;
    int n() const { return perm.size(); }
    bool less_second(int i, int j) const { return perm(i) < perm(j); }
};

// Total coloring of ordered pairs (x,y), x != y, over alphabet {0..gamma-1}.
class PairColoring {
public:
    PairColoring(int n, int gamma) : n_(n), gamma_(gamma), color_(size_t(n) * n, 0) {}

    int n() const { return n_; }
    int alphabet() const { return gamma_; }
    int operator()(int x, int y) const { return color_[size_t(x) * n_ + y]; }
    void set(int x, int y, int c);

private:
    int n_, gamma_;
    std::vector<int> color_;
};

// 1 if x < y, -1 if x > y, 0 if x == y.
inline int order_type(int x, int y) { return x < y ? 1 : (x > y ? -1 : 0); }

// Lexicographically smallest increasing index set X with the pattern of
// sigma restricted to X equal to tau, or nullopt. Exhaustive.
std::optional<std::vector<int>> contains_pattern(const Permutation& sigma,
                                                 const Permutation& tau, int cap = 12);

// Largest k such that some k-division of the permutation matrix of sigma
// has a 1 in every cell. Exact search over row cuts with a greedy column
// sweep per choice.
int max_grid(const Permutation& sigma, int cap = 64);

// Factoring table eta over order-type pairs; entries for keys in
// {-1,1}^2, -1 where the key never occurs.
struct FactoringTable {
    std::array<std::array<int, 3>, 3> eta; // indexed by ot+1
    int at(int ot1, int ot2) const { return eta[ot1 + 1][ot2 + 1]; }
};

struct UniformPatternWitness {
    std::vector<int> indices;
    FactoringTable table;
};

// Searches for X of size |sigma| such that the bi-order restricted to X
// has pattern sigma and lambda on X^2 factors through the two order
// types. May return nullopt at desk scale; the underlying lemma only
// guarantees existence for huge domains.
std::optional<UniformPatternWitness> find_pattern_with_uniform_coloring(
    const BiOrder& b, const PairColoring& lambda, const Permutation& sigma, int cap = 4);

// Permutation text format: `s <n>` then one line of n 1-based values.
Permutation parse_permutation(std::istream& in);
std::string format_permutation(const Permutation& p);

} // namespace tw

#endif
