#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace pmbo {

/// Largest exponent representable per dimension. Matches the length of the
/// default generating-node sequence, so every admissible index has a node.
inline constexpr int kMaxExponent = 127;

/// Exponent vector alpha in N^m for the monomial x^alpha.
using MultiIndex = std::vector<int>;

inline int total_degree(const MultiIndex& alpha) {
    int d = 0;
    for (int e : alpha) d += e;
    return d;
}

/// Canonical order: total degree first, lexicographic tie-break.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

/// Which lp-norm bounds the exponent vectors of a degree set.
enum class DegreeNorm { L1, L2, LInf };

/// A finite set of multi-indices in N^m, kept in canonical (graded
/// lexicographic) order. Sets produced by total_degree_set / with_index are
/// downward-closed; arbitrary member lists may be constructed for validation.
class MultiIndexSet {
public:
    /// Canonicalizes the given indices. Rejects dimension mismatches,
    /// negative exponents and duplicates.
    MultiIndexSet(int dimension, std::vector<MultiIndex> indices);

    int dimension() const { return dimension_; }
    std::size_t size() const { return indices_.size(); }
    bool empty() const { return indices_.empty(); }
    const MultiIndex& operator[](std::size_t i) const { return indices_[i]; }
    const std::vector<MultiIndex>& indices() const { return indices_; }
    auto begin() const { return indices_.begin(); }
    auto end() const { return indices_.end(); }

    bool contains(const MultiIndex& alpha) const;

    /// Largest exponent appearing in any member, 0 for the empty set.
    int max_exponent() const;

    /// True iff every member keeps all its backward neighbors in the set.
    bool is_downward_closed() const;

    /// All indices beta not in the set whose addition keeps it
    /// downward-closed, in canonical order. Indices with an exponent above
    /// max_exponent are excluded (the generating-node sequence is finite).
    /// Rejects non-downward-closed sets.
    std::vector<MultiIndex> frontier(int max_exponent = kMaxExponent) const;

    /// Returns this set enlarged by alpha. alpha must be a frontier element.
    MultiIndexSet with_index(const MultiIndex& alpha) const;

    /// JSON array of integer arrays in canonical order.
    std::string to_json() const;
    static MultiIndexSet from_json(const std::string& text);

    friend bool operator==(const MultiIndexSet& a, const MultiIndexSet& b) {
        return a.dimension_ == b.dimension_ && a.indices_ == b.indices_;
    }

private:
    int dimension_;
    std::vector<MultiIndex> indices_;  // canonical order
};

/// { alpha in N^m : ||alpha||_p <= degree } in canonical order.
MultiIndexSet total_degree_set(int dimension, int degree, DegreeNorm norm = DegreeNorm::L1);

inline bool is_downward_closed(const MultiIndexSet& set) { return set.is_downward_closed(); }

}  // namespace pmbo
