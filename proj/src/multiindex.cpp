#include "pmbo/multiindex.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace pmbo {

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

MultiIndexSet::MultiIndexSet(int dimension, std::vector<MultiIndex> indices)
    : dimension_(dimension), indices_(std::move(indices)) {
    if (dimension_ < 1) throw std::invalid_argument("MultiIndexSet: dimension must be >= 1");
    for (const MultiIndex& alpha : indices_) {
        if (static_cast<int>(alpha.size()) != dimension_)
            throw std::invalid_argument("MultiIndexSet: index length does not match dimension");
        for (int e : alpha) {
            if (e < 0) throw std::invalid_argument("MultiIndexSet: negative exponent");
        }
    }
    std::sort(indices_.begin(), indices_.end(), graded_lex_less);
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
        throw std::invalid_argument("MultiIndexSet: duplicate index");
}

bool MultiIndexSet::contains(const MultiIndex& alpha) const {
    return std::binary_search(indices_.begin(), indices_.end(), alpha, graded_lex_less);
}

int MultiIndexSet::max_exponent() const {
    int top = 0;
    for (const MultiIndex& alpha : indices_)
        for (int e : alpha) top = std::max(top, e);
    return top;
}

bool MultiIndexSet::is_downward_closed() const {
    for (const MultiIndex& alpha : indices_) {
        MultiIndex neighbor = alpha;
        for (int i = 0; i < dimension_; ++i) {
            if (alpha[static_cast<std::size_t>(i)] == 0) continue;
            neighbor[static_cast<std::size_t>(i)] -= 1;
            if (!contains(neighbor)) return false;
            neighbor[static_cast<std::size_t>(i)] += 1;
        }
    }
    return true;
}

std::vector<MultiIndex> MultiIndexSet::frontier(int max_exponent) const {
    if (indices_.empty()) throw std::invalid_argument("frontier: empty index set");
    if (!is_downward_closed()) throw std::invalid_argument("frontier: set is not downward-closed");

    auto admissible = [&](const MultiIndex& beta) {
        MultiIndex neighbor = beta;
        for (int i = 0; i < dimension_; ++i) {
            if (beta[static_cast<std::size_t>(i)] == 0) continue;
            neighbor[static_cast<std::size_t>(i)] -= 1;
            const bool ok = contains(neighbor);
            neighbor[static_cast<std::size_t>(i)] += 1;
            if (!ok) return false;
        }
        return true;
    };

    std::set<MultiIndex, decltype(&graded_lex_less)> found(&graded_lex_less);
    for (const MultiIndex& alpha : indices_) {
        MultiIndex beta = alpha;
        for (int i = 0; i < dimension_; ++i) {
            beta[static_cast<std::size_t>(i)] += 1;
            if (beta[static_cast<std::size_t>(i)] <= max_exponent && !contains(beta) &&
                admissible(beta))
                found.insert(beta);
            beta[static_cast<std::size_t>(i)] -= 1;
        }
    }
    return {found.begin(), found.end()};
}

MultiIndexSet MultiIndexSet::with_index(const MultiIndex& alpha) const {
    if (static_cast<int>(alpha.size()) != dimension_)
        throw std::invalid_argument("with_index: index length does not match dimension");
    if (contains(alpha)) throw std::invalid_argument("with_index: index already present");
    MultiIndex neighbor = alpha;
    for (int i = 0; i < dimension_; ++i) {
        if (alpha[static_cast<std::size_t>(i)] == 0) continue;
        if (alpha[static_cast<std::size_t>(i)] < 0)
            throw std::invalid_argument("with_index: negative exponent");
        neighbor[static_cast<std::size_t>(i)] -= 1;
        const bool ok = contains(neighbor);
        neighbor[static_cast<std::size_t>(i)] += 1;
        if (!ok)
            throw std::invalid_argument("with_index: addition would break downward-closedness");
    }
    std::vector<MultiIndex> enlarged = indices_;
    enlarged.insert(std::upper_bound(enlarged.begin(), enlarged.end(), alpha, graded_lex_less),
                    alpha);
    return MultiIndexSet(dimension_, std::move(enlarged));
}

std::string MultiIndexSet::to_json() const {
    nlohmann::json out = nlohmann::json::array();
    for (const MultiIndex& alpha : indices_) out.push_back(alpha);
    return out.dump();
}

MultiIndexSet MultiIndexSet::from_json(const std::string& text) {
    const nlohmann::json parsed = nlohmann::json::parse(text);
    if (!parsed.is_array() || parsed.empty())
        throw std::invalid_argument("MultiIndexSet::from_json: expected a non-empty array");
    std::vector<MultiIndex> indices;
    for (const auto& row : parsed) indices.push_back(row.get<MultiIndex>());
    const int dimension = static_cast<int>(indices.front().size());
    return MultiIndexSet(dimension, std::move(indices));
}

namespace {

bool within_norm(const MultiIndex& alpha, int degree, DegreeNorm norm) {
    switch (norm) {
        case DegreeNorm::L1:
            return total_degree(alpha) <= degree;
        case DegreeNorm::L2: {
            long long sq = 0;
            for (int e : alpha) sq += static_cast<long long>(e) * e;
            return sq <= static_cast<long long>(degree) * degree;
        }
        case DegreeNorm::LInf:
            return true;  // per-coordinate bound enforced by the enumeration
    }
    return false;
}

void enumerate(MultiIndex& alpha, int coordinate, int degree, DegreeNorm norm,
               std::vector<MultiIndex>& out) {
    if (coordinate == static_cast<int>(alpha.size())) {
        out.push_back(alpha);
        return;
    }
    for (int e = 0; e <= degree; ++e) {
        alpha[static_cast<std::size_t>(coordinate)] = e;
        if (!within_norm(alpha, degree, norm)) break;  // norms grow monotonically in e
        enumerate(alpha, coordinate + 1, degree, norm, out);
    }
    alpha[static_cast<std::size_t>(coordinate)] = 0;
}

}  // namespace

MultiIndexSet total_degree_set(int dimension, int degree, DegreeNorm norm) {
    if (dimension < 1) throw std::invalid_argument("total_degree_set: dimension must be >= 1");
    if (degree < 0) throw std::invalid_argument("total_degree_set: degree must be >= 0");
    std::vector<MultiIndex> indices;
    MultiIndex alpha(static_cast<std::size_t>(dimension), 0);
    enumerate(alpha, 0, degree, norm, indices);
    return MultiIndexSet(dimension, std::move(indices));
}

}  // namespace pmbo
