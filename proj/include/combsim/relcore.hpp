#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace combsim {

// Ground sets are dense index ranges 0..n-1. One machine word per relation
// row caps n at 64, which covers every computation in this library.
struct GroundSet {
    int n;

    explicit GroundSet(int size) : n(size) {
        if (n < 1) throw std::invalid_argument("ground set must be nonempty");
        if (n > 64) throw std::invalid_argument("ground set larger than 64 elements");
    }
    friend bool operator==(const GroundSet&, const GroundSet&) = default;
};

enum class EqAxiom { reflexivity, symmetry, transitivity };

struct EquivalenceVerdict {
    bool ok = true;
    EqAxiom failed = EqAxiom::reflexivity;
    // reflexivity uses witness[0]; symmetry witness[0..1]; transitivity all three
    std::array<int, 3> witness{-1, -1, -1};

    explicit operator bool() const { return ok; }
};

inline const char* to_string(EqAxiom a) {
    switch (a) {
        case EqAxiom::reflexivity: return "reflexivity";
        case EqAxiom::symmetry: return "symmetry";
        case EqAxiom::transitivity: return "transitivity";
    }
    return "?";
}

// Subset of X^2 with dense bit-matrix semantics; row i holds the pairs <i, j>.
class BinaryRelation {
public:
    explicit BinaryRelation(GroundSet g) : ground_(g), rows_(g.n, 0) {}

    static BinaryRelation empty(GroundSet g) { return BinaryRelation(g); }

    static BinaryRelation diagonal(GroundSet g) {
        BinaryRelation r(g);
        for (int i = 0; i < g.n; ++i) r.add(i, i);
        return r;
    }

    static BinaryRelation full(GroundSet g) {
        BinaryRelation r(g);
        const std::uint64_t row = (g.n == 64) ? ~0ull : ((1ull << g.n) - 1);
        for (auto& w : r.rows_) w = row;
        return r;
    }

    GroundSet ground() const { return ground_; }
    int size() const { return ground_.n; }

    bool contains(int x, int y) const {
        check_index(x);
        check_index(y);
        return (rows_[x] >> y) & 1u;
    }

    void add(int x, int y) {
        check_index(x);
        check_index(y);
        rows_[x] |= 1ull << y;
    }

    std::uint64_t row(int x) const { return rows_[x]; }

    int pair_count() const {
        int c = 0;
        for (auto w : rows_) c += std::popcount(w);
        return c;
    }

    bool is_empty() const {
        for (auto w : rows_) if (w) return false;
        return true;
    }

    // Index of the least pair in row-major order, or nullopt when empty.
    std::optional<int> least_pair() const {
        for (int i = 0; i < size(); ++i)
            if (rows_[i]) return i * size() + std::countr_zero(rows_[i]);
        return std::nullopt;
    }

    BinaryRelation transpose() const {
        BinaryRelation t(ground_);
        for (int i = 0; i < size(); ++i)
            for (std::uint64_t w = rows_[i]; w; w &= w - 1)
                t.add(std::countr_zero(w), i);
        return t;
    }

    BinaryRelation unite(const BinaryRelation& other) const {
        require_same_ground(other);
        BinaryRelation r(ground_);
        for (int i = 0; i < size(); ++i) r.rows_[i] = rows_[i] | other.rows_[i];
        return r;
    }

    BinaryRelation intersect(const BinaryRelation& other) const {
        require_same_ground(other);
        BinaryRelation r(ground_);
        for (int i = 0; i < size(); ++i) r.rows_[i] = rows_[i] & other.rows_[i];
        return r;
    }

    BinaryRelation complement() const {
        BinaryRelation r(ground_);
        const std::uint64_t mask = (size() == 64) ? ~0ull : ((1ull << size()) - 1);
        for (int i = 0; i < size(); ++i) r.rows_[i] = ~rows_[i] & mask;
        return r;
    }

    bool subset_of(const BinaryRelation& other) const {
        require_same_ground(other);
        for (int i = 0; i < size(); ++i)
            if (rows_[i] & ~other.rows_[i]) return false;
        return true;
    }

    bool is_symmetric() const {
        for (int i = 0; i < size(); ++i)
            for (std::uint64_t w = rows_[i]; w; w &= w - 1)
                if (!contains(std::countr_zero(w), i)) return false;
        return true;
    }

    friend bool operator==(const BinaryRelation& a, const BinaryRelation& b) {
        return a.ground_ == b.ground_ && a.rows_ == b.rows_;
    }

    std::size_t hash() const {
        std::size_t h = static_cast<std::size_t>(ground_.n);
        for (auto w : rows_) h = h * 1099511628211ull ^ w;
        return h;
    }

private:
    void check_index(int x) const {
        if (x < 0 || x >= ground_.n) throw std::out_of_range("element index out of range");
    }
    void require_same_ground(const BinaryRelation& other) const {
        if (!(ground_ == other.ground_))
            throw std::invalid_argument("binary relations over different ground sets");
    }

    GroundSet ground_;
    std::vector<std::uint64_t> rows_;
};

struct BinaryRelationHash {
    std::size_t operator()(const BinaryRelation& r) const { return r.hash(); }
};

// Boolean matrix product: <x, y> in r∘s iff some z has <x, z> in r, <z, y> in s.
inline BinaryRelation compose(const BinaryRelation& r, const BinaryRelation& s) {
    if (!(r.ground() == s.ground()))
        throw std::invalid_argument("compose: ground-set mismatch");
    BinaryRelation out(r.ground());
    std::vector<std::uint64_t> rows(r.size());
    for (int i = 0; i < r.size(); ++i) {
        std::uint64_t acc = 0;
        for (std::uint64_t w = r.row(i); w; w &= w - 1) acc |= s.row(std::countr_zero(w));
        for (std::uint64_t a = acc; a; a &= a - 1) out.add(i, std::countr_zero(a));
    }
    return out;
}

inline EquivalenceVerdict is_equivalence(const BinaryRelation& r) {
    const int n = r.size();
    for (int x = 0; x < n; ++x)
        if (!r.contains(x, x)) return {false, EqAxiom::reflexivity, {x, -1, -1}};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (r.contains(x, y) && !r.contains(y, x))
                return {false, EqAxiom::symmetry, {x, y, -1}};
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            if (!r.contains(x, y)) continue;
            for (int z = 0; z < n; ++z)
                if (r.contains(y, z) && !r.contains(x, z))
                    return {false, EqAxiom::transitivity, {x, y, z}};
        }
    return {};
}

struct NotAnEquivalence : std::invalid_argument {
    EquivalenceVerdict verdict;
    explicit NotAnEquivalence(EquivalenceVerdict v)
        : std::invalid_argument(std::string("relation is not an equivalence: ") +
                                to_string(v.failed) + " fails"),
          verdict(v) {}
};

// Partition of the ground set in canonical form: blocks ordered by least
// element, elements ascending within a block.
class Partition {
public:
    Partition(GroundSet g, std::vector<std::vector<int>> blocks) : ground_(g) {
        std::vector<char> seen(g.n, 0);
        for (auto& b : blocks) {
            if (b.empty()) throw std::invalid_argument("partition has an empty block");
            std::sort(b.begin(), b.end());
            for (int x : b) {
                if (x < 0 || x >= g.n) throw std::invalid_argument("partition element out of range");
                if (seen[x]) throw std::invalid_argument("partition blocks overlap");
                seen[x] = 1;
            }
        }
        for (int x = 0; x < g.n; ++x)
            if (!seen[x]) throw std::invalid_argument("partition does not cover the ground set");
        std::sort(blocks.begin(), blocks.end(),
                  [](const auto& a, const auto& b) { return a.front() < b.front(); });
        blocks_ = std::move(blocks);
        block_of_.assign(g.n, -1);
        for (int b = 0; b < static_cast<int>(blocks_.size()); ++b)
            for (int x : blocks_[b]) block_of_[x] = b;
    }

    static Partition singletons(GroundSet g) {
        std::vector<std::vector<int>> blocks;
        for (int i = 0; i < g.n; ++i) blocks.push_back({i});
        return Partition(g, std::move(blocks));
    }

    GroundSet ground() const { return ground_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<std::vector<int>>& blocks() const { return blocks_; }
    int block_of(int x) const { return block_of_.at(x); }

    // Multiset of block sizes, descending; invariant of the similarity class.
    std::vector<int> size_multiset() const {
        std::vector<int> sizes;
        for (const auto& b : blocks_) sizes.push_back(static_cast<int>(b.size()));
        std::sort(sizes.rbegin(), sizes.rend());
        return sizes;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.ground_ == b.ground_ && a.blocks_ == b.blocks_;
    }

private:
    GroundSet ground_;
    std::vector<std::vector<int>> blocks_;
    std::vector<int> block_of_;
};

inline Partition partition_from_equivalence(const BinaryRelation& r) {
    if (auto v = is_equivalence(r); !v) throw NotAnEquivalence(v);
    const int n = r.size();
    std::vector<char> done(n, 0);
    std::vector<std::vector<int>> blocks;
    for (int x = 0; x < n; ++x) {
        if (done[x]) continue;
        std::vector<int> block;
        for (int y = 0; y < n; ++y)
            if (r.contains(x, y)) {
                block.push_back(y);
                done[y] = 1;
            }
        blocks.push_back(std::move(block));
    }
    return Partition(r.ground(), std::move(blocks));
}

// R = union of block squares; inverse of partition_from_equivalence.
inline BinaryRelation equivalence_from_partition(const Partition& p) {
    BinaryRelation r(p.ground());
    for (const auto& block : p.blocks())
        for (int x : block)
            for (int y : block) r.add(x, y);
    return r;
}

// Partition of X^2 into disjoint relations, blocks ordered by least pair.
class SquarePartition {
public:
    SquarePartition(GroundSet g, std::vector<BinaryRelation> blocks) : ground_(g) {
        BinaryRelation covered(g);
        for (const auto& b : blocks) {
            if (!(b.ground() == g))
                throw std::invalid_argument("square-partition block over wrong ground set");
            if (b.is_empty()) throw std::invalid_argument("square-partition block is empty");
            if (!covered.intersect(b).is_empty())
                throw std::invalid_argument("square-partition blocks overlap");
            covered = covered.unite(b);
        }
        if (!(covered == BinaryRelation::full(g)))
            throw std::invalid_argument("square-partition blocks do not cover X^2");
        std::sort(blocks.begin(), blocks.end(), [](const auto& a, const auto& b) {
            return *a.least_pair() < *b.least_pair();
        });
        blocks_ = std::move(blocks);
    }

    GroundSet ground() const { return ground_; }
    int block_count() const { return static_cast<int>(blocks_.size()); }
    const std::vector<BinaryRelation>& blocks() const { return blocks_; }

    // Symmetric iff every block is a symmetric relation.
    bool is_symmetric() const {
        for (const auto& b : blocks_)
            if (!b.is_symmetric()) return false;
        return true;
    }

    friend bool operator==(const SquarePartition& a, const SquarePartition& b) {
        return a.ground_ == b.ground_ && a.blocks_ == b.blocks_;
    }

private:
    GroundSet ground_;
    std::vector<BinaryRelation> blocks_;
};

// P (x) P_S^1: the union-of-squares block plus one symmetrized rectangle per
// unordered pair of distinct blocks. 1 + k(k-1)/2 blocks in total.
inline SquarePartition sym_tensor_s1(const Partition& p) {
    std::vector<BinaryRelation> blocks;
    blocks.push_back(equivalence_from_partition(p));
    const int k = p.block_count();
    for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j) {
            BinaryRelation b(p.ground());
            for (int x : p.blocks()[i])
                for (int y : p.blocks()[j]) {
                    b.add(x, y);
                    b.add(y, x);
                }
            blocks.push_back(std::move(b));
        }
    return SquarePartition(p.ground(), std::move(blocks));
}

// P (x) P: all k^2 plain rectangles X_i x X_j.
inline SquarePartition rect_tensor(const Partition& p) {
    std::vector<BinaryRelation> blocks;
    const int k = p.block_count();
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            BinaryRelation b(p.ground());
            for (int x : p.blocks()[i])
                for (int y : p.blocks()[j]) b.add(x, y);
            blocks.push_back(std::move(b));
        }
    return SquarePartition(p.ground(), std::move(blocks));
}

inline bool is_symmetric_square_partition(const SquarePartition& q) {
    return q.is_symmetric();
}

}  // namespace combsim
