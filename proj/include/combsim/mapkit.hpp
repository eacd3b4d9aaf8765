#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "relcore.hpp"

namespace combsim {

// Ordered list of distinct interned labels; index order is canonical.
class SymbolAlphabet {
public:
    explicit SymbolAlphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
        std::set<std::string> uniq(symbols_.begin(), symbols_.end());
        if (uniq.size() != symbols_.size())
            throw std::invalid_argument("alphabet has duplicate symbols");
        if (symbols_.empty()) throw std::invalid_argument("alphabet is empty");
    }

    int size() const { return static_cast<int>(symbols_.size()); }
    const std::string& label(int i) const { return symbols_.at(i); }
    const std::vector<std::string>& labels() const { return symbols_; }

    std::optional<int> index_of(const std::string& label) const {
        auto it = std::find(symbols_.begin(), symbols_.end(), label);
        if (it == symbols_.end()) return std::nullopt;
        return static_cast<int>(it - symbols_.begin());
    }

    friend bool operator==(const SymbolAlphabet&, const SymbolAlphabet&) = default;

private:
    std::vector<std::string> symbols_;
};

struct SymmetryVerdict {
    bool ok = true;
    int x = -1, y = -1;  // witness pair with Phi(x,y) != Phi(y,x)
    explicit operator bool() const { return ok; }
};

struct CoherenceVerdict {
    bool ok = true;
    bool equivalence_failed = false;        // which half of Def. of coherence failed
    EquivalenceVerdict equivalence{};       // set when equivalence_failed
    std::array<int, 4> quadruple{-1, -1, -1, -1};  // x1~x2, x3~x4, Phi(x1,x3)!=Phi(x2,x4)
    explicit operator bool() const { return ok; }
};

// Total symmetric-valued mapping Phi: X^2 -> A; the alphabet is exactly the image.
class SymMapping {
public:
    SymMapping(GroundSet g, SymbolAlphabet alphabet, std::vector<int> table)
        : ground_(g), alphabet_(std::move(alphabet)), table_(std::move(table)) {
        if (static_cast<int>(table_.size()) != g.n * g.n)
            throw std::invalid_argument("mapping table has wrong dimensions");
        std::vector<char> used(alphabet_.size(), 0);
        for (int s : table_) {
            if (s < 0 || s >= alphabet_.size())
                throw std::invalid_argument("mapping table entry is not an alphabet symbol");
            used[s] = 1;
        }
        for (int a = 0; a < alphabet_.size(); ++a)
            if (!used[a])
                throw std::invalid_argument("alphabet symbol '" + alphabet_.label(a) +
                                            "' does not occur in the table");
    }

    GroundSet ground() const { return ground_; }
    int size() const { return ground_.n; }
    const SymbolAlphabet& alphabet() const { return alphabet_; }

    int at(int x, int y) const { return table_.at(x * ground_.n + y); }

    BinaryRelation fiber(int symbol) const {
        require_symbol(symbol);
        BinaryRelation r(ground_);
        for (int x = 0; x < size(); ++x)
            for (int y = 0; y < size(); ++y)
                if (at(x, y) == symbol) r.add(x, y);
        return r;
    }

    // P_{Phi^-1}: one nonempty block per symbol.
    std::vector<BinaryRelation> fibers() const {
        std::vector<BinaryRelation> out;
        for (int a = 0; a < alphabet_.size(); ++a) out.push_back(fiber(a));
        return out;
    }

    SquarePartition fiber_partition() const { return SquarePartition(ground_, fibers()); }

    friend bool operator==(const SymMapping&, const SymMapping&) = default;

private:
    void require_symbol(int s) const {
        if (s < 0 || s >= alphabet_.size()) throw std::invalid_argument("unknown symbol");
    }

    GroundSet ground_;
    SymbolAlphabet alphabet_;
    std::vector<int> table_;

    friend SymmetryVerdict is_symmetric(const SymMapping&);
};

inline SymmetryVerdict is_symmetric(const SymMapping& phi) {
    for (int x = 0; x < phi.size(); ++x)
        for (int y = x + 1; y < phi.size(); ++y)
            if (phi.at(x, y) != phi.at(y, x)) return {false, x, y};
    return {};
}

// a0-coherence: the fiber at a0 is an equivalence and Phi is constant on
// C_i x C_j for every pair of its classes (equivalent to implication (2.6),
// checked in O(n^2 k^2) rather than over all quadruples).
inline CoherenceVerdict is_coherent(const SymMapping& phi, int a0) {
    if (a0 < 0 || a0 >= phi.alphabet().size()) throw std::invalid_argument("unknown symbol");
    const BinaryRelation fiber = phi.fiber(a0);
    if (auto eq = is_equivalence(fiber); !eq) {
        CoherenceVerdict v;
        v.ok = false;
        v.equivalence_failed = true;
        v.equivalence = eq;
        return v;
    }
    const Partition classes = partition_from_equivalence(fiber);
    for (const auto& ci : classes.blocks())
        for (const auto& cj : classes.blocks()) {
            const int ref = phi.at(ci.front(), cj.front());
            for (int x : ci)
                for (int y : cj)
                    if (phi.at(x, y) != ref) {
                        CoherenceVerdict v;
                        v.ok = false;
                        v.quadruple = {ci.front(), x, cj.front(), y};
                        return v;
                    }
        }
    return {};
}

// The at most one symbol a0 with Phi a0-coherent (uniqueness is a theorem;
// a second hit indicates a library bug).
inline std::optional<int> coherence_point(const SymMapping& phi) {
    std::optional<int> found;
    for (int a = 0; a < phi.alphabet().size(); ++a) {
        if (!is_coherent(phi, a)) continue;
        if (found) throw std::logic_error("two distinct coherence points found");
        found = a;
    }
    return found;
}

// --- group-homomorphism instance generator -------------------------------

namespace detail {

inline void require_group(const std::vector<std::vector<int>>& table, const char* name) {
    const int k = static_cast<int>(table.size());
    if (k == 0) throw std::invalid_argument(std::string(name) + ": empty table");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != k)
            throw std::invalid_argument(std::string(name) + ": table is not square");
        for (int v : row)
            if (v < 0 || v >= k)
                throw std::invalid_argument(std::string(name) + ": entry out of range");
    }
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b)
            for (int c = 0; c < k; ++c)
                if (table[table[a][b]][c] != table[a][table[b][c]])
                    throw std::invalid_argument(std::string(name) + ": not associative");
    int e = -1;
    for (int cand = 0; cand < k; ++cand) {
        bool ident = true;
        for (int a = 0; a < k; ++a)
            ident = ident && table[cand][a] == a && table[a][cand] == a;
        if (ident) { e = cand; break; }
    }
    if (e < 0) throw std::invalid_argument(std::string(name) + ": no identity element");
    for (int a = 0; a < k; ++a) {
        bool inv = false;
        for (int b = 0; b < k; ++b) inv = inv || table[a][b] == e;
        if (!inv) throw std::invalid_argument(std::string(name) + ": element has no inverse");
    }
}

inline int group_identity(const std::vector<std::vector<int>>& table) {
    const int k = static_cast<int>(table.size());
    for (int cand = 0; cand < k; ++cand) {
        bool ident = true;
        for (int a = 0; a < k; ++a)
            ident = ident && table[cand][a] == a && table[a][cand] == a;
        if (ident) return cand;
    }
    throw std::logic_error("group without identity");
}

inline int group_inverse(const std::vector<std::vector<int>>& table, int x) {
    const int e = group_identity(table);
    for (int b = 0; b < static_cast<int>(table.size()); ++b)
        if (table[x][b] == e) return b;
    throw std::logic_error("group element without inverse");
}

}  // namespace detail

// Phi(x, y) = F(x^-1 * y) for a verified group homomorphism F: G -> H.
// Always e-coherent at the identity of H; used as a test-instance generator.
inline SymMapping from_group_hom(const std::vector<std::vector<int>>& g_table,
                                 const std::vector<std::vector<int>>& h_table,
                                 const std::vector<int>& f) {
    detail::require_group(g_table, "G");
    detail::require_group(h_table, "H");
    const int gk = static_cast<int>(g_table.size());
    if (static_cast<int>(f.size()) != gk)
        throw std::invalid_argument("homomorphism must be defined on all of G");
    for (int v : f)
        if (v < 0 || v >= static_cast<int>(h_table.size()))
            throw std::invalid_argument("homomorphism image out of range");
    for (int a = 0; a < gk; ++a)
        for (int b = 0; b < gk; ++b)
            if (f[g_table[a][b]] != h_table[f[a]][f[b]])
                throw std::invalid_argument("mapping G -> H is not a homomorphism");

    GroundSet ground(gk);
    // intern only the symbols that actually occur
    std::vector<int> raw(gk * gk);
    std::vector<char> used(h_table.size(), 0);
    for (int x = 0; x < gk; ++x)
        for (int y = 0; y < gk; ++y) {
            const int h = f[g_table[detail::group_inverse(g_table, x)][y]];
            raw[x * gk + y] = h;
            used[h] = 1;
        }
    std::vector<std::string> labels;
    std::vector<int> remap(h_table.size(), -1);
    for (int h = 0; h < static_cast<int>(h_table.size()); ++h)
        if (used[h]) {
            remap[h] = static_cast<int>(labels.size());
            labels.push_back("h" + std::to_string(h));
        }
    for (int& v : raw) v = remap[v];
    return SymMapping(ground, SymbolAlphabet(std::move(labels)), std::move(raw));
}

}  // namespace combsim
