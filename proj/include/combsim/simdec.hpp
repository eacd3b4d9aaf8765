#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "mapkit.hpp"
#include "pmetric.hpp"
#include "rational.hpp"
#include "relcore.hpp"

namespace combsim {

// Pair of bijections (g on points, f on symbols) making the similarity
// diagram commute: psi(y1, y2) = f(phi(g(y1), g(y2))).
struct SimilarityWitness {
    std::vector<int> g;  // Y element -> X element
    std::vector<int> f;  // phi symbol -> psi symbol

    bool verify(const SymMapping& phi, const SymMapping& psi) const {
        const int n = psi.size();
        if (phi.size() != n) return false;
        if (static_cast<int>(g.size()) != n) return false;
        if (static_cast<int>(f.size()) != phi.alphabet().size()) return false;
        if (phi.alphabet().size() != psi.alphabet().size()) return false;
        std::vector<char> gseen(n, 0), fseen(f.size(), 0);
        for (int v : g) {
            if (v < 0 || v >= n || gseen[v]) return false;
            gseen[v] = 1;
        }
        for (int v : f) {
            if (v < 0 || v >= static_cast<int>(f.size()) || fseen[v]) return false;
            fseen[v] = 1;
        }
        for (int y1 = 0; y1 < n; ++y1)
            for (int y2 = 0; y2 < n; ++y2)
                if (psi.at(y1, y2) != f[phi.at(g[y1], g[y2])]) return false;
        return true;
    }

    SimilarityWitness inverted() const {
        SimilarityWitness inv;
        inv.g.resize(g.size());
        inv.f.resize(f.size());
        for (int i = 0; i < static_cast<int>(g.size()); ++i) inv.g[g[i]] = i;
        for (int i = 0; i < static_cast<int>(f.size()); ++i) inv.f[f[i]] = i;
        return inv;
    }

    // Witness for phi ~ chi given this: phi ~ psi and other: psi ~ chi.
    SimilarityWitness composed(const SimilarityWitness& other) const {
        SimilarityWitness out;
        out.g.resize(other.g.size());
        out.f.resize(f.size());
        for (int z = 0; z < static_cast<int>(other.g.size()); ++z) out.g[z] = g[other.g[z]];
        for (int a = 0; a < static_cast<int>(f.size()); ++a) out.f[a] = other.f[f[a]];
        return out;
    }
};

enum class SimOutcome { similar, not_similar, undecided };

struct SimResult {
    SimOutcome outcome;
    std::optional<SimilarityWitness> witness;
    std::string refutation;  // set for not_similar / undecided
    long long nodes = 0;

    bool similar() const { return outcome == SimOutcome::similar; }
};

namespace detail {

// Per-element invariant: multiset over symbols of (row count, column count,
// diagonal flag). A necessary match for x and g(x); prunes the search hard.
inline std::vector<std::tuple<int, int, bool>> element_profile(const SymMapping& m, int x) {
    const int n = m.size();
    const int k = m.alphabet().size();
    std::vector<int> rows(k, 0), cols(k, 0);
    for (int y = 0; y < n; ++y) {
        ++rows[m.at(x, y)];
        ++cols[m.at(y, x)];
    }
    std::vector<std::tuple<int, int, bool>> profile;
    for (int a = 0; a < k; ++a)
        if (rows[a] || cols[a]) profile.emplace_back(rows[a], cols[a], m.at(x, x) == a);
    std::sort(profile.begin(), profile.end());
    return profile;
}

struct SimSearch {
    const SymMapping& phi;
    const SymMapping& psi;
    long long cap;
    long long nodes = 0;
    bool cap_hit = false;
    int n;
    std::vector<int> g;           // psi element -> phi element, -1 unassigned
    std::vector<char> used;       // phi elements already hit
    std::vector<int> f;           // phi symbol -> psi symbol, -1 unassigned
    std::vector<int> f_inv;       // psi symbol -> phi symbol
    std::vector<std::vector<std::tuple<int, int, bool>>> profile_x, profile_y;

    SimSearch(const SymMapping& a, const SymMapping& b, long long node_cap)
        : phi(a), psi(b), cap(node_cap), n(a.size()) {
        g.assign(n, -1);
        used.assign(n, 0);
        f.assign(phi.alphabet().size(), -1);
        f_inv.assign(psi.alphabet().size(), -1);
        for (int x = 0; x < n; ++x) profile_x.push_back(element_profile(phi, x));
        for (int y = 0; y < n; ++y) profile_y.push_back(element_profile(psi, y));
    }

    bool bind(int a_phi, int a_psi, std::vector<std::pair<int, int>>& trail) {
        if (f[a_phi] == a_psi) return true;
        if (f[a_phi] != -1 || f_inv[a_psi] != -1) return false;
        f[a_phi] = a_psi;
        f_inv[a_psi] = a_phi;
        trail.emplace_back(a_phi, a_psi);
        return true;
    }

    bool search(int y) {
        if (y == n) return true;
        for (int x = 0; x < n; ++x) {
            if (used[x]) continue;
            if (++nodes > cap) {
                cap_hit = true;
                return false;
            }
            if (profile_x[x] != profile_y[y]) continue;
            std::vector<std::pair<int, int>> trail;
            bool ok = true;
            g[y] = x;
            used[x] = 1;
            for (int y2 = 0; y2 <= y && ok; ++y2) {
                ok = bind(phi.at(x, g[y2]), psi.at(y, y2), trail) &&
                     bind(phi.at(g[y2], x), psi.at(y2, y), trail);
            }
            if (ok && search(y + 1)) return true;
            for (auto [ap, as] : trail) {
                f[ap] = -1;
                f_inv[as] = -1;
            }
            g[y] = -1;
            used[x] = 0;
            if (cap_hit) return false;
        }
        return false;
    }
};

}  // namespace detail

// Backtracking decision of combinatorial similarity between two mappings.
// The first witness in lexicographic g-order is returned and re-verified.
inline SimResult decide_comb_similar(const SymMapping& phi, const SymMapping& psi,
                                     long long node_cap = 10'000'000) {
    if (phi.size() != psi.size())
        return {SimOutcome::not_similar, std::nullopt, "ground-set sizes differ", 0};
    if (phi.alphabet().size() != psi.alphabet().size())
        return {SimOutcome::not_similar, std::nullopt, "image sizes differ", 0};

    auto fiber_sizes = [](const SymMapping& m) {
        std::vector<int> sizes;
        for (const auto& b : m.fibers()) sizes.push_back(b.pair_count());
        std::sort(sizes.begin(), sizes.end());
        return sizes;
    };
    if (fiber_sizes(phi) != fiber_sizes(psi))
        return {SimOutcome::not_similar, std::nullopt, "fiber-size multisets differ", 0};

    detail::SimSearch search(phi, psi, node_cap);
    if (search.search(0)) {
        SimilarityWitness w{search.g, search.f};
        if (!w.verify(phi, psi)) throw std::logic_error("similarity witness failed re-verification");
        return {SimOutcome::similar, std::move(w), "", search.nodes};
    }
    if (search.cap_hit)
        return {SimOutcome::undecided, std::nullopt, "undecided: node cap exceeded", search.nodes};
    return {SimOutcome::not_similar, std::nullopt, "exhausted search", search.nodes};
}

// --- similarity to pseudometric classes ----------------------------------

enum class PseudometricClass { general, ptolemaic, metric, discrete, strongly_rigid };

inline const char* to_string(PseudometricClass c) {
    switch (c) {
        case PseudometricClass::general: return "general";
        case PseudometricClass::ptolemaic: return "ptolemaic";
        case PseudometricClass::metric: return "metric";
        case PseudometricClass::discrete: return "discrete";
        case PseudometricClass::strongly_rigid: return "strongly_rigid";
    }
    return "?";
}

struct PseudometricWitness {
    Pseudometric d;
    std::vector<Rational> value_of_symbol;  // f: symbol index -> distance value
    PseudometricClass cls;

    // Exact re-validation: f(a0) = 0, f injective, nonzero values in [1, 4/3],
    // the diagram commutes, and d is Ptolemaic.
    bool verify(const SymMapping& phi) const {
        if (d.size() != phi.size()) return false;
        if (static_cast<int>(value_of_symbol.size()) != phi.alphabet().size()) return false;
        for (std::size_t a = 0; a < value_of_symbol.size(); ++a) {
            const Rational& v = value_of_symbol[a];
            if (v != Rational(0) && (v < Rational(1) || v > Rational(4, 3))) return false;
            for (std::size_t b = a + 1; b < value_of_symbol.size(); ++b)
                if (v == value_of_symbol[b]) return false;
        }
        for (int x = 0; x < phi.size(); ++x)
            for (int y = 0; y < phi.size(); ++y)
                if (d.at(x, y) != value_of_symbol[phi.at(x, y)]) return false;
        return static_cast<bool>(is_ptolemaic(d));
    }
};

struct PseudometricDecision {
    bool yes;
    std::optional<PseudometricWitness> witness;
    std::string refutation;

    explicit operator bool() const { return yes; }
};

namespace detail {

// Witness value scheme: f(a0) = 0 and the i-th nonzero symbol in canonical
// alphabet order gets 1 + i/(3m). Injective, exact, strictly inside [1, 4/3],
// so the triangle and Ptolemy arguments hold with room to spare.
inline PseudometricWitness build_pseudometric_witness(const SymMapping& phi, int a0,
                                                      PseudometricClass cls) {
    const int k = phi.alphabet().size();
    const long long m = k - 1;
    std::vector<Rational> values(k);
    long long next = 0;
    for (int a = 0; a < k; ++a) {
        if (a == a0) continue;
        values[a] = Rational(1) + Rational(next++, 3 * m);
    }
    std::vector<Rational> dist;
    dist.reserve(phi.size() * phi.size());
    for (int x = 0; x < phi.size(); ++x)
        for (int y = 0; y < phi.size(); ++y) dist.push_back(values[phi.at(x, y)]);
    PseudometricWitness w{Pseudometric::require(phi.ground(), std::move(dist)),
                          std::move(values), cls};
    if (!w.verify(phi)) throw std::logic_error("pseudometric witness failed re-verification");
    return w;
}

}  // namespace detail

// Phi ~ some pseudometric iff Phi is symmetric and has a coherence point
// (the cardinality bound is vacuous on finite alphabets). The constructed
// witness is always Ptolemaic.
inline PseudometricDecision pseudometric_similar(const SymMapping& phi) {
    if (!is_symmetric(phi)) return {false, std::nullopt, "mapping is not symmetric"};
    const auto a0 = coherence_point(phi);
    if (!a0) return {false, std::nullopt, "no coherence point"};
    auto w = detail::build_pseudometric_witness(phi, *a0, PseudometricClass::ptolemaic);
    return {true, std::move(w), ""};
}

// Phi ~ some (Ptolemaic) metric iff symmetric and some fiber is exactly the diagonal.
inline PseudometricDecision metric_similar(const SymMapping& phi) {
    if (!is_symmetric(phi)) return {false, std::nullopt, "mapping is not symmetric"};
    const BinaryRelation diag = BinaryRelation::diagonal(phi.ground());
    for (int a = 0; a < phi.alphabet().size(); ++a)
        if (phi.fiber(a) == diag) {
            auto w = detail::build_pseudometric_witness(phi, a, PseudometricClass::metric);
            if (!(zero_relation(w.d) == diag))
                throw std::logic_error("metric witness has nontrivial zero relation");
            return {true, std::move(w), ""};
        }
    return {false, std::nullopt, "no fiber equals the diagonal"};
}

// Phi ~ some discrete pseudometric iff |Phi(X^2)| <= 2 and some fiber is an
// equivalence relation (symmetry of Phi is then implied).
inline PseudometricDecision discrete_similar(const SymMapping& phi) {
    if (phi.alphabet().size() > 2)
        return {false, std::nullopt, "image has more than two symbols"};
    for (int a = 0; a < phi.alphabet().size(); ++a) {
        if (!is_equivalence(phi.fiber(a))) continue;
        if (!is_symmetric(phi)) throw std::logic_error("discrete mapping unexpectedly asymmetric");
        PseudometricWitness w{discrete_from_equivalence(phi.fiber(a)), {}, PseudometricClass::discrete};
        w.value_of_symbol.assign(phi.alphabet().size(), Rational(1));
        w.value_of_symbol[a] = Rational(0);
        if (!w.verify(phi)) throw std::logic_error("discrete witness failed re-verification");
        return {true, std::move(w), ""};
    }
    return {false, std::nullopt, "no fiber is an equivalence relation"};
}

// Phi ~ some strongly rigid pseudometric iff the fiber partition is a
// P (x) P_S^1 tensor: the diagonal-carrying fiber is an equivalence whose
// class partition P satisfies sym_tensor_s1(P) = P_{Phi^-1}. The metric
// variant additionally requires the diagonal fiber to equal the diagonal.
inline PseudometricDecision strongly_rigid_similar(const SymMapping& phi,
                                                   bool require_metric = false) {
    int a0 = -1;
    const BinaryRelation diag = BinaryRelation::diagonal(phi.ground());
    for (int a = 0; a < phi.alphabet().size(); ++a)
        if (diag.subset_of(phi.fiber(a))) {
            a0 = a;
            break;
        }
    if (a0 < 0) return {false, std::nullopt, "no fiber contains the full diagonal"};
    const BinaryRelation fiber0 = phi.fiber(a0);
    if (auto eq = is_equivalence(fiber0); !eq)
        return {false, std::nullopt,
                std::string("diagonal fiber is not an equivalence: ") + to_string(eq.failed) +
                    " fails"};
    if (require_metric && !(fiber0 == diag))
        return {false, std::nullopt, "diagonal fiber is strictly larger than the diagonal"};
    const Partition p = partition_from_equivalence(fiber0);
    if (!(sym_tensor_s1(p) == phi.fiber_partition()))
        return {false, std::nullopt, "fiber partition is not P (x) P_S^1 of the diagonal classes"};
    auto w = detail::build_pseudometric_witness(phi, a0, PseudometricClass::strongly_rigid);
    if (!is_strongly_rigid(w.d)) throw std::logic_error("rigid witness failed rigidity re-check");
    return {true, std::move(w), ""};
}

}  // namespace combsim
