#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "mapkit.hpp"
#include "pmetric.hpp"
#include "relcore.hpp"
#include "simdec.hpp"

namespace combsim {

struct CapExceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Abstract finite semigroup: order plus Cayley table, associativity checked
// eagerly at construction.
class FiniteSemigroup {
public:
    FiniteSemigroup(int order, std::vector<int> cayley, std::vector<std::string> labels = {})
        : order_(order), cayley_(std::move(cayley)), labels_(std::move(labels)) {
        if (order_ < 1) throw std::invalid_argument("semigroup must be nonempty");
        if (static_cast<int>(cayley_.size()) != order_ * order_)
            throw std::invalid_argument("Cayley table has wrong dimensions");
        for (int v : cayley_)
            if (v < 0 || v >= order_)
                throw std::invalid_argument("Cayley table entry out of range");
        if (!labels_.empty() && static_cast<int>(labels_.size()) != order_)
            throw std::invalid_argument("label list has wrong length");
        for (int a = 0; a < order_; ++a)
            for (int b = 0; b < order_; ++b)
                for (int c = 0; c < order_; ++c)
                    if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                        throw std::invalid_argument("operation is not associative");
    }

    int order() const { return order_; }
    int mul(int a, int b) const { return cayley_[a * order_ + b]; }
    const std::vector<int>& cayley() const { return cayley_; }

    std::string label(int i) const {
        return labels_.empty() ? "s" + std::to_string(i) : labels_[i];
    }

    std::optional<int> identity() const {
        for (int e = 0; e < order_; ++e) {
            bool ok = true;
            for (int a = 0; a < order_ && ok; ++a) ok = mul(e, a) == a && mul(a, e) == a;
            if (ok) return e;
        }
        return std::nullopt;
    }

    std::optional<int> zero() const {
        if (order_ == 1) return std::nullopt;  // one-point semigroup: identity, not zero
        for (int z = 0; z < order_; ++z) {
            bool ok = true;
            for (int a = 0; a < order_ && ok; ++a) ok = mul(z, a) == z && mul(a, z) == z;
            if (ok) return z;
        }
        return std::nullopt;
    }

    std::vector<int> idempotents() const {
        std::vector<int> out;
        for (int a = 0; a < order_; ++a)
            if (mul(a, a) == a) out.push_back(a);
        return out;
    }

    // Idempotents other than the zero / identity (when those exist).
    std::vector<int> nontrivial_idempotents() const {
        const auto e = identity();
        const auto z = zero();
        std::vector<int> out;
        for (int i : idempotents())
            if (i != e.value_or(-1) && i != z.value_or(-1)) out.push_back(i);
        return out;
    }

    // Subsemigroup on the given closed element subset, reindexed to 0..m-1.
    FiniteSemigroup restrict_to(const std::vector<int>& subset) const {
        std::vector<int> local(order_, -1);
        for (int i = 0; i < static_cast<int>(subset.size()); ++i) local[subset[i]] = i;
        std::vector<int> table(subset.size() * subset.size());
        std::vector<std::string> labels;
        for (int a : subset) labels.push_back(label(a));
        for (std::size_t a = 0; a < subset.size(); ++a)
            for (std::size_t b = 0; b < subset.size(); ++b) {
                const int p = mul(subset[a], subset[b]);
                if (local[p] < 0) throw std::invalid_argument("subset is not closed");
                table[a * subset.size() + b] = local[p];
            }
        return FiniteSemigroup(static_cast<int>(subset.size()), std::move(table),
                               std::move(labels));
    }

    friend bool operator==(const FiniteSemigroup& a, const FiniteSemigroup& b) {
        return a.order_ == b.order_ && a.cayley_ == b.cayley_;
    }

private:
    int order_;
    std::vector<int> cayley_;
    std::vector<std::string> labels_;
};

// Adjunction of an identity element when none exists (the S^1 construction).
inline FiniteSemigroup adjoin_identity(const FiniteSemigroup& s) {
    if (s.identity()) return s;
    const int k = s.order();
    std::vector<int> table((k + 1) * (k + 1));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) table[a * (k + 1) + b] = s.mul(a, b);
    for (int a = 0; a <= k; ++a) {
        table[a * (k + 1) + k] = a;
        table[k * (k + 1) + a] = a;
    }
    return FiniteSemigroup(k + 1, std::move(table));
}

// Semigroup of binary relations generated by closure under composition.
struct RelationSemigroup {
    GroundSet ground;
    std::vector<BinaryRelation> elements;  // generators first, then discovery order
    std::vector<int> cayley;               // k x k index table
    std::vector<int> generators;           // indices into elements

    int order() const { return static_cast<int>(elements.size()); }
    int mul(int a, int b) const { return cayley[a * order() + b]; }

    int index_of(const BinaryRelation& r) const {
        for (int i = 0; i < order(); ++i)
            if (elements[i] == r) return i;
        return -1;
    }

    FiniteSemigroup abstract() const {
        return FiniteSemigroup(order(), cayley);
    }
};

// Breadth-first closure under compose with hash-consed deduplication.
// Deterministic: products are taken in lexicographic index order, new
// elements appended in discovery order.
inline RelationSemigroup generate(const std::vector<BinaryRelation>& rels,
                                  int max_elements = 100000) {
    if (rels.empty()) throw std::invalid_argument("generate: empty generator list");
    const GroundSet g = rels.front().ground();
    for (const auto& r : rels)
        if (!(r.ground() == g)) throw std::invalid_argument("generate: ground-set mismatch");

    std::vector<BinaryRelation> elements;
    std::unordered_map<BinaryRelation, int, BinaryRelationHash> index;
    std::vector<int> generators;
    for (const auto& r : rels) {
        auto [it, fresh] = index.emplace(r, static_cast<int>(elements.size()));
        if (fresh) elements.push_back(r);
        generators.push_back(it->second);
    }

    std::vector<int> cayley;
    while (true) {
        const int k = static_cast<int>(elements.size());
        cayley.assign(k * k, -1);
        bool grew = false;
        for (int i = 0; i < k; ++i)
            for (int j = 0; j < k; ++j) {
                const BinaryRelation prod = compose(elements[i], elements[j]);
                auto [it, fresh] = index.emplace(prod, static_cast<int>(elements.size()));
                if (fresh) {
                    if (static_cast<int>(elements.size()) >= max_elements)
                        throw CapExceeded("closure exceeds the element cap");
                    elements.push_back(prod);
                    grew = true;
                }
                cayley[i * k + j] = it->second;
            }
        if (!grew) break;
    }
    return {g, std::move(elements), std::move(cayley), std::move(generators)};
}

struct StructureReport {
    std::optional<int> identity;
    std::optional<int> zero;
    std::vector<int> idempotents;
    std::vector<int> nontrivial_idempotents;
};

inline StructureReport structure(const FiniteSemigroup& s) {
    StructureReport r;
    r.identity = s.identity();
    r.zero = s.zero();
    if (s.order() == 1) r.zero = 0;  // |S| = 1: the element is both identity and zero
    r.idempotents = s.idempotents();
    r.nontrivial_idempotents = s.nontrivial_idempotents();
    return r;
}

inline StructureReport structure(const RelationSemigroup& s) { return structure(s.abstract()); }

// The two routes of the coherence <-> monoid theorem; they must agree, and a
// disagreement is a library bug, not an input property.
struct CoherenceMonoidCheck {
    bool def_route;
    bool monoid_route;
};

inline CoherenceMonoidCheck coherence_monoid_check(const SymMapping& phi, int a0,
                                                   int max_elements = 100000) {
    const bool def_route = static_cast<bool>(is_coherent(phi, a0));
    const RelationSemigroup closure = generate(phi.fibers(), max_elements);
    const auto e = closure.abstract().identity();
    const bool monoid_route = e && closure.elements[*e] == phi.fiber(a0);
    if (def_route != monoid_route)
        throw std::logic_error("coherence/monoid routes disagree");
    return {def_route, monoid_route};
}

// --- semigroup isomorphism -------------------------------------------------

struct IsoResult {
    bool isomorphic = false;
    std::vector<int> mapping;  // s1 element -> s2 element
    std::string refutation;
    long long nodes = 0;
};

namespace detail {

// Joint color refinement over two Cayley tables; shared palette so the
// resulting colors are comparable across the semigroups.
inline std::pair<std::vector<int>, std::vector<int>> joint_colors(const FiniteSemigroup& s1,
                                                                  const FiniteSemigroup& s2) {
    const int k1 = s1.order(), k2 = s2.order();
    auto initial = [](const FiniteSemigroup& s, int i) {
        const auto e = s.identity();
        const auto z = s.zero();
        return (s.mul(i, i) == i ? 4 : 0) + (e && *e == i ? 2 : 0) + (z && *z == i ? 1 : 0);
    };
    std::vector<int> c1(k1), c2(k2);
    for (int i = 0; i < k1; ++i) c1[i] = initial(s1, i);
    for (int i = 0; i < k2; ++i) c2[i] = initial(s2, i);

    for (int round = 0; round < k1 + 2; ++round) {
        using Sig = std::pair<int, std::vector<std::pair<int, std::pair<int, int>>>>;
        auto signature = [](const FiniteSemigroup& s, const std::vector<int>& c, int i) {
            Sig sig{c[i], {}};
            for (int j = 0; j < s.order(); ++j)
                sig.second.push_back({c[j], {c[s.mul(i, j)], c[s.mul(j, i)]}});
            std::sort(sig.second.begin(), sig.second.end());
            return sig;
        };
        std::map<Sig, int> palette;
        std::vector<int> n1(k1), n2(k2);
        for (int i = 0; i < k1; ++i)
            n1[i] = palette.emplace(signature(s1, c1, i), static_cast<int>(palette.size())).first->second;
        for (int i = 0; i < k2; ++i)
            n2[i] = palette.emplace(signature(s2, c2, i), static_cast<int>(palette.size())).first->second;
        if (n1 == c1 && n2 == c2) break;
        c1 = std::move(n1);
        c2 = std::move(n2);
    }
    return {c1, c2};
}

struct IsoSearch {
    const FiniteSemigroup& s1;
    const FiniteSemigroup& s2;
    const std::vector<int>& c1;
    const std::vector<int>& c2;
    long long cap;
    long long nodes = 0;
    bool cap_hit = false;
    std::vector<int> map;
    std::vector<char> used;

    bool consistent(int i) const {
        for (int j = 0; j <= i; ++j) {
            const int p = s1.mul(i, j), q = s1.mul(j, i);
            if (p <= i && map[p] != s2.mul(map[i], map[j])) return false;
            if (q <= i && map[q] != s2.mul(map[j], map[i])) return false;
            if (p > i || q > i) continue;
        }
        // products of earlier pairs that land on i
        for (int a = 0; a < i; ++a)
            for (int b = 0; b < i; ++b)
                if (s1.mul(a, b) == i && s2.mul(map[a], map[b]) != map[i]) return false;
        return true;
    }

    bool search(int i) {
        if (i == s1.order()) return true;
        for (int t = 0; t < s2.order(); ++t) {
            if (used[t] || c1[i] != c2[t]) continue;
            if (++nodes > cap) {
                cap_hit = true;
                return false;
            }
            map[i] = t;
            used[t] = 1;
            if (consistent(i) && search(i + 1)) return true;
            map[i] = -1;
            used[t] = 0;
            if (cap_hit) return false;
        }
        return false;
    }
};

}  // namespace detail

inline IsoResult iso(const FiniteSemigroup& s1, const FiniteSemigroup& s2,
                     long long node_cap = 10'000'000) {
    if (s1.order() != s2.order()) return {false, {}, "orders differ", 0};
    auto [c1, c2] = detail::joint_colors(s1, s2);
    auto m1 = c1, m2 = c2;
    std::sort(m1.begin(), m1.end());
    std::sort(m2.begin(), m2.end());
    if (m1 != m2) return {false, {}, "invariant fingerprints differ", 0};

    detail::IsoSearch search{s1, s2, c1, c2, node_cap, 0, false,
                             std::vector<int>(s1.order(), -1),
                             std::vector<char>(s2.order(), 0)};
    if (search.search(0)) {
        // full table check before returning
        for (int a = 0; a < s1.order(); ++a)
            for (int b = 0; b < s1.order(); ++b)
                if (search.map[s1.mul(a, b)] != s2.mul(search.map[a], search.map[b]))
                    throw std::logic_error("isomorphism candidate failed the table check");
        return {true, search.map, "", search.nodes};
    }
    if (search.cap_hit) throw CapExceeded("isomorphism search exceeded the node cap");
    return {false, {}, "exhausted search", search.nodes};
}

// --- induced isomorphisms ---------------------------------------------------

// Pushforward of a relation semigroup over Y through a point bijection
// g: Y -> X; the Cayley table is preserved elementwise, which is verified.
inline RelationSemigroup pushforward_iso(const std::vector<int>& g,
                                         const RelationSemigroup& sY, GroundSet x_ground) {
    const int n = sY.ground.n;
    if (x_ground.n != n || static_cast<int>(g.size()) != n)
        throw std::invalid_argument("pushforward: g is not a bijection onto the target ground");
    std::vector<char> seen(n, 0);
    for (int v : g) {
        if (v < 0 || v >= n || seen[v])
            throw std::invalid_argument("pushforward: g is not a bijection");
        seen[v] = 1;
    }
    auto push = [&](const BinaryRelation& a) {
        BinaryRelation out(x_ground);
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (a.contains(x, y)) out.add(g[x], g[y]);
        return out;
    };
    RelationSemigroup image{x_ground, {}, sY.cayley, sY.generators};
    for (const auto& a : sY.elements) image.elements.push_back(push(a));
    for (int i = 0; i < image.order(); ++i)
        for (int j = 0; j < image.order(); ++j)
            if (!(compose(image.elements[i], image.elements[j]) ==
                  image.elements[image.mul(i, j)]))
                throw std::logic_error("pushforward does not preserve the Cayley table");
    return image;
}

struct QuotientIso {
    RelationSemigroup source;   // B_X(P_{d^-1})
    RelationSemigroup target;   // B_{X/~0}(P_{d~^-1})
    std::vector<int> mapping;   // source element index -> target element index
};

// The block-collapse map of the metric-identification isomorphism, restricted
// to the generated semigroup and certified bijective + homomorphic.
inline QuotientIso quotient_iso(const Pseudometric& d, int max_elements = 100000) {
    RelationSemigroup source = generate(d.as_sym_mapping().fibers(), max_elements);
    const MetricIdentification ident = metric_identification(d);
    RelationSemigroup target =
        generate(ident.quotient_metric.as_sym_mapping().fibers(), max_elements);

    const GroundSet qground = ident.quotient_metric.ground();
    auto collapse = [&](const BinaryRelation& a) {
        BinaryRelation out(qground);
        for (int x = 0; x < d.size(); ++x)
            for (int y = 0; y < d.size(); ++y)
                if (a.contains(x, y)) out.add(ident.projection[x], ident.projection[y]);
        return out;
    };

    std::vector<int> mapping(source.order(), -1);
    std::vector<char> hit(target.order(), 0);
    for (int i = 0; i < source.order(); ++i) {
        const int t = target.index_of(collapse(source.elements[i]));
        if (t < 0) throw std::logic_error("quotient map leaves the target semigroup");
        if (hit[t]) throw std::logic_error("quotient map is not injective on the closure");
        hit[t] = 1;
        mapping[i] = t;
    }
    if (source.order() != target.order())
        throw std::logic_error("quotient map is not surjective");
    for (int i = 0; i < source.order(); ++i)
        for (int j = 0; j < source.order(); ++j)
            if (mapping[source.mul(i, j)] != target.mul(mapping[i], mapping[j]))
                throw std::logic_error("quotient map is not a homomorphism");
    return {std::move(source), std::move(target), std::move(mapping)};
}

// --- class H1 ----------------------------------------------------------------

struct H1Verdict {
    bool member = true;
    int failing_condition = 0;  // 1..5 when member is false
    std::string witness;
    explicit operator bool() const { return member; }
};

// Conditions (1)-(5) of the class of semigroups isomorphic to some
// B_X(P (x) P): zero, orthogonal idempotents, unique rectangle element per
// ordered pair of nontrivial idempotents, and nonzero composable products.
inline H1Verdict h1_check(const FiniteSemigroup& s) {
    if (s.order() == 1) return {};
    const auto zero = s.zero();
    if (!zero) return {false, 1, "no zero element"};
    const int th = *zero;
    const auto idems = s.idempotents();
    for (int x : idems)
        for (int y : idems)
            if (x != y && s.mul(x, y) != th)
                return {false, 2, s.label(x) + " * " + s.label(y) + " != zero"};
    const auto nontrivial = s.nontrivial_idempotents();
    for (int il : nontrivial)
        for (int ir : nontrivial) {
            int count = 0;
            for (int a = 0; a < s.order(); ++a)
                if (a != th && s.mul(s.mul(il, a), ir) == a) ++count;
            if (count != 1)
                return {false, 3,
                        "pair (" + s.label(il) + ", " + s.label(ir) + ") has " +
                            std::to_string(count) + " elements"};
        }
    for (int a = 0; a < s.order(); ++a) {
        if (a == th) continue;
        int count = 0;
        for (int il : nontrivial)
            for (int ir : nontrivial)
                if (s.mul(s.mul(il, a), ir) == a) ++count;
        if (count != 1)
            return {false, 4,
                    s.label(a) + " has " + std::to_string(count) + " idempotent pairs"};
    }
    for (int a = 0; a < s.order(); ++a)
        for (int b = 0; b < s.order(); ++b) {
            if (a == th || b == th) continue;
            for (int ila : nontrivial)
                for (int ira : nontrivial) {
                    if (s.mul(s.mul(ila, a), ira) != a) continue;
                    for (int ilb : nontrivial)
                        for (int irb : nontrivial) {
                            if (s.mul(s.mul(ilb, b), irb) != b) continue;
                            if (ira == ilb && s.mul(a, b) == th)
                                return {false, 5,
                                        s.label(a) + " * " + s.label(b) + " = zero despite " +
                                            "composable idempotent pairs"};
                        }
                }
        }
    return {};
}

struct H1Reconstruction {
    Partition point_partition;       // singletons over the nontrivial idempotents
    RelationSemigroup rectangles;    // S_{P (x) P}
    std::vector<int> iso_to_input;   // rectangle element index -> input element index
};

// Rebuilds the canonical rectangle semigroup of an H1 member and certifies
// the isomorphism F: empty -> zero, {<i1, i2>} -> the unique nonzero
// x = i1 * x * i2.
inline H1Reconstruction h1_reconstruct(const FiniteSemigroup& s) {
    if (auto v = h1_check(s); !v)
        throw std::invalid_argument("h1_reconstruct: semigroup is not in H1 (condition " +
                                    std::to_string(v.failing_condition) + " fails)");
    if (s.order() == 1) {
        GroundSet g(1);
        RelationSemigroup rect = generate({BinaryRelation::full(g)});
        return {Partition::singletons(g), std::move(rect), {0}};
    }
    const auto nontrivial = s.nontrivial_idempotents();
    const int m = static_cast<int>(nontrivial.size());
    if (m < 2) throw std::logic_error("H1 member of order >= 2 with fewer than 2 idempotents");
    GroundSet g(m);
    std::vector<BinaryRelation> points;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            BinaryRelation r(g);
            r.add(i, j);
            points.push_back(std::move(r));
        }
    RelationSemigroup rect = generate(points);

    const int th = *s.zero();
    std::vector<int> mapping(rect.order(), -1);
    for (int e = 0; e < rect.order(); ++e) {
        const BinaryRelation& rel = rect.elements[e];
        if (rel.is_empty()) {
            mapping[e] = th;
            continue;
        }
        const int pair = *rel.least_pair();
        const int il = nontrivial[pair / m], ir = nontrivial[pair % m];
        for (int a = 0; a < s.order(); ++a)
            if (a != th && s.mul(s.mul(il, a), ir) == a) {
                mapping[e] = a;
                break;
            }
        if (mapping[e] < 0) throw std::logic_error("H1 reconstruction: missing rectangle element");
    }
    if (rect.order() != s.order())
        throw std::logic_error("H1 reconstruction: order mismatch");
    std::vector<char> hit(s.order(), 0);
    for (int v : mapping) {
        if (hit[v]) throw std::logic_error("H1 reconstruction map is not injective");
        hit[v] = 1;
    }
    for (int a = 0; a < rect.order(); ++a)
        for (int b = 0; b < rect.order(); ++b)
            if (mapping[rect.mul(a, b)] != s.mul(mapping[a], mapping[b]))
                throw std::logic_error("H1 reconstruction map is not a homomorphism");
    return {Partition::singletons(g), std::move(rect), std::move(mapping)};
}

// --- classification of discrete-pseudometric closures ------------------------

enum class DiscreteClass { trivial_group, group_of_order_2, null2_plus_identity, other };

inline const char* to_string(DiscreteClass c) {
    switch (c) {
        case DiscreteClass::trivial_group: return "trivial_group";
        case DiscreteClass::group_of_order_2: return "group_of_order_2";
        case DiscreteClass::null2_plus_identity: return "null2_plus_identity";
        case DiscreteClass::other: return "other";
    }
    return "?";
}

// Matches the three shapes a discrete pseudometric's closure can have;
// `other` means the semigroup cannot arise from a discrete pseudometric.
inline DiscreteClass classify_discrete(const FiniteSemigroup& s) {
    if (s.order() == 1) return DiscreteClass::trivial_group;
    const auto e = s.identity();
    if (s.order() == 2) {
        if (!e) return DiscreteClass::other;
        const int a = 1 - *e;
        return s.mul(a, a) == *e ? DiscreteClass::group_of_order_2 : DiscreteClass::other;
    }
    if (s.order() == 3) {
        const auto z = s.zero();
        if (!e || !z || *e == *z) return DiscreteClass::other;
        int c = -1;
        for (int i = 0; i < 3; ++i)
            if (i != *e && i != *z) c = i;
        return s.mul(c, c) == *z ? DiscreteClass::null2_plus_identity : DiscreteClass::other;
    }
    return DiscreteClass::other;
}

// --- structure of nondiscrete strongly rigid closures -------------------------

struct RigidStructureReport {
    bool ok = false;
    // statuses of conditions (ii1)..(ii5); all evaluated, first failure noted
    std::array<bool, 5> conditions{false, false, false, false, false};
    std::string detail;
    std::vector<std::pair<int, int>> order2_groups;  // H_alpha pairs (x, x^2)
    std::vector<int> core;                           // element indices of C
};

// Verifies that s (with identity e) decomposes as e adjoined to a band of
// order-2 groups over an H1 core. The candidate decomposition is derived from
// the element-local test x^3 = x, x^2 != x; an incorrect candidate fails the
// explicit clause checks rather than mis-verifying.
inline RigidStructureReport rigid_structure_check(const FiniteSemigroup& s) {
    const auto e_opt = s.identity();
    if (!e_opt) throw std::invalid_argument("rigid_structure_check: no identity element");
    const int e = *e_opt;

    RigidStructureReport rep;
    std::vector<int> hhat;
    for (int i = 0; i < s.order(); ++i)
        if (i != e) hhat.push_back(i);
    if (hhat.empty()) {
        rep.detail = "semigroup is trivial";
        return rep;
    }
    std::vector<char> in_hhat(s.order(), 0);
    for (int i : hhat) in_hhat[i] = 1;

    // candidate order-2 groups
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> in_pair(s.order(), 0);
    bool candidate_ok = true;
    for (int x : hhat) {
        const int x2 = s.mul(x, x);
        if (x2 == x || s.mul(x2, x) != x) continue;
        if (!in_hhat[x2]) {
            candidate_ok = false;
            continue;
        }
        if (in_pair[x] || in_pair[x2]) {
            candidate_ok = false;
            continue;
        }
        in_pair[x] = in_pair[x2] = 1;
        pairs.push_back({x, x2});
    }
    rep.order2_groups = pairs;
    std::vector<int> core;
    for (int x : hhat)
        if (!in_pair[x]) core.push_back(x);
    rep.core = core;
    std::vector<char> in_core(s.order(), 0);
    for (int x : core) in_core[x] = 1;

    // (ii1): Hhat closed, C a nonempty ideal of Hhat, C in H1, every H_alpha a
    // group of order 2, cross products inside C
    bool ii1 = candidate_ok && !core.empty();
    std::string why;
    for (int a : hhat)
        for (int b : hhat)
            if (!in_hhat[s.mul(a, b)]) {
                ii1 = false;
                why = "H-hat is not closed";
            }
    if (ii1)
        for (int c : core)
            for (int h : hhat)
                if (!in_core[s.mul(c, h)] || !in_core[s.mul(h, c)]) {
                    ii1 = false;
                    why = "core is not an ideal";
                }
    if (ii1)
        for (auto [x, x2] : pairs)
            if (s.mul(x2, x2) != x2 || s.mul(x, x2) != x || s.mul(x2, x) != x) {
                ii1 = false;
                why = "candidate pair is not a group of order 2";
            }
    if (ii1)
        for (std::size_t a = 0; a < pairs.size(); ++a)
            for (std::size_t b = 0; b < pairs.size(); ++b) {
                if (a == b) continue;
                for (int x : {pairs[a].first, pairs[a].second})
                    for (int y : {pairs[b].first, pairs[b].second})
                        if (!in_core[s.mul(x, y)]) {
                            ii1 = false;
                            why = "cross product of distinct groups leaves the core";
                        }
            }
    H1Verdict core_h1;
    if (ii1) {
        core_h1 = h1_check(s.restrict_to(core));
        if (!core_h1) {
            ii1 = false;
            why = "core is not in H1 (condition " +
                  std::to_string(core_h1.failing_condition) + ")";
        }
    }
    rep.conditions[0] = ii1;
    if (!ii1 && rep.detail.empty()) rep.detail = "(ii1) " + (why.empty() ? "no decomposition" : why);

    // (ii2): 3 <= |Omega| (the continuum upper bound is vacuous finitely)
    rep.conditions[1] = static_cast<int>(pairs.size()) >= 3;
    if (!rep.conditions[1] && rep.detail.empty())
        rep.detail = "(ii2) only " + std::to_string(pairs.size()) + " order-2 groups";

    // (ii3): idempotents of Hhat form a commutative band
    std::vector<int> ehat;
    for (int x : hhat)
        if (s.mul(x, x) == x) ehat.push_back(x);
    std::vector<char> in_ehat(s.order(), 0);
    for (int x : ehat) in_ehat[x] = 1;
    bool ii3 = true;
    for (int x : ehat)
        for (int y : ehat) {
            const int p = s.mul(x, y);
            if (s.mul(p, p) != p || !in_ehat[p] || p != s.mul(y, x)) ii3 = false;
        }
    rep.conditions[2] = ii3;
    if (!ii3 && rep.detail.empty()) rep.detail = "(ii3) idempotents are not a commutative band";

    // zero of the core, used by (ii4)/(ii5)
    int th = -1;
    if (core.size() == 1) {
        th = core.front();
    } else if (!core.empty()) {
        for (int z : core) {
            bool ok = true;
            for (int c : core) ok = ok && s.mul(z, c) == z && s.mul(c, z) == z;
            if (ok) th = z;
        }
    }

    // (ii4): bijection between E-hat \ C and unordered pairs of distinct
    // nontrivial idempotents of C via e1 = e1*e, e2 = e2*e
    bool ii4 = th >= 0;
    {
        std::vector<int> core_nontrivial;
        int core_identity = -1;
        for (int z : core) {
            bool ident = true;
            for (int c : core) ident = ident && s.mul(z, c) == c && s.mul(c, z) == c;
            if (ident) core_identity = z;
        }
        for (int x : core)
            if (s.mul(x, x) == x && x != th && x != core_identity) core_nontrivial.push_back(x);
        std::vector<int> outer;  // E-hat \ C
        for (int x : ehat)
            if (!in_core[x]) outer.push_back(x);
        if (ii4) {
            for (int ee : outer) {
                std::vector<int> attached;
                for (int e1 : core_nontrivial)
                    if (s.mul(e1, ee) == e1) attached.push_back(e1);
                if (attached.size() != 2) ii4 = false;
            }
            std::set<std::pair<int, int>> covered;
            for (std::size_t i = 0; i < core_nontrivial.size() && ii4; ++i)
                for (std::size_t j = i + 1; j < core_nontrivial.size() && ii4; ++j) {
                    const int e1 = core_nontrivial[i], e2 = core_nontrivial[j];
                    int count = 0;
                    for (int ee : outer)
                        if (s.mul(e1, ee) == e1 && s.mul(e2, ee) == e2) ++count;
                    if (count != 1) ii4 = false;
                }
        }
    }
    rep.conditions[3] = ii4;
    if (!ii4 && rep.detail.empty()) rep.detail = "(ii4) idempotent pairing is not a bijection";

    // (ii5): for x in E-hat ∩ C and y in H-hat \ E-hat:
    // x*y = theta iff x*y idempotent (and symmetrically for y*x)
    bool ii5 = th >= 0;
    if (ii5)
        for (int x : ehat) {
            if (!in_core[x]) continue;
            for (int y : hhat) {
                if (in_ehat[y]) continue;
                for (int p : {s.mul(x, y), s.mul(y, x)}) {
                    const bool is_zero = p == th;
                    const bool idem = s.mul(p, p) == p;
                    if (is_zero != idem) ii5 = false;
                }
            }
        }
    rep.conditions[4] = ii5;
    if (!ii5 && rep.detail.empty()) rep.detail = "(ii5) zero/idempotent equivalence fails";

    rep.ok = ii1 && rep.conditions[1] && ii3 && ii4 && ii5;
    return rep;
}

}  // namespace combsim
