#pragma once

#include <array>
#include <map>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "mapkit.hpp"
#include "rational.hpp"
#include "relcore.hpp"

namespace combsim {

enum class MetricAxiom { negativity, nonzero_diagonal, asymmetry, triangle };

struct MetricViolation {
    MetricAxiom axiom;
    // negativity/nonzero_diagonal use x,y; asymmetry x,y; triangle (x,z,y): d(x,y) > d(x,z)+d(z,y)
    int x = -1, y = -1, z = -1;
};

inline const char* to_string(MetricAxiom a) {
    switch (a) {
        case MetricAxiom::negativity: return "negativity";
        case MetricAxiom::nonzero_diagonal: return "nonzero diagonal";
        case MetricAxiom::asymmetry: return "asymmetry";
        case MetricAxiom::triangle: return "triangle inequality";
    }
    return "?";
}

struct PtolemyVerdict {
    bool ok = true;
    std::array<int, 4> witness{-1, -1, -1, -1};
    explicit operator bool() const { return ok; }
};

struct RigidityVerdict {
    bool ok = true;
    std::array<int, 4> witness{-1, -1, -1, -1};  // (x, y, u, v) violating condition (4.2)
    explicit operator bool() const { return ok; }
};

// Symmetric matrix of exact nonnegative rationals with zero diagonal and the
// triangle inequality, validated at construction.
class Pseudometric {
public:
    static std::variant<Pseudometric, MetricViolation> validate(
        GroundSet g, std::vector<Rational> dist) {
        const int n = g.n;
        if (static_cast<int>(dist.size()) != n * n)
            throw std::invalid_argument("distance matrix has wrong dimensions");
        auto at = [&](int x, int y) -> const Rational& { return dist[x * n + y]; };
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                if (at(x, y) < Rational(0))
                    return MetricViolation{MetricAxiom::negativity, x, y};
        for (int x = 0; x < n; ++x)
            if (at(x, x) != Rational(0))
                return MetricViolation{MetricAxiom::nonzero_diagonal, x, x};
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (at(x, y) != at(y, x))
                    return MetricViolation{MetricAxiom::asymmetry, x, y};
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y)
                for (int z = 0; z < n; ++z)
                    if (at(x, y) > at(x, z) + at(z, y))
                        return MetricViolation{MetricAxiom::triangle, x, z, y};
        return Pseudometric(g, std::move(dist));
    }

    static Pseudometric require(GroundSet g, std::vector<Rational> dist) {
        auto result = validate(g, std::move(dist));
        if (auto* viol = std::get_if<MetricViolation>(&result))
            throw std::invalid_argument(std::string("not a pseudometric: ") +
                                        to_string(viol->axiom) + " fails");
        return std::get<Pseudometric>(std::move(result));
    }

    static Pseudometric zero(GroundSet g) {
        return Pseudometric(g, std::vector<Rational>(g.n * g.n, Rational(0)));
    }

    GroundSet ground() const { return ground_; }
    int size() const { return ground_.n; }
    const Rational& at(int x, int y) const { return dist_.at(x * ground_.n + y); }

    // Distinct distance values in ascending order (0 always first when present).
    std::vector<Rational> value_set() const {
        std::map<Rational, int> seen;
        for (const auto& v : dist_) seen.emplace(v, 0);
        std::vector<Rational> out;
        for (const auto& [v, _] : seen) out.push_back(v);
        return out;
    }

    // View as a SymMapping whose alphabet is the value set in ascending order.
    SymMapping as_sym_mapping() const {
        const auto values = value_set();
        std::map<Rational, int> index;
        std::vector<std::string> labels;
        for (const auto& v : values) {
            index.emplace(v, static_cast<int>(labels.size()));
            labels.push_back(to_string(v));
        }
        std::vector<int> table;
        table.reserve(dist_.size());
        for (const auto& v : dist_) table.push_back(index.at(v));
        return SymMapping(ground_, SymbolAlphabet(std::move(labels)), std::move(table));
    }

    friend bool operator==(const Pseudometric&, const Pseudometric&) = default;

private:
    Pseudometric(GroundSet g, std::vector<Rational> dist)
        : ground_(g), dist_(std::move(dist)) {}

    GroundSet ground_;
    std::vector<Rational> dist_;
};

// The relation x ~0 y <=> d(x, y) = 0; always an equivalence for a valid d.
inline BinaryRelation zero_relation(const Pseudometric& d) {
    BinaryRelation r(d.ground());
    for (int x = 0; x < d.size(); ++x)
        for (int y = 0; y < d.size(); ++y)
            if (d.at(x, y) == Rational(0)) r.add(x, y);
    return r;
}

struct MetricIdentification {
    Partition quotient_partition;
    Pseudometric quotient_metric;   // a metric: zero only on the diagonal
    std::vector<int> projection;    // element -> class id
};

// Quotient of (X, d) by its zero-distance classes, carrying the induced metric.
// Well-definedness is a theorem; a representative disagreement is a bug.
inline MetricIdentification metric_identification(const Pseudometric& d) {
    const Partition classes = partition_from_equivalence(zero_relation(d));
    const int k = classes.block_count();
    std::vector<Rational> qdist(k * k, Rational(0));
    for (int a = 0; a < k; ++a)
        for (int b = 0; b < k; ++b) {
            const Rational ref = d.at(classes.blocks()[a].front(), classes.blocks()[b].front());
            for (int x : classes.blocks()[a])
                for (int y : classes.blocks()[b])
                    if (d.at(x, y) != ref)
                        throw std::logic_error("metric identification is not well defined");
            qdist[a * k + b] = ref;
        }
    Pseudometric quotient = Pseudometric::require(GroundSet(k), std::move(qdist));
    if (!(zero_relation(quotient) == BinaryRelation::diagonal(quotient.ground())))
        throw std::logic_error("metric identification quotient is not a metric");
    std::vector<int> projection(d.size());
    for (int x = 0; x < d.size(); ++x) projection[x] = classes.block_of(x);
    return {classes, std::move(quotient), std::move(projection)};
}

// |d(X^2)| <= 2: at most one nonzero distance value.
inline bool is_discrete(const Pseudometric& d) {
    return static_cast<int>(d.value_set().size()) <= 2;
}

// Exact Ptolemy inequality over all quadruples.
inline PtolemyVerdict is_ptolemaic(const Pseudometric& d) {
    const int n = d.size();
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            for (int z = 0; z < n; ++z)
                for (int t = 0; t < n; ++t)
                    if (d.at(x, z) * d.at(y, t) + d.at(x, t) * d.at(y, z) <
                        d.at(x, y) * d.at(z, t))
                        return {false, {x, y, z, t}};
    return {};
}

// Strong rigidity per the definition: equal nonzero distances force the pairs
// to coincide up to zero-distance equivalence and order swap. Cross-checked
// against the fiber-partition characterization P_{d^-1} = P (x) P_S^1.
inline RigidityVerdict is_strongly_rigid(const Pseudometric& d) {
    const BinaryRelation zero = zero_relation(d);
    RigidityVerdict verdict;
    const int n = d.size();
    for (int x = 0; x < n && verdict.ok; ++x)
        for (int y = 0; y < n && verdict.ok; ++y)
            for (int u = 0; u < n && verdict.ok; ++u)
                for (int v = 0; v < n && verdict.ok; ++v) {
                    if (d.at(x, y) != d.at(u, v) || d.at(x, y) == Rational(0)) continue;
                    const bool straight = zero.contains(x, u) && zero.contains(y, v);
                    const bool swapped = zero.contains(x, v) && zero.contains(y, u);
                    if (!straight && !swapped) verdict = {false, {x, y, u, v}};
                }
    const Partition p = partition_from_equivalence(zero);
    const bool via_tensor = d.as_sym_mapping().fiber_partition() == sym_tensor_s1(p);
    if (via_tensor != verdict.ok)
        throw std::logic_error("strong-rigidity routes disagree");
    return verdict;
}

// d(x,y) = 0 inside the equivalence, 1 across; the canonical discrete
// pseudometric with the given zero relation.
inline Pseudometric discrete_from_equivalence(const BinaryRelation& r) {
    if (auto v = is_equivalence(r); !v) throw NotAnEquivalence(v);
    const int n = r.size();
    std::vector<Rational> dist(n * n, Rational(0));
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
            if (!r.contains(x, y)) dist[x * n + y] = Rational(1);
    return Pseudometric::require(r.ground(), std::move(dist));
}

// --- isometry -> similarity -> weak similarity -> combinatorial similarity ---

struct HierarchyFlags {
    bool isometry = false;
    bool similarity = false;
    bool weak_similarity = false;
    bool combinatorial_similarity = false;
    std::optional<Rational> ratio;                       // set when similarity holds
    std::vector<std::pair<Rational, Rational>> scaling;  // rho value -> d value
};

// g maps the ground set of rho onto the ground set of d; the flags satisfy
// the implication chain isometry => similarity => weak => combinatorial.
inline HierarchyFlags hierarchy_check(const Pseudometric& d, const Pseudometric& rho,
                                      const std::vector<int>& g) {
    const int n = rho.size();
    if (d.size() != n) throw std::invalid_argument("hierarchy_check: size mismatch");
    std::vector<char> hit(n, 0);
    for (int v : g) {
        if (v < 0 || v >= n || hit[v]) throw std::invalid_argument("g is not a bijection");
        hit[v] = 1;
    }
    if (static_cast<int>(g.size()) != n) throw std::invalid_argument("g is not a bijection");

    // induced value map rho(x, y) -> d(g(x), g(y)); functionality in both
    // directions collapses the existential over f on finite images
    std::map<Rational, Rational> forward;
    std::map<Rational, Rational> backward;
    bool functional = true, injective = true;
    for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y) {
            const Rational rv = rho.at(x, y);
            const Rational dv = d.at(g[x], g[y]);
            if (auto [it, fresh] = forward.emplace(rv, dv); !fresh && it->second != dv)
                functional = false;
            if (auto [it, fresh] = backward.emplace(dv, rv); !fresh && it->second != rv)
                injective = false;
        }

    HierarchyFlags flags;
    if (!functional || !injective) return flags;
    flags.combinatorial_similarity = true;
    for (const auto& [rv, dv] : forward) flags.scaling.emplace_back(rv, dv);

    // forward is sorted by rho value; strict monotonicity of the d values
    flags.weak_similarity = true;
    for (std::size_t i = 1; i < flags.scaling.size(); ++i)
        if (!(flags.scaling[i - 1].second < flags.scaling[i].second))
            flags.weak_similarity = false;

    if (flags.weak_similarity) {
        // rho = r * (d o g): every pair must satisfy rv = r * dv
        std::optional<Rational> r;
        bool linear = true;
        for (const auto& [rv, dv] : flags.scaling) {
            if (dv == Rational(0)) {
                if (rv != Rational(0)) linear = false;
                continue;
            }
            const Rational cand = rv / dv;
            if (r && *r != cand) linear = false;
            if (!r) r = cand;
        }
        if (linear) {
            flags.similarity = true;
            flags.ratio = r.value_or(Rational(1));
            flags.isometry = (*flags.ratio == Rational(1));
        }
    }
    return flags;
}

}  // namespace combsim
