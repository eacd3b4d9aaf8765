#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "pmetric.hpp"
#include "simdec.hpp"

namespace combsim {

using BigInt = boost::multiprecision::cpp_int;

// All partitions of n in reverse lexicographic order, parts descending:
// for n = 4: [4], [3,1], [2,2], [2,1,1], [1,1,1,1].
inline std::vector<std::vector<int>> enumerate_partitions(int n) {
    if (n < 0) throw std::invalid_argument("enumerate_partitions: negative n");
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int rest, int maxpart) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (int p = std::min(rest, maxpart); p >= 1; --p) {
            cur.push_back(p);
            self(self, rest - p, p);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

// Euler's pentagonal number recurrence.
inline BigInt partition_count(int n) {
    if (n < 0) throw std::invalid_argument("partition_count: negative n");
    std::vector<BigInt> p(n + 1);
    p[0] = 1;
    for (int m = 1; m <= n; ++m) {
        BigInt acc = 0;
        for (int k = 1;; ++k) {
            const long long g1 = static_cast<long long>(k) * (3 * k - 1) / 2;
            const long long g2 = static_cast<long long>(k) * (3 * k + 1) / 2;
            if (g1 > m) break;
            const BigInt t = p[m - g1] + (g2 <= m ? p[m - g2] : BigInt(0));
            if (k % 2 == 1)
                acc += t;
            else
                acc -= t;
        }
        p[m] = acc;
    }
    return p[n];
}

// Independent count by the bounded-largest-part table, for cross-checking.
inline BigInt partition_count_table(int n) {
    if (n < 0) throw std::invalid_argument("partition_count_table: negative n");
    // t[m] = number of partitions of m with parts <= current k
    std::vector<BigInt> t(n + 1, 0);
    t[0] = 1;
    for (int k = 1; k <= n; ++k)
        for (int m = k; m <= n; ++m) t[m] += t[m - k];
    return t[n];
}

// Number of discrete pseudometrics on an n-point set up to combinatorial
// similarity. Enumerates set partitions by restricted growth strings and
// groups them by the multiset of block sizes; for small n the grouping is
// cross-checked against the similarity decision procedure.
inline BigInt discrete_classes_count(int n, bool cross_check = true) {
    if (n < 1) throw std::invalid_argument("discrete_classes_count: n must be positive");
    if (n > 8) throw std::invalid_argument("discrete_classes_count: n capped at 8");
    GroundSet g(n);

    std::map<std::vector<int>, std::vector<Partition>> by_sizes;
    std::vector<int> rgs(n, 0);
    auto rec = [&](auto&& self, int i, int maxlbl) -> void {
        if (i == n) {
            std::vector<std::vector<int>> blocks(maxlbl + 1);
            for (int x = 0; x < n; ++x) blocks[rgs[x]].push_back(x);
            Partition p(g, blocks);
            by_sizes[p.size_multiset()].push_back(std::move(p));
            return;
        }
        for (int lbl = 0; lbl <= maxlbl + 1; ++lbl) {
            rgs[i] = lbl;
            self(self, i + 1, std::max(maxlbl, lbl));
        }
    };
    rgs[0] = 0;
    rec(rec, 1, 0);

    if (cross_check && n <= 5) {
        // same size multiset => similar, different multisets => not similar
        for (auto it = by_sizes.begin(); it != by_sizes.end(); ++it) {
            const auto rep = discrete_from_equivalence(
                equivalence_from_partition(it->second.front())).as_sym_mapping();
            for (std::size_t i = 1; i < it->second.size(); ++i) {
                const auto other = discrete_from_equivalence(
                    equivalence_from_partition(it->second[i])).as_sym_mapping();
                if (decide_comb_similar(rep, other).outcome != SimOutcome::similar)
                    throw std::logic_error("size-multiset grouping is too coarse");
            }
            auto jt = std::next(it);
            if (jt != by_sizes.end()) {
                const auto other = discrete_from_equivalence(
                    equivalence_from_partition(jt->second.front())).as_sym_mapping();
                if (decide_comb_similar(rep, other).outcome != SimOutcome::not_similar)
                    throw std::logic_error("size-multiset grouping is too fine");
            }
        }
    }
    return BigInt(by_sizes.size());
}

// Ratio of p(n) to the leading Hardy-Ramanujan asymptotic
// exp(pi sqrt(2n/3)) / (4 n sqrt(3)).
inline double hr_ratio(int n) {
    if (n < 1) throw std::invalid_argument("hr_ratio: n must be positive");
    const double asym =
        std::exp(M_PI * std::sqrt(2.0 * n / 3.0)) / (4.0 * n * std::sqrt(3.0));
    return static_cast<double>(partition_count(n)) / asym;
}

}  // namespace combsim
