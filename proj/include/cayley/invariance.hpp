#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cayley/ball.hpp"
#include "cayley/subgroup.hpp"
#include "cayley/word.hpp"

namespace cayley {

/// Coset labels of the direct successors of x, in ascending generator order.
struct SuccessorProfile {
    std::vector<Letter> generators;  // i such that x a_i is a successor
    std::vector<int> residues;       // label of x a_i

    /// Labels as a sorted multiset.
    std::vector<int> multiset() const {
        std::vector<int> m = residues;
        std::sort(m.begin(), m.end());
        return m;
    }

    /// Whether both profiles agree on every generator index they share.
    bool positional_agree(const SuccessorProfile& other) const {
        for (std::size_t i = 0; i < generators.size(); ++i) {
            auto it = std::find(other.generators.begin(), other.generators.end(), generators[i]);
            if (it == other.generators.end()) continue;
            if (other.residues[static_cast<std::size_t>(it - other.generators.begin())] != residues[i]) return false;
        }
        return true;
    }
};

inline SuccessorProfile successor_profile(const Word& x, const SubgroupSpec& spec) {
    SuccessorProfile p;
    for (int i = 1; i <= spec.k + 1; ++i) {
        if (!x.is_identity() && x.last() == i) continue;
        p.generators.push_back(static_cast<Letter>(i));
        p.residues.push_back(label_residue(x.times(static_cast<Letter>(i)), spec));
    }
    return p;
}

inline std::string profile_string(const SuccessorProfile& p, const SubgroupSpec& spec) {
    std::string out = "<";
    for (std::size_t i = 0; i < p.residues.size(); ++i) {
        if (i) out += ", ";
        out += to_string(canonical_rep(p.residues[i], spec).word());
    }
    return out + ">";
}

struct InvarianceViolation {
    Word x, y;  // y precedes x in shortlex order
    SuccessorProfile profile_x, profile_y;
    bool positional_agree = false;
};

struct InvarianceReport {
    bool holds = true;
    int radius = 0;
    std::size_t equivalent_pairs = 0;   // pairs satisfying the hypothesis
    std::size_t violation_count = 0;    // all violating pairs
    std::vector<InvarianceViolation> violations;  // first max_recorded of them
};

/// Checks, over every pair x, y != e of the ball with label(x) = label(y) and
/// label(x_↓) = label(y_↓), that the successor label multisets coincide.
inline InvarianceReport check_invariance(const SubgroupSpec& spec, int radius,
                                         std::size_t max_recorded = 10'000) {
    if (radius < 2) throw InvalidArgument("invariance check needs radius >= 2");
    const std::vector<Word> verts = enumerate_ball(spec.k, radius).vertices();

    struct Bucket {
        std::vector<int> multiset;
        std::vector<std::size_t> members;  // indices into verts
    };
    std::map<std::pair<int, int>, std::vector<Bucket>> groups;
    std::vector<SuccessorProfile> profiles(verts.size());

    InvarianceReport report;
    report.radius = radius;
    for (std::size_t i = 1; i < verts.size(); ++i) {
        const Word& x = verts[i];
        profiles[i] = successor_profile(x, spec);
        std::vector<int> ms = profiles[i].multiset();
        auto& buckets = groups[{label_residue(x, spec), label_residue(parent(x), spec)}];

        std::size_t earlier = 0;
        for (const auto& b : buckets) earlier += b.members.size();
        report.equivalent_pairs += earlier;

        Bucket* own = nullptr;
        for (auto& b : buckets) {
            if (b.multiset == ms) {
                own = &b;
                continue;
            }
            report.violation_count += b.members.size();
            for (std::size_t j : b.members) {
                if (report.violations.size() >= max_recorded) break;
                report.violations.push_back({x, verts[j], profiles[i], profiles[j],
                                             profiles[i].positional_agree(profiles[j])});
            }
        }
        if (!own) {
            buckets.push_back({std::move(ms), {}});
            own = &buckets.back();
        }
        own->members.push_back(i);
    }
    report.holds = report.violation_count == 0;
    return report;
}

struct QEqualityReport {
    bool q_equal = true;                 // equivalent vertices share Q
    bool permutation_everywhere = true;  // Q(x) is a permutation of Q(e)
    QVector q_root;
    std::optional<std::pair<Word, Word>> first_q_mismatch;
    std::optional<Word> first_missing_permutation;

    bool passed() const { return q_equal && permutation_everywhere; }
};

/// Q-vector consistency over the ball: Q depends only on the coset, and it is
/// always a coordinate permutation of Q(e). Requires singleton A1 and A2.
inline QEqualityReport check_q_equality(const SubgroupSpec& spec, int radius) {
    if (!spec.singleton()) throw InvalidArgument("Q-vector equality requires |A1| = |A2| = 1");
    const std::vector<Word> verts = enumerate_ball(spec.k, radius).vertices();
    QEqualityReport report;
    report.q_root = q_vector(Word{}, spec);
    std::map<int, std::pair<Word, QVector>> seen;
    for (const Word& x : verts) {
        QVector q = q_vector(x, spec);
        auto [it, inserted] = seen.try_emplace(label_residue(x, spec), x, q);
        if (!inserted && it->second.second != q && report.q_equal) {
            report.q_equal = false;
            report.first_q_mismatch = std::pair{it->second.first, x};
        }
        if (report.permutation_everywhere && !find_permutation(report.q_root, q)) {
            report.permutation_everywhere = false;
            report.first_missing_permutation = x;
        }
    }
    return report;
}

} // namespace cayley
