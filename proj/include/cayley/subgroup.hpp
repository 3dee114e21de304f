#pragma once

// The odd-index subgroups Im^s_{A1A2}(G_k) and their left cosets.
//
// A spec (k, s, A1, A2) collapses every generator onto the two-letter group
// <a_{m1}> * <a_{m2}> (letters of A0 vanish), giving an alternating word w.
// The coset of x is the signed-length residue of w = u(x):
//     r = +l(w) mod 2s+1   if w = e or w starts with a_{m1}
//     r = -l(w) mod 2s+1   if w starts with a_{m2}
// and x is in the subgroup iff r = 0, i.e. iff 2s+1 divides l(w).

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cayley/ball.hpp"
#include "cayley/errors.hpp"
#include "cayley/word.hpp"

namespace cayley {

struct SubgroupSpec {
    int k = 0;
    int s = 0;
    std::vector<int> A1, A2;  // sorted, disjoint, nonempty
    std::vector<int> A0;      // N_k minus (A1 u A2)
    Letter m1 = 0, m2 = 0;    // min A1, min A2

    int index() const noexcept { return 2 * s + 1; }
    bool singleton() const noexcept { return A1.size() == 1 && A2.size() == 1; }

    /// 0 for letters of A0, 1 for A1, 2 for A2.
    int role(Letter g) const noexcept {
        if (std::binary_search(A1.begin(), A1.end(), g)) return 1;
        if (std::binary_search(A2.begin(), A2.end(), g)) return 2;
        return 0;
    }

    friend bool operator==(const SubgroupSpec&, const SubgroupSpec&) = default;
};

inline SubgroupSpec validate_spec(int k, int s, std::vector<int> A1, std::vector<int> A2) {
    check_order(k);
    if (s < 1) throw InvalidArgument("s must be >= 1");
    if (A1.empty() || A2.empty()) throw InvalidArgument("A1 and A2 must be nonempty");
    for (const auto* set : {&A1, &A2}) {
        for (int i : *set) check_letter(i, k);
    }
    std::sort(A1.begin(), A1.end());
    std::sort(A2.begin(), A2.end());
    if (std::adjacent_find(A1.begin(), A1.end()) != A1.end() ||
        std::adjacent_find(A2.begin(), A2.end()) != A2.end()) {
        throw InvalidArgument("A1 and A2 must not repeat indices");
    }
    std::vector<int> both;
    std::set_intersection(A1.begin(), A1.end(), A2.begin(), A2.end(), std::back_inserter(both));
    if (!both.empty()) {
        throw InvalidArgument("A1 and A2 overlap at index " + std::to_string(both.front()));
    }
    SubgroupSpec spec;
    spec.k = k;
    spec.s = s;
    for (int i = 1; i <= k + 1; ++i) {
        if (!std::binary_search(A1.begin(), A1.end(), i) && !std::binary_search(A2.begin(), A2.end(), i)) {
            spec.A0.push_back(i);
        }
    }
    spec.m1 = static_cast<Letter>(A1.front());
    spec.m2 = static_cast<Letter>(A2.front());
    spec.A1 = std::move(A1);
    spec.A2 = std::move(A2);
    return spec;
}

inline SubgroupSpec validate_spec(const SubgroupSpec& raw) {
    return validate_spec(raw.k, raw.s, raw.A1, raw.A2);
}

/// The singleton spec used for the nine-state Ising system: A1={1}, A2={2}.
inline SubgroupSpec standard_spec(int k, int s = 1) { return validate_spec(k, s, {1}, {2}); }

/// Reduced word over the two letters {m1, m2}; reducedness makes it alternate.
class AlternatingWord {
public:
    AlternatingWord(Word w, Letter m1, Letter m2) : word_(std::move(w)), m1_(m1), m2_(m2) {
        if (m1 == m2) throw InvalidArgument("alternating alphabet needs two distinct letters");
        for (Letter l : word_.letters()) {
            if (l != m1 && l != m2) {
                throw InvalidArgument("letter a" + std::to_string(l) + " outside {a" +
                                      std::to_string(m1) + ", a" + std::to_string(m2) + "}");
            }
        }
    }

    /// Alternating word of the given length starting with `start`.
    static AlternatingWord make(std::size_t length, Letter start, Letter m1, Letter m2) {
        std::vector<Letter> letters;
        letters.reserve(length);
        const Letter other = start == m1 ? m2 : m1;
        for (std::size_t i = 0; i < length; ++i) letters.push_back((i % 2 == 0) ? start : other);
        return {Word::from_letters(std::span<const Letter>(letters)), m1, m2};
    }

    const Word& word() const noexcept { return word_; }
    std::size_t length() const noexcept { return word_.length(); }
    bool empty() const noexcept { return word_.is_identity(); }
    bool starts_with_m1() const noexcept { return !empty() && word_.first() == m1_; }
    bool starts_with_m2() const noexcept { return !empty() && word_.first() == m2_; }
    Letter m1() const noexcept { return m1_; }
    Letter m2() const noexcept { return m2_; }

    friend bool operator==(const AlternatingWord&, const AlternatingWord&) = default;

private:
    Word word_;
    Letter m1_, m2_;
};

/// A coset K_r, r in 0..2s, with its canonical representative.
struct CosetLabel {
    int residue = 0;
    AlternatingWord rep;

    friend bool operator==(const CosetLabel& a, const CosetLabel& b) { return a.residue == b.residue; }
};

/// Representative of K_r: for 1 <= r <= s the word a_{m1}a_{m2}... of length
/// r; for s < r <= 2s the word a_{m2}a_{m1}... of length 2s+1-r.
inline AlternatingWord canonical_rep(int r, int s, Letter m1, Letter m2) {
    const int n = 2 * s + 1;
    if (r < 0 || r >= n) throw InvalidArgument("residue out of range 0..2s");
    if (r == 0) return {Word{}, m1, m2};
    if (r <= s) return AlternatingWord::make(static_cast<std::size_t>(r), m1, m1, m2);
    return AlternatingWord::make(static_cast<std::size_t>(n - r), m2, m1, m2);
}

inline AlternatingWord canonical_rep(int r, const SubgroupSpec& spec) {
    return canonical_rep(r, spec.s, spec.m1, spec.m2);
}

/// The collapsing homomorphism u_{A1A2}.
inline AlternatingWord project_u(const Word& x, const SubgroupSpec& spec) {
    std::vector<Letter> image;
    image.reserve(x.length());
    for (Letter g : x.letters()) {
        switch (spec.role(g)) {
            case 1: image.push_back(spec.m1); break;
            case 2: image.push_back(spec.m2); break;
            default: break;
        }
    }
    return {Word::from_letters(std::span<const Letter>(image)), spec.m1, spec.m2};
}

namespace detail {

inline int residue_of(const AlternatingWord& w, int s) {
    const int n = 2 * s + 1;
    const int len = static_cast<int>(w.length() % static_cast<std::size_t>(n));
    return w.starts_with_m2() ? (n - len) % n : len;
}

// Residue of the representative chosen by a branch of the recursive reduction.
inline int residue_of_rep(const AlternatingWord& rep, int s) {
    if (rep.empty()) return 0;
    const int q = static_cast<int>(rep.length());
    return rep.starts_with_m1() ? q : 2 * s + 1 - q;
}

// Lines 1-3 of the recursive reduction: words of length <= 2s.
inline AlternatingWord gamma_base(const AlternatingWord& w, int s) {
    const std::size_t len = w.length();
    if (len == 0 || len <= static_cast<std::size_t>(s)) return w;
    // length 2s+1-q with q = 2s+1-len; switch the starting letter
    const std::size_t q = static_cast<std::size_t>(2 * s + 1) - len;
    const Letter start = w.starts_with_m1() ? w.m2() : w.m1();
    return AlternatingWord::make(q, start, w.m1(), w.m2());
}

} // namespace detail

/// The block-stripping reduction gamma_s applied literally: while the word is
/// longer than 2s, replace its last 2s letters by their reduced form and
/// re-reduce; then pair short words by the base cases.
inline CosetLabel gamma_recursive(const AlternatingWord& w, int s) {
    if (s < 1) throw InvalidArgument("s must be >= 1");
    AlternatingWord cur = w;
    const std::size_t block = static_cast<std::size_t>(2 * s);
    while (cur.length() > block) {
        auto letters = cur.word().letters();
        const std::size_t cut = letters.size() - block;
        AlternatingWord tail(Word::from_letters(letters.subspan(cut)), w.m1(), w.m2());
        Word head = Word::from_letters(letters.first(cut));
        cur = AlternatingWord(multiply(head, detail::gamma_base(tail, s).word()), w.m1(), w.m2());
    }
    AlternatingWord rep = detail::gamma_base(cur, s);
    return {detail::residue_of_rep(rep, s), rep};
}

/// Closed-form coset residue of x; 0 iff x is in the subgroup.
inline int label_residue(const Word& x, const SubgroupSpec& spec) {
    // Only the first letter and the length of u(x) matter; both can be
    // read off without building the image.
    std::size_t len = 0;
    Letter first = 0;
    Letter top = 0;
    for (Letter g : x.letters()) {
        int role = spec.role(g);
        if (role == 0) continue;
        Letter img = role == 1 ? spec.m1 : spec.m2;
        if (len > 0 && top == img) {
            --len;
            top = img == spec.m1 ? spec.m2 : spec.m1;
        } else {
            if (len == 0) first = img;
            ++len;
            top = img;
        }
    }
    const int n = spec.index();
    const int l = static_cast<int>(len % static_cast<std::size_t>(n));
    if (len == 0) return 0;
    return first == spec.m1 ? l : (n - l) % n;
}

inline CosetLabel label(const Word& x, const SubgroupSpec& spec) {
    int r = label_residue(x, spec);
    return {r, canonical_rep(r, spec)};
}

inline bool is_member(const Word& x, const SubgroupSpec& spec) { return label_residue(x, spec) == 0; }

/// Ball vertices grouped by coset; classes[r] holds K_r, each in shortlex order.
struct CosetPartition {
    int radius = 0;
    std::vector<std::vector<Word>> classes;

    std::size_t nonempty_count() const {
        return static_cast<std::size_t>(
            std::count_if(classes.begin(), classes.end(), [](const auto& c) { return !c.empty(); }));
    }
};

inline CosetPartition coset_classes(const SubgroupSpec& spec, int radius) {
    Ball ball = enumerate_ball(spec.k, radius);
    CosetPartition part{radius, std::vector<std::vector<Word>>(static_cast<std::size_t>(spec.index()))};
    for (const auto& sphere : ball.spheres) {
        for (const Word& x : sphere) part.classes[static_cast<std::size_t>(label_residue(x, spec))].push_back(x);
    }
    return part;
}

struct CosetCheckReport {
    bool passed = true;
    std::size_t pairs_checked = 0;
    std::string first_violation;  // empty when passed
};

/// Exhaustive check over all ordered pairs of the ball that labels are left
/// cosets (same label iff y^{-1}x in K) and that K is closed under x y^{-1}.
inline CosetCheckReport oracle_coset_check(const SubgroupSpec& spec, int radius) {
    const std::vector<Word> verts = enumerate_ball(spec.k, radius).vertices();
    std::vector<int> res(verts.size());
    for (std::size_t i = 0; i < verts.size(); ++i) res[i] = label_residue(verts[i], spec);

    CosetCheckReport report;
    for (std::size_t i = 0; i < verts.size(); ++i) {
        for (std::size_t j = 0; j < verts.size(); ++j) {
            ++report.pairs_checked;
            const Word& x = verts[i];
            const Word& y = verts[j];
            const Word yinv = inverse(y);
            const bool same = res[i] == res[j];
            if (same != is_member(multiply(yinv, x), spec)) {
                report.passed = false;
                report.first_violation = "x=" + to_string(x) + " y=" + to_string(y) +
                                         ": same label is " + (same ? "true" : "false") +
                                         " but y^-1 x membership disagrees";
                return report;
            }
            if (res[i] == 0 && res[j] == 0 && !is_member(multiply(x, yinv), spec)) {
                report.passed = false;
                report.first_violation = "closure fails: x=" + to_string(x) + " y=" + to_string(y);
                return report;
            }
        }
    }
    return report;
}

/// A pair (x, g) with g in K and x g x^{-1} not in K, if the ball has one.
inline std::optional<std::pair<Word, Word>> non_normality_witness(const SubgroupSpec& spec, int radius) {
    const std::vector<Word> verts = enumerate_ball(spec.k, radius).vertices();
    std::vector<const Word*> members;
    for (const Word& w : verts) {
        if (is_member(w, spec)) members.push_back(&w);
    }
    for (const Word& x : verts) {
        const Word xinv = inverse(x);
        for (const Word* g : members) {
            if (!is_member(multiply(multiply(x, *g), xinv), spec)) return std::pair{x, *g};
        }
    }
    return std::nullopt;
}

/// Q(x): how many of the k+1 neighbours x a_i fall into each coset.
struct QVector {
    std::vector<int> counts;

    int total() const {
        int t = 0;
        for (int c : counts) t += c;
        return t;
    }
    friend bool operator==(const QVector&, const QVector&) = default;
};

inline QVector q_vector(const Word& x, const SubgroupSpec& spec) {
    QVector q{std::vector<int>(static_cast<std::size_t>(spec.index()), 0)};
    for (int i = 1; i <= spec.k + 1; ++i) {
        ++q.counts[static_cast<std::size_t>(label_residue(x.times(static_cast<Letter>(i)), spec))];
    }
    return q;
}

/// Coordinate permutation pi with target[pi[i]] == base[i] for all i, the
/// lexicographically smallest one when counts tie; nullopt if the multisets
/// differ.
inline std::optional<std::vector<int>> find_permutation(const QVector& base, const QVector& target) {
    if (base.counts.size() != target.counts.size()) {
        throw InvalidArgument("Q-vectors have different lengths");
    }
    const std::size_t n = base.counts.size();
    std::vector<int> pi(n);
    std::vector<bool> used(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        bool found = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (!used[j] && target.counts[j] == base.counts[i]) {
                pi[i] = static_cast<int>(j);
                used[j] = true;
                found = true;
                break;
            }
        }
        if (!found) return std::nullopt;
    }
    return pi;
}

inline std::string to_string(const CosetLabel& l) { return to_string(l.rep.word()); }

} // namespace cayley
