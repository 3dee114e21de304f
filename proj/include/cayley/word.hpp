#pragma once

// Reduced words in G_k, the free product of k+1 copies of Z/2 with
// generators a_1..a_{k+1}. A reduced word is a vertex of the Cayley tree of
// order k; the empty word is the root e.
//
// Words do not carry k. Operations that need the alphabet size take it
// explicitly and validate letters against 1..k+1.

#include <algorithm>
#include <charconv>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cayley/errors.hpp"

namespace cayley {

/// 1-based generator index.
using Letter = std::uint8_t;

inline constexpr int kMaxOrder = 250;

inline void check_order(int k) {
    if (k < 1 || k > kMaxOrder) {
        throw InvalidArgument("tree order k must be in 1.." + std::to_string(kMaxOrder) +
                              ", got " + std::to_string(k));
    }
}

inline void check_letter(int letter, int k) {
    if (letter < 1 || letter > k + 1) {
        throw InvalidArgument("generator index " + std::to_string(letter) +
                              " outside 1.." + std::to_string(k + 1));
    }
}

class Word {
public:
    Word() = default;

    /// Free reduction of an arbitrary letter sequence (a_i a_i = e).
    /// Letters are not range-checked; see reduce() for the checked form.
    template <typename Int>
    static Word from_letters(std::span<const Int> letters) {
        Word w;
        w.letters_.reserve(letters.size());
        for (Int l : letters) w.push_reduced(static_cast<Letter>(l));
        return w;
    }

    static Word from_letters(std::initializer_list<int> letters) {
        return from_letters(std::span<const int>(letters.begin(), letters.size()));
    }

    std::span<const Letter> letters() const noexcept { return letters_; }
    std::size_t length() const noexcept { return letters_.size(); }
    bool is_identity() const noexcept { return letters_.empty(); }
    Letter last() const noexcept { return letters_.back(); }
    Letter first() const noexcept { return letters_.front(); }

    /// Right multiplication by one generator.
    Word times(Letter g) const {
        Word w = *this;
        w.push_reduced(g);
        return w;
    }

    /// Largest letter used; 0 for e.
    int max_letter() const noexcept {
        return letters_.empty() ? 0 : *std::max_element(letters_.begin(), letters_.end());
    }

    void validate(int k) const {
        check_order(k);
        for (Letter l : letters_) check_letter(l, k);
    }

    friend bool operator==(const Word&, const Word&) = default;

    /// Shortlex: shorter words first, then lexicographic by letters.
    friend std::strong_ordering operator<=>(const Word& x, const Word& y) {
        if (auto c = x.length() <=> y.length(); c != 0) return c;
        return std::lexicographical_compare_three_way(x.letters_.begin(), x.letters_.end(),
                                                      y.letters_.begin(), y.letters_.end());
    }

private:
    void push_reduced(Letter g) {
        if (!letters_.empty() && letters_.back() == g) {
            letters_.pop_back();
        } else {
            letters_.push_back(g);
        }
    }

    std::vector<Letter> letters_;
};

/// Checked free reduction: every index must lie in 1..k+1.
inline Word reduce(std::span<const int> letters, int k) {
    check_order(k);
    for (int l : letters) check_letter(l, k);
    return Word::from_letters(letters);
}

inline Word reduce(std::initializer_list<int> letters, int k) {
    return reduce(std::span<const int>(letters.begin(), letters.size()), k);
}

inline Word multiply(const Word& x, const Word& y) {
    Word r = x;
    for (Letter g : y.letters()) r = r.times(g);
    return r;
}

/// Group product with both operands checked against the alphabet of G_k.
inline Word multiply(const Word& x, const Word& y, int k) {
    x.validate(k);
    y.validate(k);
    return multiply(x, y);
}

/// Every generator is an involution, so the inverse is the reversal.
inline Word inverse(const Word& x) {
    std::vector<Letter> rev(x.letters().rbegin(), x.letters().rend());
    return Word::from_letters(std::span<const Letter>(rev));
}

/// x_↓: the neighbour of x one step closer to the root (drop the last letter).
inline Word parent(const Word& x) {
    if (x.is_identity()) throw InvalidArgument("the root e has no parent");
    auto l = x.letters();
    return Word::from_letters(l.first(l.size() - 1));
}

/// Direct successors S(x) = {x a_i : i != last letter of x}, by ascending i.
inline std::vector<Word> successors(const Word& x, int k) {
    x.validate(k);
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(k) + 1);
    for (int i = 1; i <= k + 1; ++i) {
        if (!x.is_identity() && x.last() == i) continue;
        out.push_back(x.times(static_cast<Letter>(i)));
    }
    return out;
}

/// S_1(x) = (x a_1, ..., x a_{k+1}); includes the parent for x != e.
inline std::vector<Word> neighborhood(const Word& x, int k) {
    x.validate(k);
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(k) + 1);
    for (int i = 1; i <= k + 1; ++i) out.push_back(x.times(static_cast<Letter>(i)));
    return out;
}

/// Tree distance d(x, y) = l(x^{-1} y).
inline std::size_t distance(const Word& x, const Word& y) {
    auto a = x.letters();
    auto b = y.letters();
    std::size_t common = 0;
    while (common < a.size() && common < b.size() && a[common] == b[common]) ++common;
    return (a.size() - common) + (b.size() - common);
}

/// "a1.a2.a3"; the identity is "e".
inline std::string to_string(const Word& x) {
    if (x.is_identity()) return "e";
    std::string s;
    for (std::size_t i = 0; i < x.length(); ++i) {
        if (i) s += '.';
        s += 'a';
        s += std::to_string(x.letters()[i]);
    }
    return s;
}

/// Parses the "a1.a2" form (or "e") and reduces. k = 0 skips range checks.
inline Word parse_word(std::string_view text, int k = 0) {
    auto trim = [](std::string_view v) {
        while (!v.empty() && (v.front() == ' ' || v.front() == '\t')) v.remove_prefix(1);
        while (!v.empty() && (v.back() == ' ' || v.back() == '\t' || v.back() == '\n')) v.remove_suffix(1);
        return v;
    };
    text = trim(text);
    if (text == "e" || text.empty()) return Word{};
    std::vector<int> letters;
    while (!text.empty()) {
        auto dot = text.find('.');
        std::string_view tok = trim(text.substr(0, dot));
        text = dot == std::string_view::npos ? std::string_view{} : text.substr(dot + 1);
        if (tok.size() < 2 || tok.front() != 'a') {
            throw InvalidArgument("malformed generator token '" + std::string(tok) + "'");
        }
        int value = 0;
        auto [ptr, ec] = std::from_chars(tok.data() + 1, tok.data() + tok.size(), value);
        if (ec != std::errc{} || ptr != tok.data() + tok.size() || value < 1 || value > kMaxOrder + 1) {
            throw InvalidArgument("malformed generator token '" + std::string(tok) + "'");
        }
        letters.push_back(value);
    }
    if (k > 0) return reduce(letters, k);
    return Word::from_letters(std::span<const int>(letters));
}

struct WordHash {
    std::size_t operator()(const Word& w) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (Letter l : w.letters()) {
            h ^= l;
            h *= 1099511628211ull;
        }
        return h ^ w.length();
    }
};

} // namespace cayley
