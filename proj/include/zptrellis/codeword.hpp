#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zptrellis/ring.hpp"

namespace zpt {

/// A word of length n over Z_{p^alpha}.
class Codeword {
public:
    Codeword() = default;
    Codeword(const RingSpec& spec, std::size_t n) : spec_(spec), symbols_(n, 0) {}
    Codeword(const RingSpec& spec, const std::vector<std::int64_t>& values) : spec_(spec) {
        symbols_.reserve(values.size());
        for (auto v : values) symbols_.push_back(spec.reduce(v));
    }
    Codeword(const RingSpec& spec, std::vector<Residue> symbols) : spec_(spec), symbols_(std::move(symbols)) {
        for (auto& s : symbols_) s %= spec_.modulus();
    }

    const RingSpec& spec() const noexcept { return spec_; }
    std::size_t size() const noexcept { return symbols_.size(); }
    const std::vector<Residue>& symbols() const noexcept { return symbols_; }
    Residue operator[](std::size_t i) const { return symbols_[i]; }
    void set(std::size_t i, Residue v) { symbols_[i] = v % spec_.modulus(); }

    bool is_zero() const noexcept {
        return std::all_of(symbols_.begin(), symbols_.end(), [](Residue v) { return v == 0; });
    }

    /// Index of the first nonzero symbol, if any.
    std::optional<std::size_t> first_nonzero() const noexcept {
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            if (symbols_[i] != 0) return i;
        return std::nullopt;
    }
    std::optional<std::size_t> last_nonzero() const noexcept {
        for (std::size_t i = symbols_.size(); i-- > 0;)
            if (symbols_[i] != 0) return i;
        return std::nullopt;
    }

    /// this + a * other
    Codeword plus_scaled(const Codeword& other, Residue a) const {
        check_compatible(other);
        Codeword r(*this);
        for (std::size_t i = 0; i < symbols_.size(); ++i)
            r.symbols_[i] = spec_.add(symbols_[i], spec_.mul(a, other.symbols_[i]));
        return r;
    }
    Codeword scaled(Residue a) const {
        Codeword r(*this);
        for (auto& s : r.symbols_) s = spec_.mul(a, s);
        return r;
    }
    Codeword operator+(const Codeword& other) const { return plus_scaled(other, 1); }
    Codeword operator-(const Codeword& other) const { return plus_scaled(other, spec_.modulus() - 1); }

    friend bool operator==(const Codeword& a, const Codeword& b) noexcept {
        return a.spec_ == b.spec_ && a.symbols_ == b.symbols_;
    }
    /// Lexicographic order on residues, left to right.
    friend std::strong_ordering operator<=>(const Codeword& a, const Codeword& b) noexcept {
        if (auto c = a.symbols_.size() <=> b.symbols_.size(); c != 0) return c;
        return std::lexicographical_compare_three_way(a.symbols_.begin(), a.symbols_.end(),
                                                      b.symbols_.begin(), b.symbols_.end());
    }

    void check_compatible(const Codeword& other) const {
        require_same_ring(spec_, other.spec_);
        if (symbols_.size() != other.symbols_.size())
            throw std::invalid_argument("codeword length mismatch");
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < symbols_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(symbols_[i]);
        }
        return s + ")";
    }

private:
    RingSpec spec_;
    std::vector<Residue> symbols_;
};

inline std::ostream& operator<<(std::ostream& os, const Codeword& c) { return os << c.to_string(); }

/// sigma_j: result_i = x_{(i+j) mod n}
inline Codeword shift_left(const Codeword& x, std::size_t j) {
    const std::size_t n = x.size();
    if (n == 0) return x;
    std::vector<Residue> s(n);
    for (std::size_t i = 0; i < n; ++i) s[i] = x[(i + j) % n];
    return Codeword(x.spec(), std::move(s));
}

/// rho_j, the inverse of sigma_j.
inline Codeword shift_right(const Codeword& x, std::size_t j) {
    const std::size_t n = x.size();
    if (n == 0) return x;
    return shift_left(x, (n - j % n) % n);
}

/// Semiopen cyclic interval (a,b] on an axis of length n, or Full / Empty.
class CyclicSpan {
public:
    enum class Kind { Interval, Full, Empty };

    CyclicSpan() = default;
    static CyclicSpan interval(std::size_t a, std::size_t b, std::size_t n) {
        if (n == 0 || a >= n || b >= n) throw std::invalid_argument("span endpoint out of range");
        return CyclicSpan(Kind::Interval, a, b, n);
    }
    static CyclicSpan full(std::size_t n) { return CyclicSpan(Kind::Full, 0, 0, n); }
    static CyclicSpan empty(std::size_t n) { return CyclicSpan(Kind::Empty, 0, 0, n); }

    Kind kind() const noexcept { return kind_; }
    std::size_t a() const noexcept { return a_; }
    std::size_t b() const noexcept { return b_; }
    std::size_t n() const noexcept { return n_; }
    bool is_interval() const noexcept { return kind_ == Kind::Interval; }
    bool is_full() const noexcept { return kind_ == Kind::Full; }
    bool is_empty() const noexcept { return kind_ == Kind::Empty; }
    bool wraps() const noexcept { return kind_ == Kind::Interval && a_ > b_; }

    /// Number of positions in the closed interval [a,b].
    std::size_t length() const noexcept {
        switch (kind_) {
        case Kind::Full: return n_;
        case Kind::Empty: return 0;
        default: return a_ <= b_ ? b_ - a_ + 1 : n_ - a_ + b_ + 1;
        }
    }

    /// Membership in the closed interval [a,b].
    bool contains(std::size_t i) const noexcept {
        switch (kind_) {
        case Kind::Full: return i < n_;
        case Kind::Empty: return false;
        default: return a_ <= b_ ? (a_ <= i && i <= b_) : (i >= a_ || i <= b_);
        }
    }

    /// Membership of a vertex time in the semiopen (a,b], i.e. times a+1..b.
    bool contains_time(std::size_t t) const noexcept {
        switch (kind_) {
        case Kind::Full: return true;
        case Kind::Empty: return false;
        default:
            if (a_ == b_) return false;
            return contains(t) && t != a_;
        }
    }

    /// Span shifted by j positions to the right.
    CyclicSpan advanced(std::size_t j) const {
        if (kind_ != Kind::Interval) return *this;
        return interval((a_ + j) % n_, (b_ + j) % n_, n_);
    }

    std::string to_string() const {
        switch (kind_) {
        case Kind::Full: return "full";
        case Kind::Empty: return "empty";
        default: return "(" + std::to_string(a_) + "," + std::to_string(b_) + "]";
        }
    }

    friend bool operator==(const CyclicSpan&, const CyclicSpan&) = default;
    friend auto operator<=>(const CyclicSpan&, const CyclicSpan&) = default;

private:
    CyclicSpan(Kind k, std::size_t a, std::size_t b, std::size_t n) : kind_(k), a_(a), b_(b), n_(n) {}
    Kind kind_ = Kind::Empty;
    std::size_t a_ = 0;
    std::size_t b_ = 0;
    std::size_t n_ = 0;
};

inline std::size_t span_length(const CyclicSpan& s) { return s.length(); }
inline bool span_contains(const CyclicSpan& s, std::size_t i) { return s.contains(i); }

/// Containment of closed intervals.
inline bool span_subset(const CyclicSpan& s1, const CyclicSpan& s2) {
    if (s1.n() != s2.n()) throw std::invalid_argument("span axis mismatch");
    for (std::size_t i = 0; i < s1.n(); ++i)
        if (s1.contains(i) && !s2.contains(i)) return false;
    return true;
}

/// Whether the closed span covers every nonzero position of x.
inline bool span_covers(const CyclicSpan& s, const Codeword& x) {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] != 0 && !s.contains(i)) return false;
    return true;
}

/// Conventional span plus order exponents of the first and last nonzero symbols.
struct CharTriple {
    CyclicSpan span;
    std::uint32_t o1_exp = 0;
    std::uint32_t o2_exp = 0;

    std::size_t start() const noexcept { return span.a(); }
    std::size_t end() const noexcept { return span.b(); }

    friend bool operator==(const CharTriple&, const CharTriple&) = default;
    friend auto operator<=>(const CharTriple&, const CharTriple&) = default;

    std::string to_string() const {
        return "(" + span.to_string() + "," + std::to_string(o1_exp) + "," + std::to_string(o2_exp) + ")";
    }
};

inline CharTriple char_triple(const Codeword& x) {
    auto first = x.first_nonzero();
    if (!first) return CharTriple{CyclicSpan::empty(x.size()), 0, 0};
    std::size_t last = *x.last_nonzero();
    return CharTriple{CyclicSpan::interval(*first, last, x.size()), x.spec().order_exp(x[*first]),
                      x.spec().order_exp(x[last])};
}

/// Sort key for row echelon order: earlier start first, then higher starting order first.
inline std::pair<std::size_t, std::int64_t> echelon_key(const Codeword& x) {
    auto t = char_triple(x);
    if (t.span.is_empty()) return {x.size(), 0};
    return {t.start(), -static_cast<std::int64_t>(t.o1_exp)};
}

struct CodewordHash {
    std::size_t operator()(const Codeword& c) const noexcept {
        std::size_t h = 1469598103934665603ull;
        for (auto v : c.symbols()) h = (h ^ v) * 1099511628211ull;
        return h;
    }
};

} // namespace zpt
