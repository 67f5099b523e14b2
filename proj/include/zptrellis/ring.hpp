#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace zpt {

using Residue = std::uint32_t;

inline bool is_prime(std::uint64_t v) {
    if (v < 2) return false;
    for (std::uint64_t d = 2; d * d <= v; ++d)
        if (v % d == 0) return false;
    return true;
}

/// The ring Z_{p^alpha}.
class RingSpec {
public:
    RingSpec() = default;
    RingSpec(std::uint32_t p, std::uint32_t alpha) : p_(p), alpha_(alpha) {
        if (!is_prime(p)) throw std::invalid_argument("ring: " + std::to_string(p) + " is not prime");
        if (alpha < 1) throw std::invalid_argument("ring: exponent must be >= 1");
        std::uint64_t m = 1;
        for (std::uint32_t i = 0; i < alpha; ++i) {
            m *= p;
            if (m > (std::uint64_t{1} << 24))
                throw std::invalid_argument("ring: modulus too large");
        }
        modulus_ = static_cast<Residue>(m);
    }

    std::uint32_t p() const noexcept { return p_; }
    std::uint32_t alpha() const noexcept { return alpha_; }
    Residue modulus() const noexcept { return modulus_; }

    Residue reduce(std::int64_t v) const noexcept {
        std::int64_t m = modulus_;
        std::int64_t r = v % m;
        return static_cast<Residue>(r < 0 ? r + m : r);
    }
    Residue add(Residue a, Residue b) const noexcept { return static_cast<Residue>((std::uint64_t{a} + b) % modulus_); }
    Residue mul(Residue a, Residue b) const noexcept { return static_cast<Residue>((std::uint64_t{a} * b) % modulus_); }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : modulus_ - a; }

    /// p-adic valuation of a nonzero residue; alpha for zero.
    std::uint32_t valuation(Residue v) const noexcept {
        if (v == 0) return alpha_;
        std::uint32_t e = 0;
        while (v % p_ == 0) { v /= p_; ++e; }
        return e;
    }

    /// Exponent e of the additive order p^e.
    std::uint32_t order_exp(Residue v) const noexcept { return v == 0 ? 0 : alpha_ - valuation(v); }

    bool is_unit(Residue v) const noexcept { return v % p_ != 0; }

    Residue pow_p(std::uint32_t e) const noexcept {
        std::uint64_t r = 1;
        for (std::uint32_t i = 0; i < e; ++i) r = (r * p_) % modulus_;
        return static_cast<Residue>(r);
    }

    std::vector<Residue> units() const {
        std::vector<Residue> out;
        for (Residue u = 1; u < modulus_; ++u)
            if (is_unit(u)) out.push_back(u);
        return out;
    }

    std::string to_string() const { return std::to_string(p_) + "^" + std::to_string(alpha_); }

    friend bool operator==(const RingSpec& a, const RingSpec& b) noexcept {
        return a.p_ == b.p_ && a.alpha_ == b.alpha_;
    }

private:
    std::uint32_t p_ = 2;
    std::uint32_t alpha_ = 1;
    Residue modulus_ = 2;
};

inline void require_same_ring(const RingSpec& a, const RingSpec& b) {
    if (!(a == b))
        throw std::invalid_argument("ring mismatch: Z_" + a.to_string() + " vs Z_" + b.to_string());
}

/// An element of Z_{p^alpha} tagged with its ring.
struct RingElem {
    RingSpec spec;
    Residue value = 0;

    RingElem() = default;
    RingElem(const RingSpec& s, std::int64_t v) : spec(s), value(s.reduce(v)) {}

    friend bool operator==(const RingElem& a, const RingElem& b) noexcept {
        return a.spec == b.spec && a.value == b.value;
    }
    friend RingElem operator+(const RingElem& a, const RingElem& b) {
        require_same_ring(a.spec, b.spec);
        return RingElem(a.spec, a.spec.add(a.value, b.value));
    }
    friend RingElem operator*(const RingElem& a, const RingElem& b) {
        require_same_ring(a.spec, b.spec);
        return RingElem(a.spec, a.spec.mul(a.value, b.value));
    }
    RingElem operator-() const { return RingElem(spec, spec.neg(value)); }
};

inline std::uint32_t order_exp(const RingElem& x) noexcept { return x.spec.order_exp(x.value); }

inline bool is_associate(const RingElem& u, const RingElem& v) {
    require_same_ring(u.spec, v.spec);
    return order_exp(u) == order_exp(v);
}

/// Smallest a with u + a*v == 0 for associates u, v with v nonzero.
inline Residue cancel_coefficient(const RingSpec& spec, Residue u, Residue v) {
    if (v == 0) throw std::invalid_argument("cancel_coefficient: v is zero");
    if (spec.order_exp(u) != spec.order_exp(v))
        throw std::invalid_argument("cancel_coefficient: arguments are not associates");
    // v = p^e * w with w a unit; u = p^e * t. Solve t + a*w == 0 mod p^(alpha-e), smallest a.
    std::uint32_t e = spec.valuation(v);
    Residue q = spec.pow_p(e);
    std::uint64_t m = spec.modulus() / q;
    std::uint64_t w = (v / q) % m;
    std::uint64_t t = (u / q) % m;
    // inverse of w mod m by search over the (small) ring
    std::uint64_t inv = 0;
    for (std::uint64_t c = 1; c < m + 1; ++c)
        if ((w * c) % m == 1 % m) { inv = c % m; break; }
    std::uint64_t a = ((m - t) % m) * inv % m;
    return static_cast<Residue>(a);
}

inline RingElem cancel_coefficient(const RingElem& u, const RingElem& v) {
    require_same_ring(u.spec, v.spec);
    return RingElem(u.spec, cancel_coefficient(u.spec, u.value, v.value));
}

} // namespace zpt
