#pragma once

// Polynomials over GF(2) in the variable u, packed one coefficient per bit.
// Bit i of word w is the coefficient of u^(64*w+i). The word vector is kept
// canonical (no trailing zero words), so equality is plain vector equality
// and degree() is a top-word scan.

#include <algorithm>
#include <bit>
#include <cctype>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace gf2rps {

// degree(0). Far enough below zero that sums of two degrees never wrap.
inline constexpr std::int64_t kNegInfDegree = std::numeric_limits<std::int64_t>::min() / 4;

namespace detail {

// XOR src, shifted left by `shift` bits, into dst. dst must be large enough.
inline void xor_shifted_words(std::vector<std::uint64_t>& dst,
                              const std::vector<std::uint64_t>& src, std::size_t shift) {
    const std::size_t wshift = shift / 64;
    const unsigned bshift = static_cast<unsigned>(shift % 64);
    if (bshift == 0) {
        for (std::size_t i = 0; i < src.size(); ++i) dst[wshift + i] ^= src[i];
    } else {
        std::uint64_t carry = 0;
        for (std::size_t i = 0; i < src.size(); ++i) {
            dst[wshift + i] ^= (src[i] << bshift) | carry;
            carry = src[i] >> (64 - bshift);
        }
        if (carry != 0) dst[wshift + src.size()] ^= carry;
    }
}

} // namespace detail

class Gf2Poly {
  public:
    Gf2Poly() = default; // zero polynomial

    static Gf2Poly zero() { return Gf2Poly{}; }

    static Gf2Poly one() { return monomial(0); }

    // u^k
    static Gf2Poly monomial(std::size_t k) {
        Gf2Poly p;
        p.set_coeff(k, true);
        return p;
    }

    // Low 64 coefficients given as an integer bit mask, e.g. 0x43 = u^6+u+1.
    static Gf2Poly from_bits(std::uint64_t bits) {
        Gf2Poly p;
        if (bits != 0) p.words_.push_back(bits);
        return p;
    }

    static Gf2Poly from_words(std::vector<std::uint64_t> words) {
        Gf2Poly p;
        p.words_ = std::move(words);
        p.trim();
        return p;
    }

    bool is_zero() const { return words_.empty(); }

    bool is_one() const { return words_.size() == 1 && words_[0] == 1; }

    std::int64_t degree() const {
        if (words_.empty()) return kNegInfDegree;
        const std::uint64_t top = words_.back();
        return static_cast<std::int64_t>(words_.size()) * 64 - 1 - std::countl_zero(top);
    }

    bool coeff(std::size_t i) const {
        const std::size_t w = i / 64;
        if (w >= words_.size()) return false;
        return (words_[w] >> (i % 64)) & 1u;
    }

    void set_coeff(std::size_t i, bool value) {
        const std::size_t w = i / 64;
        if (value) {
            if (w >= words_.size()) words_.resize(w + 1, 0);
            words_[w] |= std::uint64_t{1} << (i % 64);
        } else if (w < words_.size()) {
            words_[w] &= ~(std::uint64_t{1} << (i % 64));
            trim();
        }
    }

    const std::vector<std::uint64_t>& words() const { return words_; }

    std::size_t weight() const {
        std::size_t n = 0;
        for (std::uint64_t w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    friend bool operator==(const Gf2Poly& a, const Gf2Poly& b) { return a.words_ == b.words_; }
    friend bool operator!=(const Gf2Poly& a, const Gf2Poly& b) { return !(a == b); }

    // Ordering by degree, then lexicographic from the top coefficient down.
    // Exists so factor lists can be sorted deterministically.
    friend bool operator<(const Gf2Poly& a, const Gf2Poly& b) {
        if (a.words_.size() != b.words_.size()) return a.words_.size() < b.words_.size();
        return std::lexicographical_compare(a.words_.rbegin(), a.words_.rend(),
                                            b.words_.rbegin(), b.words_.rend());
    }

    Gf2Poly& operator+=(const Gf2Poly& rhs) {
        if (rhs.words_.size() > words_.size()) words_.resize(rhs.words_.size(), 0);
        for (std::size_t i = 0; i < rhs.words_.size(); ++i) words_[i] ^= rhs.words_[i];
        trim();
        return *this;
    }

    friend Gf2Poly operator+(Gf2Poly a, const Gf2Poly& b) {
        a += b;
        return a;
    }

    // Addition and subtraction coincide in characteristic 2.
    friend Gf2Poly operator-(Gf2Poly a, const Gf2Poly& b) {
        a += b;
        return a;
    }

    friend Gf2Poly operator*(const Gf2Poly& a, const Gf2Poly& b) {
        if (a.is_zero() || b.is_zero()) return {};
        // School-book: for every set bit of a, XOR in b shifted by that bit.
        std::vector<std::uint64_t> acc(a.words_.size() + b.words_.size(), 0);
        for (std::size_t w = 0; w < a.words_.size(); ++w) {
            std::uint64_t bits = a.words_[w];
            while (bits != 0) {
                const int j = std::countr_zero(bits);
                bits &= bits - 1;
                detail::xor_shifted_words(acc, b.words_, w * 64 + static_cast<std::size_t>(j));
            }
        }
        return from_words(std::move(acc));
    }

    Gf2Poly& operator*=(const Gf2Poly& rhs) { return *this = *this * rhs; }

    // Multiply by u^k.
    friend Gf2Poly operator<<(const Gf2Poly& a, std::size_t k) {
        if (a.is_zero()) return {};
        std::vector<std::uint64_t> acc(a.words_.size() + k / 64 + 1, 0);
        detail::xor_shifted_words(acc, a.words_, k);
        return from_words(std::move(acc));
    }

    // Drop coefficients below u^k, i.e. floor division by u^k.
    friend Gf2Poly operator>>(const Gf2Poly& a, std::size_t k) {
        const std::size_t wshift = k / 64;
        if (wshift >= a.words_.size()) return {};
        const unsigned bshift = static_cast<unsigned>(k % 64);
        std::vector<std::uint64_t> acc(a.words_.begin() + static_cast<std::ptrdiff_t>(wshift),
                                       a.words_.end());
        if (bshift != 0) {
            for (std::size_t i = 0; i + 1 < acc.size(); ++i)
                acc[i] = (acc[i] >> bshift) | (acc[i + 1] << (64 - bshift));
            acc.back() >>= bshift;
        }
        return from_words(std::move(acc));
    }

    void trim() {
        while (!words_.empty() && words_.back() == 0) words_.pop_back();
    }

  private:
    std::vector<std::uint64_t> words_;
};

struct DivRem {
    Gf2Poly quotient;
    Gf2Poly remainder;
};

// Long division: x = quotient * d + remainder with degree(remainder) < degree(d).
inline DivRem divrem(const Gf2Poly& x, const Gf2Poly& d) {
    if (d.is_zero()) throw Error(Errc::division_by_zero, "polynomial division by zero");
    const std::int64_t dd = d.degree();
    if (x.degree() < dd) return {Gf2Poly{}, x};

    std::vector<std::uint64_t> rw = x.words();
    std::vector<std::uint64_t> qw(static_cast<std::size_t>(x.degree() - dd) / 64 + 1, 0);
    const std::vector<std::uint64_t>& dw = d.words();
    for (std::int64_t pos = x.degree(); pos >= dd; --pos) {
        const std::size_t p = static_cast<std::size_t>(pos);
        if (((rw[p / 64] >> (p % 64)) & 1u) == 0) continue;
        const std::size_t shift = static_cast<std::size_t>(pos - dd);
        detail::xor_shifted_words(rw, dw, shift);
        qw[shift / 64] |= std::uint64_t{1} << (shift % 64);
    }
    return {Gf2Poly::from_words(std::move(qw)), Gf2Poly::from_words(std::move(rw))};
}

inline Gf2Poly operator/(const Gf2Poly& x, const Gf2Poly& d) { return divrem(x, d).quotient; }
inline Gf2Poly operator%(const Gf2Poly& x, const Gf2Poly& d) { return divrem(x, d).remainder; }

inline Gf2Poly gcd(Gf2Poly a, Gf2Poly b) {
    if (a.is_zero() && b.is_zero()) throw Error(Errc::both_zero, "gcd(0, 0) is undefined");
    while (!b.is_zero()) {
        Gf2Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a; // monic automatically: every nonzero GF(2) polynomial is
}

// Inverse of a modulo m via the extended Euclidean algorithm.
inline Gf2Poly inv_mod(const Gf2Poly& a, const Gf2Poly& m) {
    if (m.is_zero()) throw Error(Errc::division_by_zero, "inverse modulo zero");
    if (m.degree() < 1)
        throw Error(Errc::invalid_modulus, "inverse modulo a degree-0 polynomial");
    Gf2Poly r0 = m, r1 = a % m;
    Gf2Poly s0, s1 = Gf2Poly::one();
    while (!r1.is_zero()) {
        auto [q, r2] = divrem(r0, r1);
        Gf2Poly s2 = s0 + q * s1;
        r0 = std::move(r1);
        r1 = std::move(r2);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (!r0.is_one())
        throw Error(Errc::not_invertible, "element is not invertible modulo the given polynomial");
    return s0 % m;
}

inline Gf2Poly mul_mod(const Gf2Poly& a, const Gf2Poly& b, const Gf2Poly& m) {
    return (a * b) % m;
}

// Hex encoding of the coefficient bit-vector: bit i of the value is the
// coefficient of u^i, so u^6+u+1 <-> "0x43". Zero prints as "0x0".
inline std::string to_hex(const Gf2Poly& p) {
    if (p.is_zero()) return "0x0";
    static const char* digits = "0123456789abcdef";
    const auto& words = p.words();
    std::string out;
    bool leading = true;
    for (std::size_t i = words.size(); i-- > 0;) {
        for (int nib = 15; nib >= 0; --nib) {
            const unsigned d = static_cast<unsigned>((words[i] >> (nib * 4)) & 0xF);
            if (leading && d == 0) continue;
            leading = false;
            out.push_back(digits[d]);
        }
    }
    return "0x" + out;
}

inline Gf2Poly from_hex(std::string_view text) {
    std::string_view s = text;
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) s.remove_prefix(2);
    if (s.empty())
        throw Error(Errc::parse_error, "empty hex polynomial in \"" + std::string(text) + "\"");
    Gf2Poly p;
    std::size_t bitpos = 0; // bit position of the current nibble, from the right
    for (std::size_t i = s.size(); i-- > 0;) {
        const char c = s[i];
        unsigned v;
        if (c >= '0' && c <= '9') v = static_cast<unsigned>(c - '0');
        else if (c >= 'a' && c <= 'f') v = static_cast<unsigned>(c - 'a') + 10;
        else if (c >= 'A' && c <= 'F') v = static_cast<unsigned>(c - 'A') + 10;
        else
            throw Error(Errc::parse_error,
                        "bad hex digit '" + std::string(1, c) + "' in \"" + std::string(text) + "\"");
        for (unsigned b = 0; b < 4; ++b)
            if ((v >> b) & 1u) p.set_coeff(bitpos + b, true);
        bitpos += 4;
    }
    return p;
}

} // namespace gf2rps
