#pragma once

// Residue arithmetic for GF(2) polynomials: a fixed list of pairwise coprime
// moduli M_1..M_n represents any polynomial of degree < L = sum(deg M_i) by
// its vector of remainders. The context precomputes everything the
// conversions and the recurrence-based algorithms need:
//
//   cofactor(i)   = M / M_i
//   crt_weight(i) = (M / M_i)^-1 mod M_i
//   inverse(k, i) = M_k^-1 mod M_i          for every ordered pair k != i
//
// Moduli keep the order they were given in; algorithms that care about
// position (mixed-radix digits, quotient plans) refer to indices into this
// order rather than reordering anything.

#include <cstddef>
#include <cstdint>
#include <istream>
#include <memory>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gf2poly.hpp"

namespace gf2rps {

class RpsContext {
  public:
    explicit RpsContext(std::vector<Gf2Poly> moduli) : moduli_(std::move(moduli)) {
        const std::size_t n = moduli_.size();
        if (n < 2)
            throw Error(Errc::too_few_moduli, "a residue system needs at least two moduli");
        deg_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            if (moduli_[i].degree() < 1)
                throw Error(Errc::degree_zero_modulus,
                            "modulus " + std::to_string(i) + " has degree < 1",
                            static_cast<std::int64_t>(i));
            deg_[i] = moduli_[i].degree();
        }
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j)
                if (!gcd(moduli_[i], moduli_[j]).is_one())
                    throw Error(Errc::not_coprime,
                                "moduli " + std::to_string(i) + " and " + std::to_string(j) +
                                    " are not coprime",
                                static_cast<std::int64_t>(i), static_cast<std::int64_t>(j));

        big_ = Gf2Poly::one();
        total_deg_ = 0;
        for (std::size_t i = 0; i < n; ++i) {
            big_ *= moduli_[i];
            total_deg_ += deg_[i];
        }

        cofactor_.resize(n);
        weight_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            cofactor_[i] = big_ / moduli_[i];
            weight_[i] = inv_mod(cofactor_[i] % moduli_[i], moduli_[i]);
        }

        inv_.resize(n * n);
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                if (k != i) inv_[k * n + i] = inv_mod(moduli_[k] % moduli_[i], moduli_[i]);
    }

    std::size_t size() const { return moduli_.size(); }
    const std::vector<Gf2Poly>& moduli() const { return moduli_; }
    const Gf2Poly& modulus(std::size_t i) const { return moduli_[i]; }
    const Gf2Poly& big_modulus() const { return big_; }
    std::int64_t channel_degree(std::size_t i) const { return deg_[i]; }
    std::int64_t total_degree() const { return total_deg_; }
    const Gf2Poly& cofactor(std::size_t i) const { return cofactor_[i]; }
    const Gf2Poly& crt_weight(std::size_t i) const { return weight_[i]; }

    // M_k^-1 mod M_i; k == i is never meaningful.
    const Gf2Poly& inverse(std::size_t k, std::size_t i) const {
        return inv_[k * moduli_.size() + i];
    }

    Gf2Poly reduce(std::size_t i, const Gf2Poly& x) const { return x % moduli_[i]; }

    Gf2Poly mul_mod(std::size_t i, const Gf2Poly& a, const Gf2Poly& b) const {
        return (a * b) % moduli_[i];
    }

  private:
    std::vector<Gf2Poly> moduli_;
    Gf2Poly big_;
    std::vector<Gf2Poly> cofactor_;
    std::vector<Gf2Poly> weight_;
    std::vector<Gf2Poly> inv_;
    std::vector<std::int64_t> deg_;
    std::int64_t total_deg_ = 0;
};

using RpsContextPtr = std::shared_ptr<const RpsContext>;

inline RpsContext build_context(std::vector<Gf2Poly> moduli) {
    return RpsContext(std::move(moduli));
}

inline RpsContextPtr build_context_ptr(std::vector<Gf2Poly> moduli) {
    return std::make_shared<const RpsContext>(std::move(moduli));
}

// Residues of one polynomial across the context's channels. Entries whose
// known flag is clear hold no meaningful value; the quotient and
// base-extension steps hand such partially-known vectors around.
struct ResidueVector {
    std::vector<Gf2Poly> values;
    std::vector<bool> known;

    ResidueVector() = default;
    explicit ResidueVector(std::size_t n) : values(n), known(n, false) {}

    std::size_t size() const { return values.size(); }

    bool fully_known() const {
        for (bool k : known)
            if (!k) return false;
        return !known.empty();
    }

    friend bool operator==(const ResidueVector& a, const ResidueVector& b) {
        return a.values == b.values && a.known == b.known;
    }
};

inline ResidueVector to_residues(const Gf2Poly& x, const RpsContext& ctx) {
    ResidueVector v(ctx.size());
    for (std::size_t i = 0; i < ctx.size(); ++i) {
        v.values[i] = ctx.reduce(i, x);
        v.known[i] = true;
    }
    return v;
}

// Unique X with degree(X) < L matching every channel:
//   X = sum_i (T_i * x_i mod M_i) * (M / M_i)
// Each summand already has degree < L, so no final reduction is needed.
inline Gf2Poly crt_reconstruct(const ResidueVector& v, const RpsContext& ctx) {
    if (v.size() != ctx.size())
        throw Error(Errc::bad_argument, "residue vector size does not match context");
    if (!v.fully_known())
        throw Error(Errc::partial_vector, "cannot reconstruct from a partially known vector");
    Gf2Poly x;
    for (std::size_t i = 0; i < ctx.size(); ++i)
        x += ctx.mul_mod(i, ctx.crt_weight(i), v.values[i]) * ctx.cofactor(i);
    return x;
}

// Reconstruction over a subset of channels: valid whenever the represented
// polynomial has degree below the sum of the chosen channel degrees.
inline Gf2Poly reconstruct_partial(const ResidueVector& v, const RpsContext& ctx,
                                   const std::vector<std::size_t>& indices) {
    if (indices.empty())
        throw Error(Errc::bad_argument, "partial reconstruction over an empty index set");
    Gf2Poly sub = Gf2Poly::one();
    for (std::size_t i : indices) {
        if (i >= ctx.size() || i >= v.size() || !v.known[i])
            throw Error(Errc::partial_vector,
                        "channel " + std::to_string(i) + " is not available",
                        static_cast<std::int64_t>(i));
        sub *= ctx.modulus(i);
    }
    Gf2Poly x;
    for (std::size_t i : indices) {
        const Gf2Poly cof = sub / ctx.modulus(i);
        const Gf2Poly w = inv_mod(cof % ctx.modulus(i), ctx.modulus(i));
        x += ctx.mul_mod(i, w, v.values[i]) * cof;
    }
    return x;
}

// Mixed-radix form: X = Y_1 + Y_2*M_1 + Y_3*M_1*M_2 + ... with
// degree(Y_i) < degree(M_i). Digit k falls out of the same subtract-and-
// divide recurrence the quotient algorithm uses, pivoting on each modulus
// in context order.
struct MrsDigits {
    std::vector<Gf2Poly> digits;
};

inline MrsDigits to_mrs(const ResidueVector& v, const RpsContext& ctx) {
    if (v.size() != ctx.size())
        throw Error(Errc::bad_argument, "residue vector size does not match context");
    if (!v.fully_known())
        throw Error(Errc::partial_vector, "cannot convert a partially known vector");
    const std::size_t n = ctx.size();
    std::vector<Gf2Poly> scratch = v.values;
    MrsDigits out;
    out.digits.resize(n);
    out.digits[0] = scratch[0];
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const Gf2Poly pivot = scratch[k];
        for (std::size_t i = k + 1; i < n; ++i)
            scratch[i] = ctx.mul_mod(i, scratch[i] + pivot, ctx.inverse(k, i));
        out.digits[k + 1] = scratch[k + 1];
    }
    return out;
}

inline Gf2Poly from_mrs(const MrsDigits& d, const RpsContext& ctx) {
    if (d.digits.size() != ctx.size())
        throw Error(Errc::bad_argument, "digit count does not match context");
    Gf2Poly x;
    for (std::size_t k = ctx.size(); k-- > 0;) {
        if (k + 1 < ctx.size()) x *= ctx.modulus(k);
        x += d.digits[k];
    }
    return x;
}

// --- moduli-set file format ----------------------------------------------
// One hex polynomial per line, in context order. '#' starts a comment,
// blank lines are ignored.

inline std::vector<Gf2Poly> read_moduli(std::istream& in) {
    std::vector<Gf2Poly> moduli;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::size_t b = line.find_first_not_of(" \t\r");
        if (b == std::string::npos) continue;
        std::size_t e = line.find_last_not_of(" \t\r");
        try {
            moduli.push_back(from_hex(std::string_view(line).substr(b, e - b + 1)));
        } catch (const Error& err) {
            throw Error(Errc::parse_error,
                        "line " + std::to_string(lineno) + ": " + err.what());
        }
    }
    return moduli;
}

inline void write_moduli(std::ostream& out, const std::vector<Gf2Poly>& moduli,
                         const std::vector<std::string>& comments = {}) {
    for (const auto& c : comments) out << "# " << c << "\n";
    for (const auto& m : moduli) out << to_hex(m) << "\n";
}

} // namespace gf2rps
