#pragma once

#include <cstdint>

namespace gf2rps {

// Tallies of residue-channel operations. madd counts modular additions,
// mmult modular multiplications (multiply + reduce), mred standalone
// reductions of an already-computed value into another channel.
struct OpCounter {
    std::uint64_t madd = 0;
    std::uint64_t mmult = 0;
    std::uint64_t mred = 0;

    OpCounter& operator+=(const OpCounter& o) {
        madd += o.madd;
        mmult += o.mmult;
        mred += o.mred;
        return *this;
    }

    friend OpCounter operator+(OpCounter a, const OpCounter& b) {
        a += b;
        return a;
    }

    friend bool operator==(const OpCounter& a, const OpCounter& b) {
        return a.madd == b.madd && a.mmult == b.mmult && a.mred == b.mred;
    }
};

} // namespace gf2rps
