#ifndef JTARCH_COUNTER_HPP
#define JTARCH_COUNTER_HPP

#include <cstdint>

namespace jtarch {

// Tally of binary arithmetic operations.
struct OpCounter {
    std::uint64_t adds = 0;
    std::uint64_t mults = 0;
    std::uint64_t divs = 0;

    std::uint64_t total() const { return adds + mults + divs; }
    double weighted_total(double div_weight) const {
        return double(adds) + double(mults) + div_weight * double(divs);
    }

    OpCounter& operator+=(const OpCounter& o) {
        adds += o.adds;
        mults += o.mults;
        divs += o.divs;
        return *this;
    }
    bool operator==(const OpCounter&) const = default;
};

inline OpCounter merge(const OpCounter& a, const OpCounter& b) {
    OpCounter r = a;
    r += b;
    return r;
}

} // namespace jtarch

#endif
