#ifndef JTARCH_POTENTIAL_HPP
#define JTARCH_POTENTIAL_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "jtarch/counter.hpp"

namespace jtarch {

using Domain = std::vector<int>;

struct Variable {
    int id = 0;
    std::string name;
    int card = 2;
    std::vector<std::string> states;
};

// Raised when division meets x/0 with x > 0.
class InconsistencyError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Dense table over an ordered domain. Row-major, last variable fastest.
class Potential {
public:
    Potential() : values_{1.0} {}
    Potential(Domain domain, std::vector<int> cards, std::vector<double> values, bool identity = false);

    const Domain& domain() const { return domain_; }
    const std::vector<int>& cards() const { return cards_; }
    const std::vector<double>& values() const { return values_; }
    std::size_t size() const { return values_.size(); }
    bool is_identity() const { return identity_; }

    bool contains(int var) const;
    int position(int var) const;
    int card_of(int var) const;

    // Value at an assignment indexed by variable id (entries for other ids ignored).
    double at(const std::vector<int>& assignment_by_var) const;
    double sum() const;

private:
    Domain domain_;
    std::vector<int> cards_;
    std::vector<double> values_;
    bool identity_ = false;
};

std::size_t state_space(const std::vector<int>& cards);

Potential make_potential(const std::vector<Variable>& domain, std::vector<double> values);
Potential make_potential(Domain domain, std::vector<int> cards, std::vector<double> values);
Potential identity_potential(const Domain& domain, const std::vector<int>& cards);
Potential identity_potential(const std::vector<Variable>& domain);

Potential multiply(const Potential& a, const Potential& b, OpCounter& counter);
Potential marginalize(const Potential& a, const Domain& keep, OpCounter& counter);
Potential divide(const Potential& num, const Potential& den, OpCounter& counter);
Potential normalize(const Potential& a);

// Reorders a potential to the given permutation of its domain; no counting.
Potential reorder(const Potential& a, const Domain& order);

// Copies `a` onto the larger domain by repetition; no counting.
Potential extend(const Potential& a, const Domain& domain, const std::vector<int>& cards);

// Engine-level combination: multiplying by an identity-marked operand is a
// free extension, otherwise this is multiply().
Potential absorb(const Potential& a, const Potential& b, OpCounter& counter);

// Engine-level projection: projecting onto the whole domain returns the
// operand untouched (identity mark included), otherwise marginalize().
Potential project(const Potential& a, const Domain& keep, OpCounter& counter);

double max_abs_diff(const Potential& a, const Potential& b);

} // namespace jtarch

#endif
