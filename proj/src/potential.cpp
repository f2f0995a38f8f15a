#include "jtarch/potential.hpp"

#include <algorithm>
#include <cmath>

namespace jtarch {

namespace {

std::vector<std::size_t> strides_of(const std::vector<int>& cards) {
    std::vector<std::size_t> s(cards.size());
    std::size_t acc = 1;
    for (std::size_t k = cards.size(); k-- > 0;) {
        s[k] = acc;
        acc *= std::size_t(cards[k]);
    }
    return s;
}

// Stride of each result-domain variable inside `p` (0 when absent).
std::vector<std::size_t> strides_in(const Domain& result, const Potential& p) {
    auto own = strides_of(p.cards());
    std::vector<std::size_t> s(result.size(), 0);
    for (std::size_t k = 0; k < result.size(); ++k) {
        int pos = p.position(result[k]);
        if (pos >= 0) s[k] = own[std::size_t(pos)];
    }
    return s;
}

// Walks every configuration of (dom, cards) in row-major order, calling
// f(offsets) with the running offsets for each stride table.
template <std::size_t K, class F>
void odometer(const std::vector<int>& cards, const std::vector<std::size_t> (&strides)[K], F&& f) {
    std::size_t n = state_space(cards);
    std::vector<int> idx(cards.size(), 0);
    std::size_t off[K] = {};
    for (std::size_t lin = 0; lin < n; ++lin) {
        f(lin, off);
        for (std::size_t k = cards.size(); k-- > 0;) {
            if (++idx[k] < cards[k]) {
                for (std::size_t j = 0; j < K; ++j) off[j] += strides[j][k];
                break;
            }
            for (std::size_t j = 0; j < K; ++j) off[j] -= strides[j][k] * std::size_t(cards[k] - 1);
            idx[k] = 0;
        }
    }
}

void check_domain(const Domain& domain, const std::vector<int>& cards) {
    if (domain.size() != cards.size()) throw std::invalid_argument("domain and cardinality lists differ in length");
    for (std::size_t i = 0; i < domain.size(); ++i) {
        if (cards[i] < 1) throw std::invalid_argument("cardinality must be positive");
        for (std::size_t j = i + 1; j < domain.size(); ++j)
            if (domain[i] == domain[j])
                throw std::invalid_argument("duplicate variable " + std::to_string(domain[i]) + " in domain");
    }
}

} // namespace

std::size_t state_space(const std::vector<int>& cards) {
    std::size_t n = 1;
    for (int c : cards) n *= std::size_t(c);
    return n;
}

Potential::Potential(Domain domain, std::vector<int> cards, std::vector<double> values, bool identity)
    : domain_(std::move(domain)), cards_(std::move(cards)), values_(std::move(values)), identity_(identity) {
    check_domain(domain_, cards_);
    if (values_.size() != state_space(cards_))
        throw std::invalid_argument("expected " + std::to_string(state_space(cards_)) + " values, got " +
                                    std::to_string(values_.size()));
    for (double v : values_)
        if (!(v >= 0.0)) throw std::invalid_argument("potential values must be non-negative");
}

bool Potential::contains(int var) const { return position(var) >= 0; }

int Potential::position(int var) const {
    for (std::size_t i = 0; i < domain_.size(); ++i)
        if (domain_[i] == var) return int(i);
    return -1;
}

int Potential::card_of(int var) const {
    int p = position(var);
    if (p < 0) throw std::out_of_range("variable not in domain");
    return cards_[std::size_t(p)];
}

double Potential::at(const std::vector<int>& assignment_by_var) const {
    std::size_t off = 0;
    for (std::size_t k = 0; k < domain_.size(); ++k)
        off = off * std::size_t(cards_[k]) + std::size_t(assignment_by_var.at(std::size_t(domain_[k])));
    return values_[off];
}

double Potential::sum() const {
    double s = 0;
    for (double v : values_) s += v;
    return s;
}

Potential make_potential(const std::vector<Variable>& domain, std::vector<double> values) {
    Domain ids;
    std::vector<int> cards;
    for (const auto& v : domain) {
        ids.push_back(v.id);
        cards.push_back(v.card);
    }
    return Potential(std::move(ids), std::move(cards), std::move(values));
}

Potential make_potential(Domain domain, std::vector<int> cards, std::vector<double> values) {
    return Potential(std::move(domain), std::move(cards), std::move(values));
}

Potential identity_potential(const Domain& domain, const std::vector<int>& cards) {
    return Potential(domain, cards, std::vector<double>(state_space(cards), 1.0), true);
}

Potential identity_potential(const std::vector<Variable>& domain) {
    Domain ids;
    std::vector<int> cards;
    for (const auto& v : domain) {
        ids.push_back(v.id);
        cards.push_back(v.card);
    }
    return identity_potential(ids, cards);
}

namespace {

void union_domain(const Potential& a, const Potential& b, Domain& dom, std::vector<int>& cards) {
    dom = a.domain();
    cards = a.cards();
    for (std::size_t k = 0; k < b.domain().size(); ++k) {
        int pa = a.position(b.domain()[k]);
        if (pa < 0) {
            dom.push_back(b.domain()[k]);
            cards.push_back(b.cards()[k]);
        } else if (a.cards()[std::size_t(pa)] != b.cards()[k]) {
            throw std::invalid_argument("cardinality mismatch for variable " + std::to_string(b.domain()[k]));
        }
    }
}

Potential product(const Potential& a, const Potential& b) {
    Domain dom;
    std::vector<int> cards;
    union_domain(a, b, dom, cards);
    const std::vector<std::size_t> st[2] = {strides_in(dom, a), strides_in(dom, b)};
    std::vector<double> out(state_space(cards));
    const auto& av = a.values();
    const auto& bv = b.values();
    odometer(cards, st, [&](std::size_t lin, const std::size_t* off) { out[lin] = av[off[0]] * bv[off[1]]; });
    return Potential(std::move(dom), std::move(cards), std::move(out));
}

} // namespace

Potential multiply(const Potential& a, const Potential& b, OpCounter& counter) {
    Potential r = product(a, b);
    counter.mults += r.size();
    return r;
}

Potential marginalize(const Potential& a, const Domain& keep, OpCounter& counter) {
    Domain dom;
    std::vector<int> cards;
    for (std::size_t k = 0; k < a.domain().size(); ++k) {
        if (std::find(keep.begin(), keep.end(), a.domain()[k]) != keep.end()) {
            dom.push_back(a.domain()[k]);
            cards.push_back(a.cards()[k]);
        }
    }
    if (dom.size() != keep.size()) throw std::invalid_argument("marginalization target is not a subset of the domain");
    std::vector<double> out(state_space(cards), 0.0);
    Potential shape(dom, cards, std::vector<double>(out.size(), 0.0));
    const std::vector<std::size_t> st[1] = {strides_in(a.domain(), shape)};
    const auto& av = a.values();
    odometer(a.cards(), st, [&](std::size_t lin, const std::size_t* off) { out[off[0]] += av[lin]; });
    counter.adds += a.size() - out.size();
    return Potential(std::move(dom), std::move(cards), std::move(out));
}

Potential divide(const Potential& num, const Potential& den, OpCounter& counter) {
    for (int v : den.domain())
        if (!num.contains(v)) throw std::invalid_argument("denominator domain is not a subset of the numerator domain");
    if (den.is_identity()) return num;
    const std::vector<std::size_t> st[1] = {strides_in(num.domain(), den)};
    std::vector<double> out(num.size());
    const auto& nv = num.values();
    const auto& dv = den.values();
    odometer(num.cards(), st, [&](std::size_t lin, const std::size_t* off) {
        double d = dv[off[0]];
        if (d == 0.0) {
            if (nv[lin] != 0.0) throw InconsistencyError("division of a positive value by zero");
            out[lin] = 0.0;
        } else {
            out[lin] = nv[lin] / d;
        }
    });
    counter.divs += num.size();
    return Potential(num.domain(), num.cards(), std::move(out));
}

Potential normalize(const Potential& a) {
    double s = a.sum();
    if (!(s > 0.0)) throw std::invalid_argument("cannot normalize a potential with zero mass");
    std::vector<double> out(a.values());
    for (double& v : out) v /= s;
    return Potential(a.domain(), a.cards(), std::move(out));
}

Potential reorder(const Potential& a, const Domain& order) {
    if (order.size() != a.domain().size()) throw std::invalid_argument("reorder needs a permutation of the domain");
    std::vector<int> cards;
    for (int v : order) {
        int p = a.position(v);
        if (p < 0) throw std::invalid_argument("reorder needs a permutation of the domain");
        cards.push_back(a.cards()[std::size_t(p)]);
    }
    const std::vector<std::size_t> st[1] = {strides_in(order, a)};
    std::vector<double> out(a.size());
    const auto& av = a.values();
    odometer(cards, st, [&](std::size_t lin, const std::size_t* off) { out[lin] = av[off[0]]; });
    return Potential(order, std::move(cards), std::move(out), a.is_identity());
}

Potential extend(const Potential& a, const Domain& domain, const std::vector<int>& cards) {
    for (int v : a.domain())
        if (std::find(domain.begin(), domain.end(), v) == domain.end())
            throw std::invalid_argument("extension domain must contain the operand domain");
    Potential shape(domain, cards, std::vector<double>(state_space(cards), 1.0), true);
    if (a.is_identity()) return shape;
    return product(shape, a);
}

Potential absorb(const Potential& a, const Potential& b, OpCounter& counter) {
    if (a.is_identity() && b.is_identity()) {
        Domain dom;
        std::vector<int> cards;
        union_domain(a, b, dom, cards);
        return identity_potential(dom, cards);
    }
    if (a.is_identity() || b.is_identity()) return product(a, b);
    return multiply(a, b, counter);
}

Potential project(const Potential& a, const Domain& keep, OpCounter& counter) {
    if (keep.size() == a.domain().size()) {
        for (int v : keep)
            if (!a.contains(v)) throw std::invalid_argument("projection target is not a subset of the domain");
        return a;
    }
    return marginalize(a, keep, counter);
}

double max_abs_diff(const Potential& a, const Potential& b) {
    Potential bb = reorder(b, a.domain());
    double m = 0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a.values()[i] - bb.values()[i]));
    return m;
}

} // namespace jtarch
