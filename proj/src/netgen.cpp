#include "jtarch/netgen.hpp"

#include <algorithm>
#include <stdexcept>

namespace jtarch {

void check_params(const GenParams& g) {
    if (g.n < 2) throw std::invalid_argument("n must be at least 2");
    if (g.c1 < 1) throw std::invalid_argument("c1 must be at least 1");
    if (g.c2 < 2) throw std::invalid_argument("c2 must be at least 2");
    if (g.m < 2) throw std::invalid_argument("m must be at least 2");
    if (g.p < 1 || g.p > g.n) throw std::invalid_argument("p must lie in [1, n]");
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t) { return splitmix64(seed ^ splitmix64(t)); }

int uniform_int(Rng& rng, int lo, int hi) {
    std::uint64_t span = std::uint64_t(hi - lo) + 1;
    std::uint64_t limit = ~std::uint64_t(0) - (~std::uint64_t(0) % span);
    std::uint64_t x;
    do x = rng();
    while (x >= limit);
    return lo + int(x % span);
}

double uniform_open(Rng& rng) {
    double u;
    do u = double(rng() >> 11) * 0x1.0p-53;
    while (u == 0.0);
    return u;
}

namespace {

bool reaches(const std::vector<std::vector<int>>& children, int from, int to) {
    std::vector<int> st{from};
    std::vector<char> seen(children.size(), 0);
    seen[std::size_t(from)] = 1;
    while (!st.empty()) {
        int u = st.back();
        st.pop_back();
        if (u == to) return true;
        for (int w : children[std::size_t(u)])
            if (!seen[std::size_t(w)]) {
                seen[std::size_t(w)] = 1;
                st.push_back(w);
            }
    }
    return false;
}

} // namespace

BayesNet random_net(const GenParams& g) {
    check_params(g);
    Rng rng(splitmix64(g.seed));
    BayesNet net;
    for (int i = 0; i < g.n; ++i) {
        int card = uniform_int(rng, 2, g.m);
        Variable v{i, "V" + std::to_string(i), card, {}};
        for (int s = 0; s < card; ++s) v.states.push_back("s" + std::to_string(s));
        net.vars.push_back(v);
    }
    net.parents.assign(std::size_t(g.n), {});
    std::vector<std::vector<int>> children(std::size_t(g.n));
    for (int i = 1; i < g.n; ++i) {
        std::vector<int> cand;
        for (int j = std::max(0, i - g.c1); j < i; ++j) cand.push_back(j);
        int k = std::min<int>(uniform_int(rng, 1, g.c2 - 1), int(cand.size()));
        // partial Fisher-Yates: first k entries become the sample
        for (int s = 0; s < k; ++s) std::swap(cand[std::size_t(s)], cand[std::size_t(uniform_int(rng, s, int(cand.size()) - 1))]);
        for (int s = 0; s < k; ++s) {
            int j = cand[std::size_t(s)];
            bool child_of_i = uniform_int(rng, 0, 1) == 1;
            if (child_of_i) {
                // i -> j closes a cycle when j already reaches a parent of i
                for (int p : net.parents[std::size_t(i)])
                    if (reaches(children, j, p)) child_of_i = false;
            } else {
                for (int c : children[std::size_t(i)])
                    if (reaches(children, c, j)) child_of_i = true;
            }
            if (child_of_i) {
                net.parents[std::size_t(j)].push_back(i);
                children[std::size_t(i)].push_back(j);
            } else {
                net.parents[std::size_t(i)].push_back(j);
                children[std::size_t(j)].push_back(i);
            }
        }
    }
    for (int v = 0; v < g.n; ++v) {
        auto& pa = net.parents[std::size_t(v)];
        std::sort(pa.begin(), pa.end());
        Domain dom = pa;
        dom.push_back(v);
        std::vector<int> cards;
        for (int x : dom) cards.push_back(net.vars[std::size_t(x)].card);
        std::size_t total = state_space(cards);
        std::size_t row = std::size_t(net.vars[std::size_t(v)].card);
        std::vector<double> vals(total);
        for (std::size_t r = 0; r < total; r += row) {
            double s = 0;
            for (std::size_t k = 0; k < row; ++k) s += vals[r + k] = uniform_open(rng);
            for (std::size_t k = 0; k < row; ++k) vals[r + k] /= s;
        }
        net.cpts.push_back(make_potential(dom, cards, vals));
    }
    return net;
}

Evidence random_evidence(const BayesNet& net, const GenParams& g, Rng& rng) {
    int n = int(net.size());
    int count = uniform_int(rng, 1, std::min(g.p, n));
    std::vector<int> ids(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) ids[std::size_t(i)] = i;
    for (int s = 0; s < count; ++s) std::swap(ids[std::size_t(s)], ids[std::size_t(uniform_int(rng, s, n - 1))]);
    Evidence ev;
    for (int s = 0; s < count; ++s) {
        int v = ids[std::size_t(s)];
        std::vector<double> vec(std::size_t(net.vars[std::size_t(v)].card), 0.0);
        vec[std::size_t(uniform_int(rng, 0, net.vars[std::size_t(v)].card - 1))] = 1.0;
        ev.items[v] = vec;
    }
    return ev;
}

} // namespace jtarch
