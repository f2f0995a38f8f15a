#ifndef JTARCH_NETGEN_HPP
#define JTARCH_NETGEN_HPP

#include <cstdint>
#include <random>

#include "jtarch/network.hpp"

namespace jtarch {

struct GenParams {
    int n = 8;
    int c1 = 5;  // max insertion-index distance to a neighbor
    int c2 = 2;  // a variable is added with 1..c2-1 connections
    int m = 3;   // max cardinality
    int p = 3;   // max evidence items
    std::uint64_t seed = 1;
};

void check_params(const GenParams& g);

std::uint64_t splitmix64(std::uint64_t x);
// Seed for trial t of a batch seeded with `seed`.
std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t t);

using Rng = std::mt19937_64;

// Uniform integer on [lo, hi]; portable across standard libraries.
int uniform_int(Rng& rng, int lo, int hi);
// Uniform on the open interval (0, 1).
double uniform_open(Rng& rng);

BayesNet random_net(const GenParams& g);
Evidence random_evidence(const BayesNet& net, const GenParams& g, Rng& rng);

} // namespace jtarch

#endif
