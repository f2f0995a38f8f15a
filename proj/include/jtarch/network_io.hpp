#ifndef JTARCH_NETWORK_IO_HPP
#define JTARCH_NETWORK_IO_HPP

#include <stdexcept>
#include <string>

#include "jtarch/network.hpp"

namespace jtarch {

class ParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct NetworkFile {
    BayesNet net;
    Evidence evidence;
};

// JSON interchange:
//   {"variables": [{"name": "A", "states": ["yes", "no"]}, ...],
//    "arcs": [["A", "T"], ...],
//    "cpts": {"T": [...]},       parents in arc order, child fastest
//    "evidence": {"A": [1, 0]}}  optional
NetworkFile parse_network(const std::string& text);
NetworkFile load_network(const std::string& path);
std::string write_network(const BayesNet& net, const Evidence& ev);

} // namespace jtarch

#endif
