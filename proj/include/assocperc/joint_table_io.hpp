#pragma once

// Text format for joint edge laws:
//
//   # comment
//   edges: a b c
//   dist: a b 0
//   dist: a c 1
//   dist: b c 0
//   010 0.25
//   ...
//
// Every unordered pair of distinct edges needs a dist line (`inf` for
// disconnected edges). Character k of a bitstring is the status of the k-th
// listed edge. Missing bitstrings have probability 0; the probabilities must
// sum to 1 within 1e-9 and are then rescaled to sum to 1.

#include <iosfwd>
#include <string>
#include <vector>

#include "assocperc/oracle.hpp"

namespace assocperc {

struct EdgeLaw {
  std::vector<std::string> names;
  SmallGraph graph;
  JointTable table;
};

inline constexpr double kTableMassTolerance = 1e-9;

// Throws InvalidParameter on malformed input.
EdgeLaw parse_edge_law(std::istream& in);
// Throws IoError if the file cannot be read.
EdgeLaw read_edge_law(const std::string& path);

void write_edge_law(std::ostream& out, const EdgeLaw& law);

}  // namespace assocperc
