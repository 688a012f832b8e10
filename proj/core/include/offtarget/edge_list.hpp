#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "offtarget/graph.hpp"

namespace offtarget {

/// Malformed edge-list input; the message carries the line number.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedDag {
  Dag dag;
  std::vector<std::string> names;  // names[v] is the label of vertex v
};

/// Plain-text edge lists:
///
///   # comment
///   n 5
///   0 1        arc 0 -> 1
///   2 -- 3     undirected; oriented from the lower to the higher index
///
/// The `n <count>` header is optional when vertices are named. If every
/// vertex token is a non-negative integer the tokens are indices (the header
/// is then required); otherwise all tokens are names, numbered in order of
/// first appearance. With `moralize` set, v-structures are closed so the
/// result is moral (see close_v_structures).
NamedDag read_edge_list(std::istream& in, bool moralize = false);
NamedDag read_edge_list_file(const std::string& path, bool moralize = false);

/// Writes the header and one `u v` line per arc, using indices.
void write_edge_list(std::ostream& out, const Dag& g);

}  // namespace offtarget
