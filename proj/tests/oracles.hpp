#ifndef STRATHIVE_TESTS_ORACLES_HPP
#define STRATHIVE_TESTS_ORACLES_HPP

// Slow reference implementations used to check the library. None of them
// call into the code they check.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "strathive/logic.hpp"
#include "strathive/prover.hpp"
#include "strathive/rational.hpp"
#include "strathive/tuner.hpp"

namespace oracle {

using strathive::Rational;

// Plain exponential recursion over the last symbols of both sequences.
Rational naive_lev(const std::vector<int>& s1, const std::vector<int>& s2, Rational ins, Rational del, Rational ch);

// Ordered labelled forest, as reached by edit operations.
struct Node {
  int label = 0;
  std::vector<Node> kids;
  friend bool operator==(const Node&, const Node&) = default;
};
using Forest = std::vector<Node>;

std::string encode(const Forest& f);
Forest forest_of(const strathive::Term& t);

// Cheapest edit script between trees found by Dijkstra over every forest of
// at most `max_nodes` nodes with labels 0..labels-1. Scripts use node
// insertion (adopting a run of consecutive siblings), deletion (children
// take the node's place) and relabelling.
class EditScriptSearch {
 public:
  EditScriptSearch(int labels, std::size_t max_nodes, Rational ins, Rational del, Rational ch);
  // Distances from `from` to every reachable forest, keyed by encode().
  std::map<std::string, Rational> distances_from(const Forest& from) const;

 private:
  int labels_;
  std::size_t max_nodes_;
  Rational ins_, del_, ch_;
};

// Every term over {a/0, f/1, g/2} with at most `max_nodes` symbols, built
// in `sig`. Symbol codes are a=0, f=1, g=2 when sig starts empty.
std::vector<strathive::Term> small_terms(strathive::Signature& sig, std::size_t max_nodes);

// Checks each inference of a proof by redoing the unification from scratch.
// Returns an empty string when the proof holds up, else what went wrong.
std::string audit_proof(const strathive::Problem& p, const std::vector<strathive::Clause>& proof);

// Random cost matrix: each cell solved with probability `density`.
strathive::PerfMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double density);

}  // namespace oracle

#endif
