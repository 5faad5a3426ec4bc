#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "rulingsim/graph.hpp"

namespace rulingsim {

enum class Family {
  uniform_random_tree,
  star_of_stars,
  high_girth_regularish,
  path,
  star,
  cycle,
  layered_tree,
  preferential_tree,
  explicit_file,
};

enum class BaseTree { uniform, preferential };

struct GraphFamilySpec {
  Family family = Family::uniform_random_tree;
  std::size_t n = 0;
  std::size_t d1 = 0;
  std::size_t d2 = 0;
  std::size_t target_degree = 0;
  std::vector<std::size_t> branching;  // layered_tree only
  BaseTree base = BaseTree::uniform;   // high_girth_regularish only
  std::uint64_t seed = 0;
  std::string file;                    // explicit_file only
};

/// Dispatches on spec.family. Throws InputError for invalid parameters and
/// GenerationError when high_girth_regularish runs out of retries.
Graph generate(const GraphFamilySpec& spec);

/// Uniformly random labeled tree via Prüfer decoding.
Graph uniform_random_tree(std::size_t n, std::uint64_t seed);

/// Random recursive tree where node i attaches to an earlier node chosen
/// with probability proportional to its degree. Max degree grows like sqrt(n).
Graph preferential_tree(std::size_t n, std::uint64_t seed);

Graph path_graph(std::size_t n);
Graph cycle_graph(std::size_t n);

/// Node 0 joined to nodes 1..n-1.
Graph star_graph(std::size_t n);

/// Complete rooted tree where every node at depth i has branching[i]
/// children. Nodes are numbered in BFS order, root 0.
Graph layered_tree(const std::vector<std::size_t>& branching);

/// Root with d1 children, each having d2 leaf children.
Graph star_of_stars(std::size_t d1, std::size_t d2);

/// Base tree plus random chords. A chord (u, v) is accepted only if both
/// endpoints have degree < target_degree and dist(u, v) >= 6 at insertion
/// time, so every cycle has length >= 7. Stops once the mean degree reaches
/// 0.9 * target_degree; 100 consecutive rejections raise GenerationError.
Graph high_girth_regularish(std::size_t n, std::size_t target_degree, std::uint64_t seed,
                            BaseTree base = BaseTree::uniform);

}  // namespace rulingsim
