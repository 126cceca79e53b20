#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "cattree/corpus.hpp"

namespace cattree {

struct SynthParams {
  std::size_t docs = 8;
  std::size_t doc_len = 64;  // lengths drawn uniformly from [1..doc_len]
  std::uint32_t sigma = 4;   // letters 'a', 'b', ...; at most 26
  Level height = 3;
  double unary_density = 0.0;  // chance a node gets a private parent
  std::uint64_t seed = 1;
};

struct SynthInstance {
  Corpus corpus;
  CategoryTree tree;
};

// Throws std::invalid_argument on unusable parameters (height 1 needs a
// single document).
SynthInstance generate(const SynthParams& params);
CategoryTree generate_tree(std::size_t docs, Level height, double unary_density, std::mt19937_64& rng);

// Inserts a unary node in the middle of every edge: height h becomes 2h-1,
// branching structure unchanged.
CategoryTree subdivide(const CategoryTree& tree);

// Fuzzing pattern: usually a substring of some document, otherwise random
// letters of the alphabet.
std::string sample_pattern(const Corpus& corpus, std::mt19937_64& rng, std::size_t max_len = 8);

}  // namespace cattree
