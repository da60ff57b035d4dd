#pragma once

// Budgeted searches over subgroups of GL_2(Z/p^nZ) generated by a few
// elements, deduplicated up to conjugacy.

#include <chrono>
#include <cstdint>
#include <vector>

#include "cohomlab/matgrp.hpp"

namespace cohomlab {

/// Wall-clock budget; check() throws BudgetExceeded once it has run out.
/// A budget of 0 ms never expires.
class Deadline {
 public:
  explicit Deadline(std::int64_t budget_ms) : budget_ms_(budget_ms), start_(std::chrono::steady_clock::now()) {}
  std::int64_t elapsed_ms() const;
  void check(const char* stage) const;

 private:
  std::int64_t budget_ms_;
  std::chrono::steady_clock::time_point start_;
};

struct SubgroupSearchResult {
  std::vector<MatGroup> groups;  // one per conjugacy class, in discovery order
  std::size_t closures = 0;      // subgroup closures computed
  std::size_t over_cap = 0;      // candidates skipped because they exceeded the closure cap
};

/// Conjugacy-class representatives of all subgroups generated by at most
/// max_generators elements, built layer by layer as <H, g> with g running
/// over representatives of H-cosets modulo conjugation by N(H).
SubgroupSearchResult search_subgroups(const ModulusContext& ctx, int max_generators, std::size_t cap,
                                      const Deadline& deadline);

/// Random subgroups generated by 1..max_generators elements drawn from the
/// diagonal, unipotent, congruence-kernel and general families, deduplicated
/// up to conjugacy. Deterministic in the seed.
SubgroupSearchResult sample_subgroups(const ModulusContext& ctx, std::size_t count, int max_generators,
                                      std::uint64_t seed, std::size_t cap, const Deadline& deadline);

/// Some t with t a t^-1 = b, searching all of GL_2.
bool are_conjugate(const MatGroup& a, const MatGroup& b);

/// Tracks groups up to conjugacy: a cheap invariant signature, then an
/// explicit conjugator test among groups with the same signature.
class ConjugacyIndex {
 public:
  /// True if g was new (and is now recorded).
  bool insert(const MatGroup& g);

 private:
  struct Entry {
    std::vector<std::uint64_t> signature;
    MatGroup group;
  };
  std::vector<std::uint64_t> signature(const MatGroup& g) const;
  std::vector<Entry> entries_;
};

}  // namespace cohomlab
