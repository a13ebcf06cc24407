#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>

#include "lpk/reductions.hpp"

namespace lpk {

/// Reproducible across platforms: distributions from <random> are not, so
/// draws go through below().
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform-ish in [0, n); n must be positive.
  std::uint64_t below(std::uint64_t n) { return engine_() % n; }
  /// Uniform-ish in [lo, hi].
  std::size_t between(std::size_t lo, std::size_t hi) { return lo + static_cast<std::size_t>(below(hi - lo + 1)); }
  bool coin() { return below(2) == 1; }

 private:
  std::mt19937_64 engine_;
};

/// Mixes a base seed with a stream index (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

/// Classes: HORN NEG N1 N2 ALL (programs); 2N 2N3 2NM 2NA 3N 3NM 3NA
/// (formulas).
struct GeneratorConfig {
  std::string cls = "ALL";
  std::size_t atoms = 4;
  /// Rules or top-level conjuncts. N1 always gets one rule per atom and only
  /// rejects rules > atoms.
  std::size_t rules = 6;
  /// Longest body, clause or conjunct; 2N3 caps it at 3.
  std::size_t max_width = 3;
  std::uint64_t seed = 0;
};

bool is_program_class(const std::string& cls);
bool is_known_class(const std::string& cls);

/// Atom names x1..xN. Rules and clauses draw their atoms from these, so
/// At of the result is a subset. PreconditionError on an unknown class or an
/// infeasible config.
Instance generate(const GeneratorConfig& cfg);

/// Does `x` belong to class `cls`?
bool satisfies_class(const Instance& x, const std::string& cls);

}  // namespace lpk
