#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lpk/error.hpp"
#include "lpk/generate.hpp"
#include "lpk/reductions.hpp"

namespace lpk {

/// Answers a query on an instance. Formula instances ignore q.semantics.
using Oracle = std::function<bool(const Instance&, const Query&)>;

/// decide() for programs, ws_t() for formulas, shortcuts off.
bool library_oracle(const Instance& x, const Query& q);

enum class Mutation { None, OffByOneK, DropGadget };

struct RegistryEntry {
  std::string name;
  std::string input_class;
  std::size_t max_atoms = 8;
  std::size_t min_rules = 0;
  std::size_t max_rules = 8;
  std::size_t max_width = 3;
  int k_min = 0;
  int k_max = 2;
  std::function<ReductionRecord(const Instance&, int)> build;
  /// Added to every target k by Mutation::OffByOneK (+1 if that goes
  /// negative).
  int k_shift = 1;
  /// Mutation::DropGadget removes the first rule or top-level conjunct that
  /// mentions an atom starting with this; empty means the first one.
  std::string drop_prefix;
  /// Overrides drop_prefix when set.
  std::function<void(Instance&)> drop;
};

const std::vector<RegistryEntry>& registry();
/// PreconditionError for unknown names.
const RegistryEntry& registry_entry(const std::string& name);

struct VerifyConfig {
  /// 0 keeps the entry default.
  std::size_t max_atoms = 0;
  std::size_t max_rules = 0;
  /// Replace the entry's k range when k_max >= 0.
  int k_min = 0;
  int k_max = -1;
  Mutation mutation = Mutation::None;
  /// 0 means hardware concurrency.
  unsigned workers = 0;
  Oracle oracle;  // empty means library_oracle
};

struct Counterexample {
  std::size_t trial = 0;
  int k = 0;
  std::string input;   // serialized
  std::string output;  // serialized, after any mutation
  QueryPair queries;
  bool source_answer = false;
  bool target_answer = false;
};

struct VerificationReport {
  std::string name;
  std::size_t trials = 0;
  std::size_t agreements = 0;
  std::vector<Counterexample> disagreements;  // by trial index
  double wall_seconds = 0;

  std::size_t disagreement_count() const { return disagreements.size(); }
};

/// Raised when an oracle runs out of capacity. The message names the trial
/// and includes the serialized instance.
class TrialCapacityError : public CapacityError {
 public:
  TrialCapacityError(const CapacityError& e, std::size_t trial, std::string instance)
      : CapacityError(e.atoms(), e.cap()), trial_(trial), instance_(std::move(instance)),
        message_(std::string(e.what()) + " (trial " + std::to_string(trial) + ")\n" + instance_) {}
  const char* what() const noexcept override { return message_.c_str(); }
  std::size_t trial() const noexcept { return trial_; }
  const std::string& instance() const noexcept { return instance_; }

 private:
  std::size_t trial_;
  std::string instance_;
  std::string message_;
};

/// Each trial draws its instance and k from mix_seed(seed, trial), so the
/// report does not depend on the worker count.
VerificationReport verify_reduction(const std::string& name, std::size_t trials, const VerifyConfig& cfg,
                                    std::uint64_t seed);

/// Applies a mutation to a record the way verify_reduction does.
void mutate(ReductionRecord& r, const RegistryEntry& e, Mutation m);

std::string report_json(const VerificationReport& r);

}  // namespace lpk
