#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <vector>

#include "normsys/formula.hpp"
#include "normsys/mas.hpp"
#include "normsys/norm.hpp"

namespace normsys {

struct SynthesisBudget {
  /// Completed candidates that may be verified before giving up.
  std::uint64_t max_candidates = 10'000'000;
  std::optional<std::chrono::milliseconds> wall_clock;
};

struct SynthesisOutcome {
  enum class Kind { Found, NoneExists, BudgetExceeded };

  Kind kind = Kind::NoneExists;
  /// Set iff kind == Found.
  std::optional<NormativeSystem> norm;
  /// Largest normative-state bound fully searched (NoneExists) or reached.
  std::size_t bound = 0;
  /// Candidates verified.
  std::uint64_t candidates = 0;

  bool found() const noexcept { return kind == Kind::Found; }
};

const char* to_string(SynthesisOutcome::Kind kind);

/// K(N) |= f. Throws ValidationError when the system or norm is invalid.
bool verify(const MasPtr& mas, const NormativeSystem& norm, const Formula& f);

/// A distinct way of restricting one state: the surviving joint actions
/// reach exactly `targets`. Restrictions with equal targets yield the same
/// product and are represented once, by the largest surviving set.
struct ChoiceOption {
  std::vector<StateId> targets;          // sorted
  std::vector<std::uint32_t> forbidden;  // sorted joint indices
};

/// All distinct restrictions at `state`, least restrictive first. The first
/// entry always forbids nothing.
std::vector<ChoiceOption> choice_options(const Mas& mas, StateId state);

/// States reachable in the unrestricted system.
std::vector<StateId> reachable_states(const Mas& mas);

/// Exhaustive search over static norms: one restriction per reachable
/// state that has at least two available joint actions, everything else
/// unrestricted. Candidates are tried in lexicographic order of the
/// per-state option indices.
SynthesisOutcome synthesize_static(const MasPtr& mas, const Formula& f,
                                   const SynthesisBudget& budget = {});

/// Iterative deepening over the number of normative states k = 1..k_max.
/// Each candidate is grown depth-first from the initial pairs: every
/// reached (state, norm state) pair picks a restriction, and every reached
/// (norm state, destination) pair picks an update target among the norm
/// states used so far or the next fresh one, so candidates differing only
/// by a renaming of norm states are generated once. Unreached pairs forbid
/// nothing and self-update.
SynthesisOutcome synthesize_dynamic(const MasPtr& mas, const Formula& f, std::size_t k_max,
                                    const SynthesisBudget& budget = {});

}  // namespace normsys
