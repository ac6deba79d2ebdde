#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "normsys/graph.hpp"
#include "normsys/kripke.hpp"
#include "normsys/mas.hpp"
#include "normsys/nfa.hpp"
#include "normsys/norm.hpp"
#include "normsys/validation.hpp"

namespace normsys {

/// Candidate norms Psi over one system, the index of the active one, and
/// the observation function of an outside agent joining the system.
/// A member's index is its position in `members`.
struct NormFamily {
  MasPtr mas;
  std::vector<std::shared_ptr<const NormativeSystem>> members;
  std::size_t active = 0;
  /// O_x(s) for every state s of `mas`.
  std::vector<std::string> new_agent_obs;

  static NormFamily make(MasPtr mas, std::vector<NormativeSystem> members, std::size_t active,
                         std::vector<std::string> new_agent_obs);
  const NormativeSystem& member(std::size_t i) const { return *members.at(i); }
  std::size_t size() const noexcept { return members.size(); }
};

/// Observation function of an agent of the system, usable as new_agent_obs.
std::vector<std::string> observations_of(const Mas& mas, AgentId agent);

/// Family shape plus validate_mas / validate_norm on every member.
ValidationReport validate_family(const NormFamily& family);

/// A state of K(N) for the family member N with the given index.
struct FamilyState {
  std::uint32_t member = 0;
  ProductState state;

  friend auto operator<=>(const FamilyState&, const FamilyState&) = default;
  friend bool operator==(const FamilyState&, const FamilyState&) = default;
};

/// Pointwise O_x of the projected states; empty path, empty sequence.
std::vector<std::string> extend_observation(const NormFamily& family,
                                            std::span<const ProductState> path);

/// Pair of an active-structure state and a rival-structure state.
struct SyncProductState {
  ProductState active;
  FamilyState rival;
  /// The two states carry different indices.
  bool safe = true;
};

/// Reachable part of the synchronized product M'. Node i of `graph` is
/// states[i]; the single proposition "safe" labels index-disagreeing pairs.
struct SyncProduct {
  std::vector<SyncProductState> states;
  StateGraph graph;
};

/// Throws Error for a family without rivals.
SyncProduct build_sync_product(const NormFamily& family);

/// Two equally long paths closing into a loop: after the last position
/// both continue at `loop_start`. The paths are observation-equivalent and
/// belong to the active member and member `rival` respectively.
struct LassoWitness {
  std::vector<ProductState> active_path;
  std::uint32_t rival = 0;
  std::vector<ProductState> rival_path;
  std::size_t loop_start = 0;
};

struct RecognitionVerdict {
  enum class Problem { NC1, NC2 };

  Problem problem = Problem::NC1;
  bool successful = false;
  /// NC1 and unsuccessful.
  std::optional<LassoWitness> lasso;
  /// NC2 and successful: a path of the active structure from an initial state.
  std::optional<std::vector<ProductState>> path;
  /// Product states explored (M' for NC1, M'' for NC2).
  std::size_t explored = 0;

  /// "NC1-Successful", "NC2-Unsuccessful", ...
  std::string label() const;
};

/// Infinite observation-equivalent pair of runs with different indices,
/// searched as a reachable cycle of M'. A family without rivals is
/// successful.
RecognitionVerdict decide_nc1(const NormFamily& family);

/// State of the subset structure M''.
struct SubsetState {
  ProductState active;
  std::vector<FamilyState> members;  // sorted
  bool goal = false;
};

struct SubsetExploration {
  std::vector<SubsetState> states;
  std::vector<std::vector<NodeId>> successors;
  std::vector<NodeId> parent;  // breadth-first tree; initial states are their own parent
  std::optional<NodeId> goal;
  /// Stopped because max_states was reached.
  bool truncated = false;
};

/// Breadth-first exploration of M''. Stops at the first goal state when
/// `stop_at_goal`, and after discovering `max_states` states otherwise.
SubsetExploration explore_subset_structure(const NormFamily& family, bool stop_at_goal,
                                           std::size_t max_states = SIZE_MAX);

/// Some finite run of the active structure whose observation class is
/// index-pure; the witness spells that run.
RecognitionVerdict decide_nc2(const NormFamily& family);

/// Replays a lasso witness against the definitions: initial states,
/// edges, the closing edges, equal observations, different indices.
bool validate_nc1_witness(const NormFamily& family, const LassoWitness& witness);

/// Checks the path is a run of the active structure from an initial state
/// and that no rival structure has a run from an initial state with the
/// same observations.
bool validate_nc2_witness(const NormFamily& family, std::span<const ProductState> path);

/// Depth-first enumeration of synchronized path pairs of at most `depth`
/// pairs; returns the first pair that revisits a pair state. Exponential.
std::optional<LassoWitness> nc1_bruteforce(const NormFamily& family, std::size_t depth);

/// Runs of the active structure in order of length, at most `depth`
/// states; returns the first whose observations no rival run reproduces.
/// Exponential.
std::optional<std::vector<ProductState>> nc2_bruteforce(const NormFamily& family, std::size_t depth);

/// The single-agent system M(A) and the two static norms that disallow
/// one of the two entry actions at s0, with the active member (index 0)
/// entering the free-word side and member 1 the automaton side. Throws
/// Error on an empty alphabet.
NormFamily build_nfa_recognition_instance(const Nfa& nfa);

}  // namespace normsys
