#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "normsys/formula.hpp"
#include "normsys/mas.hpp"
#include "normsys/norm.hpp"
#include "normsys/recognition.hpp"

namespace normsys {

/// Parameters of the producer-consumer system. Producers p_1..p_n each make
/// one kind of goods in batches of at most capacity[j]; consumers c_1..c_m
/// repeatedly collect the multiset requirements[i]. The optional newcomer
/// is consumer c_{m+1}.
struct EcoConfig {
  std::size_t producers = 1;
  std::size_t consumers = 1;
  std::vector<std::string> goods;                      // per producer
  std::vector<std::size_t> capacity;                   // per producer
  std::vector<std::vector<std::string>> requirements;  // per consumer
  bool include_new_agent = false;
  /// The newcomer's requirement; must name a single kind of goods.
  std::vector<std::string> new_agent_requirement;
  /// The newcomer may withdraw a pending request in the second round.
  bool cancel_rule = false;

  /// Consumers including the newcomer.
  std::size_t roster() const noexcept { return consumers + (include_new_agent ? 1 : 0); }
  /// The requirement of roster member i (0-based).
  const std::vector<std::string>& requirement(std::size_t i) const;

  /// n producers with goods g_1..g_n and capacity 1; every consumer
  /// requires `good` once.
  static EcoConfig uniform(std::size_t producers, std::size_t consumers, std::string good = "g_1");
};

/// Throws Error naming the first problem.
void validate_config(const EcoConfig& cfg);

/// key = value lines; '#' starts a comment. Keys: producers, consumers,
/// goods, capacity, require.<i>, new_agent, new_agent_require, cancel_rule.
EcoConfig parse_eco_config(std::string_view text);
std::string serialize_eco_config(const EcoConfig& cfg);

/// Local state of one consumer. Goods and producers are 0-based indices;
/// -1 stands for bot.
struct ConsumerLocal {
  std::vector<std::uint32_t> remaining;  // sorted multiset of good kinds
  int demand = -1;
  int target = -1;

  friend bool operator==(const ConsumerLocal&, const ConsumerLocal&) = default;
};

struct EcoState {
  int round = 1;
  std::vector<ConsumerLocal> consumers;  // roster order

  friend bool operator==(const EcoState&, const EcoState&) = default;
};

/// The generated system with the decoded meaning of each state.
struct Ecosystem {
  EcoConfig config;
  /// Distinct kinds of goods in order of first production.
  std::vector<std::string> kinds;
  std::vector<std::uint32_t> kind_of_producer;
  MasPtr mas;
  std::vector<EcoState> states;  // by StateId
  /// batches[j][a]: roster members served by action a of producer j.
  std::vector<std::vector<std::vector<std::uint32_t>>> batches;

  /// Roster members (0-based) with a pending request at producer j.
  std::vector<std::uint32_t> requesters(StateId s, std::size_t j) const;
  AgentId producer_agent(std::size_t j) const { return static_cast<AgentId>(j); }
  AgentId consumer_agent(std::size_t i) const { return static_cast<AgentId>(config.producers + i); }
  /// Action of producer j serving exactly `served` (0-based roster ids).
  ActionId service_action(std::size_t j, const std::vector<std::uint32_t>& served) const;
};

/// Reachable part of the system. Agents are p_1..p_n then c_1..c_m(+1).
/// Throws Error on an invalid configuration.
Ecosystem gen_ecosystem(const EcoConfig& cfg);

/// O_{c_v}: the round and the roster members requesting the same producer
/// as the newcomer (itself included), or the round alone when it has no
/// pending request. Requires include_new_agent.
std::vector<std::string> newcomer_observations(const Ecosystem& eco);

/// Round-robin norm: producer j must serve its designated consumer y_j
/// whenever y_j is requesting it; designations advance by one after every
/// second round.
NormativeSystem norm_round_robin(const Ecosystem& eco);
/// As norm_round_robin, with designations advancing by two.
NormativeSystem norm_skip2(const Ecosystem& eco);
/// First-come first-served: every producer keeps its requesters in
/// arrival order (ties by index) and must serve the head.
NormativeSystem norm_fifo(const Ecosystem& eco);
/// The three static norms of the one-producer two-consumer case: never
/// serve c_1 first, never serve c_2 first, no restriction.
std::vector<NormativeSystem> static_norms_simple(const Ecosystem& eco);

/// Conjunctions over every consumer and producer of
/// AG (t_i=p_j -> EF d_i=bot) and AG (t_i=p_j -> AF d_i=bot).
std::pair<Formula, Formula> objectives(const EcoConfig& cfg);

/// Family over the generated system observed by the newcomer.
NormFamily ecosystem_family(const Ecosystem& eco, std::vector<NormativeSystem> members,
                            std::size_t active = 0);

}  // namespace normsys
