#include <doctest.h>

#include <set>

#include "normsys/dsl.hpp"
#include "normsys/ecosystem.hpp"
#include "normsys/kripke.hpp"
#include "normsys/validation.hpp"

using namespace normsys;

namespace {

const char* const kS0 = "1/none:bot:bot/none:bot:bot/none:bot:bot";
const char* const kS2p = "2/g_1:g_1:p_1/g_2:g_2:p_2/g_1+g_2:g_1:p_1";
const char* const kS1p = "1/none:bot:bot/none:bot:bot/g_1+g_2:g_1:p_1";

EcoConfig instantiation_config() {
  EcoConfig cfg = EcoConfig::uniform(2, 3);
  cfg.goods = {"g_1", "g_2"};
  cfg.requirements = {{"g_1"}, {"g_2"}, {"g_1", "g_2"}};
  return cfg;
}

JointAction joint(const Mas& mas, std::initializer_list<const char*> names) {
  JointAction a;
  AgentId i = 0;
  for (const char* n : names) a.local.push_back(*mas.find_action(i++, n));
  return a;
}

bool has_transition(const Mas& mas, StateId from, const JointAction& a, StateId to) {
  for (const Transition& t : mas.transitions_from(from)) {
    if (t.action == a && t.target == to) return true;
  }
  return false;
}

/// Round-1 states entered from round 2.
std::set<StateId> round_one_targets(const Ecosystem& eco) {
  std::set<StateId> out;
  for (const Transition& t : eco.mas->transitions()) {
    if (eco.states[t.source].round == 2) out.insert(t.target);
  }
  return out;
}

}  // namespace

TEST_SUITE("ecosystem") {
  TEST_CASE("instantiation transitions") {
    const Ecosystem eco = gen_ecosystem(instantiation_config());
    const Mas& mas = *eco.mas;
    CHECK(mas.state_count() == 13);
    CHECK(validate_mas(mas).ok());
    REQUIRE(mas.initial().size() == 1);
    CHECK(mas.state_name(mas.initial()[0]) == kS0);
    const StateId s0 = *mas.find_state(kS0);
    const StateId s2p = *mas.find_state(kS2p);
    const StateId s1p = *mas.find_state(kS1p);
    CHECK(has_transition(mas, s0, joint(mas, {"bot", "bot", "p_1", "p_2", "p_1"}), s2p));
    CHECK(has_transition(mas, s2p, joint(mas, {"{c_1}", "{c_2}", "bot", "bot", "bot"}), s1p));
    // Round 2: producers pick maximal batches, consumers idle.
    const auto avail = available_joint_actions(mas, s2p);
    CHECK(avail.size() == 2);
    for (const auto& a : avail) {
      for (std::size_t i = 0; i < 3; ++i) CHECK(mas.action_name(eco.consumer_agent(i), a.local[2 + i]) == "bot");
    }
  }

  TEST_CASE("state invariants") {
    const Ecosystem eco = gen_ecosystem(instantiation_config());
    for (const EcoState& s : eco.states) {
      for (const ConsumerLocal& c : s.consumers) {
        CHECK((c.demand < 0) == (c.target < 0));
        if (c.demand >= 0) {
          CHECK(std::count(c.remaining.begin(), c.remaining.end(), static_cast<std::uint32_t>(c.demand)) > 0);
          CHECK(eco.kind_of_producer[c.target] == static_cast<std::uint32_t>(c.demand));
        }
      }
    }
  }

  TEST_CASE("one producer, one consumer is deterministic") {
    const Ecosystem eco = gen_ecosystem(EcoConfig::uniform(1, 1));
    const ReachableProduct r = reachable(apply_norm(eco.mas, NormativeSystem::identity(*eco.mas)));
    for (const auto& succ : r.graph.successors) CHECK(succ.size() == 1);
  }

  TEST_CASE("round-robin designations") {
    const Ecosystem eco = gen_ecosystem(instantiation_config());
    const NormativeSystem n1 = norm_round_robin(eco);
    CHECK(n1.norm_state_name(n1.initial()) == "(1,2)");
    const StateId s1p = *eco.mas->find_state(kS1p);
    const NormStateId q12 = *n1.find_norm_state("(1,2)");
    const NormStateId q23 = *n1.find_norm_state("(2,3)");
    CHECK(n1.update(q12, s1p) == q23);
    CHECK(n1.norm_state_name(n1.update(q23, s1p)) == "(3,1)");
    CHECK(n1.update(q12, *eco.mas->find_state(kS2p)) == q12);

    // At s2' under (1,2), p_1 must serve c_1; p_2's choice is free.
    const StateId s2p = *eco.mas->find_state(kS2p);
    const Mas& mas = *eco.mas;
    for (std::uint32_t j = 0; j < mas.joint_count(s2p); ++j) {
      const JointAction a = mas.joint_at(s2p, j);
      const bool serves_c1 = mas.action_name(0, a.local[0]) == "{c_1}";
      CHECK(n1.is_forbidden(s2p, q12, j) == !serves_c1);
    }
  }

  TEST_CASE("round-robin guard") {
    // Under (3,x) at s2' the designated consumer c_3 waits at p_1, but under
    // (2,x) c_2 does not, so nothing is forbidden for p_1.
    const Ecosystem eco = gen_ecosystem(instantiation_config());
    const NormativeSystem n1 = norm_round_robin(eco);
    const StateId s2p = *eco.mas->find_state(kS2p);
    const NormStateId q = *n1.find_norm_state("(2,2)");
    CHECK(n1.forbidden(s2p, q).empty());
  }

  TEST_CASE("skip-by-two designations") {
    const Ecosystem eco = gen_ecosystem(EcoConfig::uniform(1, 3));
    const NormativeSystem n6 = norm_skip2(eco);
    const NormativeSystem n1 = norm_round_robin(eco);
    const StateId s = *round_one_targets(eco).begin();
    CHECK(n6.norm_state_name(n6.update(*n6.find_norm_state("(1)"), s)) == "(3)");
    CHECK(n6.norm_state_name(n6.update(*n6.find_norm_state("(3)"), s)) == "(2)");
    CHECK(n6.norm_state_name(n6.update(*n6.find_norm_state("(2)"), s)) == "(1)");
    for (StateId t = 0; t < eco.mas->state_count(); ++t) {
      for (NormStateId q = 0; q < n1.norm_state_count(); ++q) {
        CHECK(std::equal(n1.forbidden(t, q).begin(), n1.forbidden(t, q).end(), n6.forbidden(t, q).begin(),
                         n6.forbidden(t, q).end()));
      }
    }
    const Ecosystem single = gen_ecosystem(EcoConfig::uniform(1, 1));
    const NormativeSystem constant = norm_skip2(single);
    CHECK(constant.norm_state_count() == 1);
  }

  TEST_CASE("queues") {
    const Ecosystem eco = gen_ecosystem(EcoConfig::uniform(1, 3));
    const NormativeSystem n2 = norm_fifo(eco);
    CHECK(n2.norm_state_name(n2.initial()) == "([])");
    const KripkeStructure k = apply_norm(eco.mas, n2);
    const ProductState start = k.initial_states().at(0);
    const auto after = k.successors(start);
    REQUIRE(after.size() == 1);
    CHECK(n2.norm_state_name(after[0].norm) == "([1,2,3])");
    const auto served = k.successors(after[0]);
    REQUIRE(served.size() == 1);
    CHECK(eco.states[served[0].state].consumers[0].target < 0);
    CHECK(n2.norm_state_name(served[0].norm) == "([2,3])");
  }

  TEST_CASE("cancelling sends the newcomer to the back of the queue") {
    EcoConfig cfg = EcoConfig::uniform(1, 2);
    cfg.include_new_agent = true;
    cfg.cancel_rule = true;
    const Ecosystem eco = gen_ecosystem(cfg);
    const NormativeSystem n2 = norm_fifo(eco);
    const KripkeStructure k = apply_norm(eco.mas, n2);
    // Breadth-first search for a queue with the newcomer (3) behind 1 after
    // having been in front of it.
    bool behind = false;
    const ReachableProduct r = reachable(k);
    for (const ProductState& p : r.states) {
      const std::string& q = n2.norm_state_name(p.norm);
      behind = behind || q == "([1,3])" || q == "([2,3])";
    }
    CHECK(behind);
  }

  TEST_CASE("static norms of the single-producer case") {
    const Ecosystem eco = gen_ecosystem(EcoConfig::uniform(1, 2));
    const auto statics = static_norms_simple(eco);
    REQUIRE(statics.size() == 3);
    for (const auto& n : statics) {
      CHECK(n.is_static());
      CHECK(validate_norm(*eco.mas, n).ok());
    }
    for (StateId s = 0; s < eco.mas->state_count(); ++s) CHECK(statics[2].forbidden(s, 0).empty());
    CHECK_THROWS_AS(static_norms_simple(gen_ecosystem(EcoConfig::uniform(1, 3))), Error);
  }

  TEST_CASE("objectives") {
    const auto [a1, a2] = objectives(EcoConfig::uniform(1, 1));
    CHECK(a1 == dsl::parse_formula("AG (t_1=p_1 -> EF d_1=bot)"));
    CHECK(a2 == dsl::parse_formula("AG (t_1=p_1 -> AF d_1=bot)"));
    const auto [b1, b2] = objectives(instantiation_config());
    auto conjuncts = [](const Formula& f) {
      std::size_t n = 1;
      for (const Formula* g = &f; g->kind() == FormulaKind::And; g = &g->left()) ++n;
      return n;
    };
    CHECK(conjuncts(b1) == 6);
    CHECK(conjuncts(b2) == 6);
    std::string text = b1.to_string();
    for (auto pos = text.find("EF"); pos != std::string::npos; pos = text.find("EF", pos)) text.replace(pos, 2, "AF");
    CHECK(text == b2.to_string());
  }

  TEST_CASE("configuration files") {
    const EcoConfig cfg = parse_eco_config(R"(
# comment
producers = 2
consumers = 3
goods = g_1 g_2
capacity = 1 1
require.1 = g_1
require.2 = g_2
require.3 = g_1 g_2
)");
    CHECK(cfg.requirements == instantiation_config().requirements);
    CHECK(parse_eco_config(serialize_eco_config(cfg)).requirements == cfg.requirements);
    CHECK_THROWS_AS(parse_eco_config("producers = 1\nconsumers = 1\nrequire.1 = g_9\n"), Error);
    CHECK_THROWS_AS(parse_eco_config("producers\n"), ParseError);
    CHECK_THROWS_AS(parse_eco_config("colour = red\n"), ParseError);
    CHECK_THROWS_AS(parse_eco_config("producers = 1\nconsumers = 1\nrequire.1 = g_1\ncancel_rule = true\n"), Error);
  }

  TEST_CASE("the newcomer sees one trace under both norms") {
    EcoConfig cfg = EcoConfig::uniform(1, 3);
    cfg.include_new_agent = true;
    const Ecosystem eco = gen_ecosystem(cfg);
    const auto obs = newcomer_observations(eco);
    for (const NormativeSystem& n : {norm_round_robin(eco), norm_fifo(eco)}) {
      const KripkeStructure k = apply_norm(eco.mas, n);
      ProductState p = k.initial_states().at(0);
      std::vector<std::string> seen;
      for (int step = 0; step < 16; ++step) {
        seen.push_back(obs[p.state]);
        const auto succ = k.successors(p);
        std::set<std::string> next;
        for (const auto& t : succ) next.insert(obs[t.state]);
        CHECK(next.size() == 1);
        p = succ.front();
      }
      CHECK(seen[0] == "1|");
      CHECK(seen[1] == "2|c_1,c_2,c_3,c_4");
    }
  }
}
