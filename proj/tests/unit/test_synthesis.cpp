#include <doctest.h>

#include "normsys/ctl.hpp"
#include "normsys/dsl.hpp"
#include "normsys/ecosystem.hpp"
#include "normsys/kripke.hpp"
#include "normsys/synthesis.hpp"
#include "normsys/validation.hpp"
#include "testgen.hpp"

using namespace normsys;

namespace {

/// u --go--> v, stay self-loops; p labels v.
MasPtr toy() {
  return dsl::parse_model(R"(
agents x
actions x go stay
state u
state v
avail x u go stay
avail x v stay
initial u
trans u v go
trans u u stay
trans v v stay
label v p
)");
}

using Kind = SynthesisOutcome::Kind;

}  // namespace

TEST_SUITE("synthesis") {
  TEST_CASE("choice options are distinct destination sets") {
    const MasPtr mas = toy();
    const auto options = choice_options(*mas, 0);
    REQUIRE(options.size() == 3);
    CHECK(options[0].forbidden.empty());
    CHECK(options[0].targets == std::vector<StateId>{0, 1});
    CHECK(choice_options(*mas, 1).size() == 1);
  }

  TEST_CASE("toy system") {
    const MasPtr mas = toy();
    const Formula f = dsl::parse_formula("AG !p");
    const SynthesisOutcome s = synthesize_static(mas, f);
    REQUIRE(s.kind == Kind::Found);
    CHECK(s.norm->is_forbidden(0, 0, *mas->joint_index(0, JointAction{{0}})));
    CHECK(verify(mas, *s.norm, f));
    const SynthesisOutcome d = synthesize_dynamic(mas, f, 1);
    REQUIRE(d.kind == Kind::Found);
    CHECK(verify(mas, *d.norm, f));
  }

  TEST_CASE("zero budget") {
    SynthesisBudget none;
    none.max_candidates = 0;
    const MasPtr mas = toy();
    CHECK(synthesize_static(mas, dsl::parse_formula("AG !p"), none).kind == Kind::BudgetExceeded);
    CHECK(synthesize_dynamic(mas, dsl::parse_formula("AG !p"), 2, none).kind == Kind::BudgetExceeded);
    CHECK_THROWS_AS(synthesize_dynamic(mas, dsl::parse_formula("true"), 0), Error);
  }

  TEST_CASE("verify on the identity norm") {
    const MasPtr mas = toy();
    CHECK(verify(mas, NormativeSystem::identity(*mas), Formula::truth()));
    CHECK_FALSE(verify(mas, NormativeSystem::identity(*mas), dsl::parse_formula("AG !p")));
  }

  TEST_CASE("single producer needs memory") {
    const Ecosystem eco = gen_ecosystem(EcoConfig::uniform(1, 2));
    const auto [phi1, phi2] = objectives(eco.config);
    const Formula both = Formula::conjunction(phi1, phi2);
    CHECK(synthesize_static(eco.mas, both).kind == Kind::NoneExists);
    CHECK(synthesize_dynamic(eco.mas, both, 1).kind == Kind::NoneExists);
    const SynthesisOutcome d = synthesize_dynamic(eco.mas, both, 2);
    REQUIRE(d.kind == Kind::Found);
    CHECK(d.bound == 2);
    CHECK(validate_norm(*eco.mas, *d.norm).ok());
    CHECK(verify(eco.mas, *d.norm, both));
  }

  TEST_CASE("outcomes never degrade as the bound grows") {
    testing::Rng rng(29);
    for (int i = 0; i < 40; ++i) {
      const MasPtr mas = testing::random_mas(rng, {2, 3, 1, 2, 2, {"p", "q"}});
      const Formula f = testing::random_formula(rng, 3, {"p", "q"});
      bool found = false;
      for (std::size_t k = 1; k <= 3; ++k) {
        const SynthesisOutcome out = synthesize_dynamic(mas, f, k);
        if (found) CHECK(out.found());
        found = out.found();
        if (out.found()) CHECK(verify(mas, *out.norm, f));
      }
    }
  }

  TEST_CASE("static search and the bound-one dynamic search agree") {
    testing::Rng rng(31);
    for (int i = 0; i < 60; ++i) {
      const MasPtr mas = testing::random_mas(rng, {2, 5, 2, 2, 2, {"p", "q"}});
      const Formula f = testing::random_formula(rng, 3, {"p", "q"});
      CHECK(synthesize_static(mas, f).found() == synthesize_dynamic(mas, f, 1).found());
    }
  }

  TEST_CASE("wall clock") {
    const Ecosystem eco = gen_ecosystem(EcoConfig::uniform(1, 2));
    SynthesisBudget budget;
    budget.wall_clock = std::chrono::milliseconds(0);
    const auto out = synthesize_dynamic(eco.mas, Formula::falsity(), 4, budget);
    CHECK(out.kind == Kind::BudgetExceeded);
  }
}
