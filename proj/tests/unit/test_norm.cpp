#include <doctest.h>

#include "normsys/ecosystem.hpp"
#include "normsys/norm.hpp"
#include "normsys/validation.hpp"

using namespace normsys;

namespace {

/// u --go--> v, stay self-loops; p labels v.
MasPtr toy() {
  MasBuilder b;
  const AgentId x = b.add_agent("x");
  const ActionId go = b.add_action(x, "go");
  const ActionId stay = b.add_action(x, "stay");
  const StateId u = b.add_state("u");
  const StateId v = b.add_state("v");
  b.set_available(x, u, {go, stay});
  b.set_available(x, v, {stay});
  b.add_initial(u);
  b.add_transition(u, JointAction{{go}}, v);
  b.add_transition(u, JointAction{{stay}}, u);
  b.add_transition(v, JointAction{{stay}}, v);
  b.add_label(v, "p");
  return b.build();
}

}  // namespace

TEST_SUITE("norm") {
  TEST_CASE("identity norm is valid and static") {
    const MasPtr mas = toy();
    const NormativeSystem id = NormativeSystem::identity(*mas);
    CHECK(id.is_static());
    CHECK(validate_norm(*mas, id).ok());
    CHECK(id.forbidden(0, 0).empty());
  }

  TEST_CASE("forbidding every available joint action violates the strict-subset rule") {
    const MasPtr mas = toy();
    NormativeSystem n = NormativeSystem::identity(*mas);
    n.set_forbidden(0, 0, {0, 1});
    CHECK(validate_norm(*mas, n).mentions("strict-subset"));
    n.set_forbidden(0, 0, {0});
    CHECK(validate_norm(*mas, n).ok());
    CHECK(n.is_forbidden(0, 0, 0));
    CHECK_FALSE(n.is_forbidden(0, 0, 1));
  }

  TEST_CASE("forbid indices must address available joint actions") {
    const MasPtr mas = toy();
    NormativeSystem n = NormativeSystem::identity(*mas);
    n.set_forbidden(1, 0, {4});
    CHECK(validate_norm(*mas, n).mentions("forbid-range"));
  }

  TEST_CASE("updates are total and self-loop by default") {
    NormativeSystem n({"a", "b"}, 3);
    for (StateId s = 0; s < 3; ++s) {
      CHECK(n.update(0, s) == 0);
      CHECK(n.update(1, s) == 1);
    }
    n.set_update(0, 2, 1);
    CHECK(n.update(0, 2) == 1);
    CHECK_FALSE(n.is_static());
  }

  TEST_CASE("make_static") {
    const MasPtr mas = toy();
    SUBCASE("empty map restricts nothing") {
      const NormativeSystem n = make_static(*mas, {});
      CHECK(n == NormativeSystem::identity(*mas));
    }
    SUBCASE("forbids the listed joint actions") {
      const NormativeSystem n = make_static(*mas, {{0, {JointAction{{0}}}}});
      CHECK(n.is_static());
      CHECK(n.is_forbidden(0, 0, 0));
    }
    SUBCASE("rejects forbidding everything") {
      CHECK_THROWS_AS(make_static(*mas, {{1, {JointAction{{1}}}}}), ValidationError);
    }
    SUBCASE("rejects unavailable actions") {
      CHECK_THROWS_AS(make_static(*mas, {{1, {JointAction{{0}}}}}), Error);
    }
  }

  TEST_CASE("ecosystem norms validate") {
    EcoConfig cfg = EcoConfig::uniform(2, 3);
    cfg.requirements = {{"g_1"}, {"g_2"}, {"g_1", "g_2"}};
    const Ecosystem eco = gen_ecosystem(cfg);
    CHECK(validate_norm(*eco.mas, norm_round_robin(eco)).ok());
    CHECK(validate_norm(*eco.mas, norm_fifo(eco)).ok());
    CHECK(validate_norm(*eco.mas, norm_skip2(eco)).ok());
  }
}
