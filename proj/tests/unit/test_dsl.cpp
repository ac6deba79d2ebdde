#include <doctest.h>

#include "normsys/dsl.hpp"
#include "normsys/ecosystem.hpp"
#include "normsys/validation.hpp"
#include "testgen.hpp"

using namespace normsys;

namespace {

const char* const kMinimal = R"(# one agent, one state
agents x
actions x go
state s
avail x s go
initial s
trans s s go
)";

}  // namespace

TEST_SUITE("dsl") {
  TEST_CASE("minimal model") {
    const MasPtr mas = dsl::parse_model(kMinimal);
    CHECK(mas->state_count() == 1);
    CHECK(validate_mas(*mas).ok());
    CHECK(*dsl::parse_model(dsl::serialize_model(*mas)) == *mas);
  }

  TEST_CASE("model errors carry positions") {
    std::string text = kMinimal;
    text.replace(text.find("trans s s go"), 12, "trans s t go");
    try {
      dsl::parse_model(text);
      FAIL("expected a parse error");
    } catch (const ParseError& e) {
      CHECK(e.line() == 7);
      CHECK(std::string(e.what()).find("'t'") != std::string::npos);
    }
    CHECK_THROWS_AS(dsl::parse_model("agents x\nbogus\n"), ParseError);
    CHECK_THROWS_AS(dsl::parse_model("agents x\nactions x go\nstate s\ninitial s\n"), ValidationError);
  }

  TEST_CASE("newline conventions") {
    std::string crlf;
    for (char c : std::string(kMinimal)) {
      if (c == '\n') crlf += '\r';
      crlf += c;
    }
    CHECK(*dsl::parse_model(crlf) == *dsl::parse_model(kMinimal));
  }

  TEST_CASE("formula grammar") {
    const Formula f = dsl::parse_formula("AG (t_1=p_1 -> EF d_1=bot)");
    CHECK(f.kind() == FormulaKind::AG);
    CHECK(f.left().kind() == FormulaKind::Implies);
    CHECK(f.left().left() == Formula::atom("t_1=p_1"));
    CHECK(f.left().right() == Formula::unary(FormulaKind::EF, Formula::atom("d_1=bot")));

    const Formula g = dsl::parse_formula("E[ p U q ] | EG !p");
    CHECK(g == Formula::disjunction(Formula::until(FormulaKind::EU, Formula::atom("p"), Formula::atom("q")),
                                    Formula::unary(FormulaKind::EG, Formula::negation(Formula::atom("p")))));

    CHECK(dsl::parse_formula("a -> b -> c") ==
          Formula::implication(Formula::atom("a"), Formula::implication(Formula::atom("b"), Formula::atom("c"))));
    CHECK(dsl::parse_formula("a | b & c") ==
          Formula::disjunction(Formula::atom("a"), Formula::conjunction(Formula::atom("b"), Formula::atom("c"))));
    CHECK(dsl::parse_formula("\"odd atom\" & true") ==
          Formula::conjunction(Formula::atom("odd atom"), Formula::truth()));
    CHECK_THROWS_AS(dsl::parse_formula("AG"), ParseError);
    CHECK_THROWS_AS(dsl::parse_formula("p q"), ParseError);
    CHECK_THROWS_AS(dsl::parse_formula("E[p q]"), ParseError);
  }

  TEST_CASE("formula round trip") {
    testing::Rng rng(5);
    for (int i = 0; i < 300; ++i) {
      const Formula f = testing::random_formula(rng, 6, {"p", "x=1", "d_2=bot"});
      CHECK(dsl::parse_formula(dsl::serialize_formula(f)) == f);
    }
  }

  TEST_CASE("norm documents") {
    const MasPtr mas = dsl::parse_model(kMinimal);
    CHECK(dsl::parse_norm("", *mas) == NormativeSystem::identity(*mas));
    CHECK_THROWS_AS(dsl::parse_norm("forbid s q0 go\n", *mas), ValidationError);
    CHECK_THROWS_AS(dsl::parse_norm("forbid nowhere q0 go\n", *mas), ParseError);

    const Ecosystem eco = gen_ecosystem(EcoConfig::uniform(1, 3));
    const NormativeSystem n1 = norm_round_robin(eco);
    CHECK(dsl::parse_norm(dsl::serialize_norm(*eco.mas, n1), *eco.mas) == n1);
  }

  TEST_CASE("random model and norm round trips") {
    testing::Rng rng(13);
    for (int i = 0; i < 100; ++i) {
      const MasPtr mas = testing::random_mas(rng);
      const MasPtr again = dsl::parse_model(dsl::serialize_model(*mas));
      CHECK(*again == *mas);
      const NormativeSystem n = testing::random_norm(rng, *mas, 1 + i % 3);
      CHECK(dsl::parse_norm(dsl::serialize_norm(*mas, n), *again) == n);
    }
  }

  TEST_CASE("nfa documents") {
    const Nfa n = dsl::parse_nfa("initial q0\nfinal q0\nq0 a q0\nq0 b q0\n");
    CHECK(n.state_count() == 1);
    CHECK(n.final[0]);
    CHECK(nfa_run_universal(n));
    CHECK_THROWS_AS(dsl::parse_nfa("states q0\nq0 a q0\n"), ParseError);
    CHECK_THROWS_AS(dsl::parse_nfa("initial q0\nq0 a q1\n"), ParseError);

    testing::Rng rng(17);
    for (int i = 0; i < 50; ++i) {
      const Nfa r = testing::random_nfa(rng, 3);
      CHECK(dsl::parse_nfa(dsl::serialize_nfa(r)) == r);
    }
  }

  TEST_CASE("family documents") {
    dsl::FamilyDocument doc;
    doc.model = "m.mas";
    doc.norms = {"a.norm", "b.norm"};
    doc.active = 1;
    doc.observer = "c_4";
    doc.observations = {{"s0", "o 1"}, {"s1", "x"}};
    const dsl::FamilyDocument back = dsl::parse_family(dsl::serialize_family(doc));
    CHECK(back.model == doc.model);
    CHECK(back.norms == doc.norms);
    CHECK(back.active == 1);
    CHECK(back.observer == doc.observer);
    CHECK(back.observations == doc.observations);
  }
}
