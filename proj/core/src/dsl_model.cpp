#include <algorithm>
#include <sstream>

#include "line_reader.hpp"
#include "normsys/dsl.hpp"
#include "normsys/validation.hpp"

namespace normsys::dsl {

using detail::expect_arity;
using detail::fail;
using detail::Line;
using detail::quote;
using detail::Token;

namespace {

std::string joint_tokens(const Mas& mas, const JointAction& action) {
  std::string out;
  for (AgentId i = 0; i < action.arity(); ++i) {
    if (i) out += ' ';
    out += quote(mas.action_name(i, action.local[i]));
  }
  return out;
}

}  // namespace

namespace {

class ModelReader {
 public:
  MasPtr read(std::string_view text) {
    for (const Line& line : detail::tokenize_lines(text)) directive(line);
    return builder_.build();
  }

 private:
  AgentId agent(const Token& t) const {
    auto id = builder_.find_agent(t.text);
    if (!id) fail(t, "unknown agent '" + t.text + "'");
    return *id;
  }
  StateId state(const Token& t) const {
    auto id = builder_.find_state(t.text);
    if (!id) fail(t, "unknown state '" + t.text + "'");
    return *id;
  }
  ActionId action(AgentId a, const Token& t) const {
    auto id = builder_.find_action(a, t.text);
    if (!id) fail(t, "unknown action '" + t.text + "' for agent '" + builder_.agent_name(a) + "'");
    return *id;
  }

  void directive(const Line& line) {
    const std::string& kw = line[0].text;
    try {
      if (kw == "agents") {
        expect_arity(line, 2);
        if (!agents_open_) fail(line[0], "agents must be declared once, before any state");
        for (std::size_t i = 1; i < line.size(); ++i) builder_.add_agent(line[i].text);
        agents_open_ = false;
      } else if (kw == "actions") {
        expect_arity(line, 3);
        AgentId a = agent(line[1]);
        for (std::size_t i = 2; i < line.size(); ++i) builder_.add_action(a, line[i].text);
      } else if (kw == "props") {
        expect_arity(line, 2);
        for (std::size_t i = 1; i < line.size(); ++i) builder_.add_prop(line[i].text);
      } else if (kw == "states" || kw == "state") {
        expect_arity(line, 2);
        if (builder_.agent_count() == 0) fail(line[0], "states declared before agents");
        agents_open_ = false;
        for (std::size_t i = 1; i < line.size(); ++i) builder_.add_state(line[i].text);
      } else if (kw == "avail") {
        expect_arity(line, 4);
        AgentId a = agent(line[1]);
        StateId s = state(line[2]);
        std::vector<ActionId> acts;
        for (std::size_t i = 3; i < line.size(); ++i) acts.push_back(action(a, line[i]));
        builder_.set_available(a, s, std::move(acts));
      } else if (kw == "obs") {
        expect_arity(line, 4, 4);
        builder_.set_observation(agent(line[1]), state(line[2]), line[3].text);
      } else if (kw == "initial") {
        expect_arity(line, 2);
        for (std::size_t i = 1; i < line.size(); ++i) builder_.add_initial(state(line[i]));
      } else if (kw == "trans") {
        const std::size_t n = builder_.agent_count();
        if (line.size() != 3 + n) {
          fail(line[0], "trans expects source, target and " + std::to_string(n) + " local actions");
        }
        StateId src = state(line[1]);
        StateId dst = state(line[2]);
        JointAction ja;
        for (std::size_t i = 0; i < n; ++i) {
          ja.local.push_back(action(static_cast<AgentId>(i), line[3 + i]));
        }
        builder_.add_transition(src, std::move(ja), dst);
      } else if (kw == "label") {
        expect_arity(line, 2);
        StateId s = state(line[1]);
        for (std::size_t i = 2; i < line.size(); ++i) builder_.add_label(s, line[i].text);
      } else {
        fail(line[0], "unknown directive '" + kw + "'");
      }
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail(line[0], e.what());
    }
  }

  MasBuilder builder_;
  bool agents_open_ = true;
};

}  // namespace

MasPtr parse_model_unchecked(std::string_view text) { return ModelReader().read(text); }

MasPtr parse_model(std::string_view text) {
  MasPtr mas = parse_model_unchecked(text);
  ValidationReport report = validate_mas(*mas);
  if (!report.ok()) throw ValidationError(std::move(report));
  return mas;
}

std::string serialize_model(const Mas& mas) {
  std::ostringstream out;
  out << "agents";
  for (const auto& a : mas.agents()) out << ' ' << quote(a);
  out << '\n';
  for (AgentId i = 0; i < mas.agent_count(); ++i) {
    out << "actions " << quote(mas.agent_name(i));
    for (ActionId a = 0; a < mas.action_count(i); ++a) out << ' ' << quote(mas.action_name(i, a));
    out << '\n';
  }
  if (mas.prop_count() > 0) {
    out << "props";
    for (const auto& p : mas.propositions()) out << ' ' << quote(p);
    out << '\n';
  }
  for (StateId s = 0; s < mas.state_count(); ++s) out << "state " << quote(mas.state_name(s)) << '\n';
  for (StateId s = 0; s < mas.state_count(); ++s) {
    for (AgentId i = 0; i < mas.agent_count(); ++i) {
      auto avail = mas.available(i, s);
      if (!avail.empty()) {
        out << "avail " << quote(mas.agent_name(i)) << ' ' << quote(mas.state_name(s));
        for (ActionId a : avail) out << ' ' << quote(mas.action_name(i, a));
        out << '\n';
      }
      out << "obs " << quote(mas.agent_name(i)) << ' ' << quote(mas.state_name(s)) << ' '
          << quote(mas.observation(i, s)) << '\n';
    }
  }
  if (!mas.initial().empty()) {
    out << "initial";
    for (StateId s : mas.initial()) out << ' ' << quote(mas.state_name(s));
    out << '\n';
  }
  for (const auto& t : mas.transitions()) {
    out << "trans " << quote(mas.state_name(t.source)) << ' ' << quote(mas.state_name(t.target)) << ' '
        << joint_tokens(mas, t.action) << '\n';
  }
  for (StateId s = 0; s < mas.state_count(); ++s) {
    auto labels = mas.labels(s);
    if (labels.empty()) continue;
    out << "label " << quote(mas.state_name(s));
    for (PropId p : labels) out << ' ' << quote(mas.prop_name(p));
    out << '\n';
  }
  return out.str();
}

NormativeSystem parse_norm_unchecked(std::string_view text, const Mas& mas) {
  const auto lines = detail::tokenize_lines(text);
  std::string name;
  std::vector<std::string> norm_states;
  std::optional<Token> initial;
  const Token* states_line = nullptr;

  for (const Line& line : lines) {
    const std::string& kw = line[0].text;
    if (kw == "name") {
      expect_arity(line, 2, 2);
      name = line[1].text;
    } else if (kw == "norm-states") {
      expect_arity(line, 2);
      if (states_line) fail(line[0], "norm-states declared twice");
      states_line = &line[0];
      for (std::size_t i = 1; i < line.size(); ++i) {
        if (std::find(norm_states.begin(), norm_states.end(), line[i].text) != norm_states.end()) {
          fail(line[i], "duplicate norm state '" + line[i].text + "'");
        }
        norm_states.push_back(line[i].text);
      }
    } else if (kw == "initial-norm") {
      expect_arity(line, 2, 2);
      initial = line[1];
    } else if (kw != "forbid" && kw != "update") {
      fail(line[0], "unknown directive '" + kw + "'");
    }
  }
  if (norm_states.empty()) norm_states.push_back("q0");

  NormativeSystem norm(norm_states, mas.state_count());
  norm.set_name(name);
  auto norm_state = [&](const Token& t) {
    auto q = norm.find_norm_state(t.text);
    if (!q) fail(t, "unknown norm state '" + t.text + "'");
    return *q;
  };
  auto state = [&](const Token& t) {
    auto s = mas.find_state(t.text);
    if (!s) fail(t, "unknown state '" + t.text + "'");
    return *s;
  };
  if (initial) norm.set_initial(norm_state(*initial));

  for (const Line& line : lines) {
    const std::string& kw = line[0].text;
    if (kw == "forbid") {
      const std::size_t n = mas.agent_count();
      if (line.size() != 3 + n) {
        fail(line[0], "forbid expects state, norm state and " + std::to_string(n) + " local actions");
      }
      StateId s = state(line[1]);
      NormStateId q = norm_state(line[2]);
      JointAction ja;
      for (std::size_t i = 0; i < n; ++i) {
        auto a = mas.find_action(static_cast<AgentId>(i), line[3 + i].text);
        if (!a) fail(line[3 + i], "unknown action '" + line[3 + i].text + "'");
        ja.local.push_back(*a);
      }
      auto index = mas.joint_index(s, ja);
      if (!index) fail(line[3], "joint action is not available at state '" + line[1].text + "'");
      norm.forbid(s, q, *index);
    } else if (kw == "update") {
      expect_arity(line, 4, 4);
      norm.set_update(norm_state(line[1]), state(line[2]), norm_state(line[3]));
    }
  }
  return norm;
}

NormativeSystem parse_norm(std::string_view text, const Mas& mas) {
  NormativeSystem norm = parse_norm_unchecked(text, mas);
  ValidationReport report = validate_norm(mas, norm);
  if (!report.ok()) throw ValidationError(std::move(report));
  return norm;
}

std::string serialize_norm(const Mas& mas, const NormativeSystem& norm) {
  std::ostringstream out;
  if (!norm.name().empty()) out << "name " << quote(norm.name()) << '\n';
  out << "norm-states";
  for (const auto& q : norm.norm_states()) out << ' ' << quote(q);
  out << '\n';
  out << "initial-norm " << quote(norm.norm_state_name(norm.initial())) << '\n';
  for (StateId s = 0; s < mas.state_count(); ++s) {
    for (NormStateId q = 0; q < norm.norm_state_count(); ++q) {
      for (std::uint32_t j : norm.forbidden(s, q)) {
        out << "forbid " << quote(mas.state_name(s)) << ' ' << quote(norm.norm_state_name(q)) << ' '
            << joint_tokens(mas, mas.joint_at(s, j)) << '\n';
      }
    }
  }
  for (NormStateId q = 0; q < norm.norm_state_count(); ++q) {
    for (StateId s = 0; s < mas.state_count(); ++s) {
      NormStateId target = norm.update(q, s);
      if (target == q) continue;
      out << "update " << quote(norm.norm_state_name(q)) << ' ' << quote(mas.state_name(s)) << ' '
          << quote(norm.norm_state_name(target)) << '\n';
    }
  }
  return out.str();
}

FamilyDocument parse_family(std::string_view text) {
  FamilyDocument doc;
  bool saw_active = false;
  for (const Line& line : detail::tokenize_lines(text)) {
    const std::string& kw = line[0].text;
    if (kw == "model") {
      expect_arity(line, 2, 2);
      doc.model = line[1].text;
    } else if (kw == "norm") {
      expect_arity(line, 2, 2);
      doc.norms.push_back(line[1].text);
    } else if (kw == "active") {
      expect_arity(line, 2, 2);
      try {
        std::size_t used = 0;
        doc.active = std::stoul(line[1].text, &used);
        if (used != line[1].text.size()) throw std::invalid_argument("trailing");
      } catch (const std::exception&) {
        fail(line[1], "active expects a member index");
      }
      saw_active = true;
    } else if (kw == "observer") {
      expect_arity(line, 2, 2);
      doc.observer = line[1].text;
    } else if (kw == "obs") {
      expect_arity(line, 3, 3);
      doc.observations.emplace_back(line[1].text, line[2].text);
    } else {
      fail(line[0], "unknown directive '" + kw + "'");
    }
  }
  if (doc.norms.empty()) throw ParseError("a family lists at least one norm", 1, 1);
  if (saw_active && doc.active >= doc.norms.size()) {
    throw ParseError("active index out of range", 1, 1);
  }
  return doc;
}

std::string serialize_family(const FamilyDocument& doc) {
  std::ostringstream out;
  if (doc.model) out << "model " << quote(*doc.model) << '\n';
  for (const auto& n : doc.norms) out << "norm " << quote(n) << '\n';
  out << "active " << doc.active << '\n';
  if (doc.observer) out << "observer " << quote(*doc.observer) << '\n';
  for (const auto& [s, o] : doc.observations) out << "obs " << quote(s) << ' ' << quote(o) << '\n';
  return out.str();
}

}  // namespace normsys::dsl
