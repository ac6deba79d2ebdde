#include "normsys/ecosystem.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include "normsys/error.hpp"

namespace normsys {

namespace {

constexpr const char* kBottom = "bot";

std::vector<std::string> split_words(std::string_view text) {
  std::vector<std::string> words;
  std::istringstream in{std::string(text)};
  for (std::string w; in >> w;) words.push_back(w);
  return words;
}

std::string join(const std::vector<std::string>& parts, const char* sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += sep;
    out += parts[i];
  }
  return out;
}

std::string consumer_name(std::size_t i) { return "c_" + std::to_string(i + 1); }
std::string producer_name(std::size_t j) { return "p_" + std::to_string(j + 1); }

std::string subset_name(const std::vector<std::uint32_t>& members) {
  std::vector<std::string> names;
  for (auto i : members) names.push_back(consumer_name(i));
  return "{" + join(names, ",") + "}";
}

/// All subsets of {0..n-1} with at most `limit` elements, by size then
/// lexicographically.
std::vector<std::vector<std::uint32_t>> small_subsets(std::size_t n, std::size_t limit) {
  std::vector<std::vector<std::uint32_t>> result{{}};
  std::vector<std::vector<std::uint32_t>> layer{{}};
  for (std::size_t size = 1; size <= std::min(n, limit); ++size) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& s : layer) {
      for (std::uint32_t i = s.empty() ? 0 : s.back() + 1; i < n; ++i) {
        next.push_back(s);
        next.back().push_back(i);
      }
    }
    result.insert(result.end(), next.begin(), next.end());
    layer = std::move(next);
  }
  return result;
}

/// Subsets of `pool` with exactly `size` elements, lexicographic.
std::vector<std::vector<std::uint32_t>> subsets_of_size(const std::vector<std::uint32_t>& pool,
                                                       std::size_t size) {
  std::vector<std::vector<std::uint32_t>> result;
  std::vector<std::uint32_t> current;
  auto rec = [&](auto& self, std::size_t from) -> void {
    if (current.size() == size) {
      result.push_back(current);
      return;
    }
    for (std::size_t i = from; i < pool.size(); ++i) {
      current.push_back(pool[i]);
      self(self, i + 1);
      current.pop_back();
    }
  };
  rec(rec, 0);
  return result;
}

bool parse_bool(const std::string& value, std::size_t line) {
  if (value == "true" || value == "yes" || value == "1") return true;
  if (value == "false" || value == "no" || value == "0") return false;
  throw ParseError("expected true or false, found '" + value + "'", line, 1);
}

std::size_t parse_count(const std::string& value, std::size_t line) {
  try {
    std::size_t used = 0;
    const unsigned long v = std::stoul(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  throw ParseError("expected a count, found '" + value + "'", line, 1);
}

/// Mixed-radix norm-state tuples (y_1..y_n), 1-based entries in 1..R.
class TupleSpace {
 public:
  TupleSpace(std::size_t n, std::size_t r) : n_(n), r_(r) {
    size_ = 1;
    for (std::size_t j = 0; j < n; ++j) size_ *= r;
  }
  std::size_t size() const noexcept { return size_; }
  std::vector<std::uint32_t> decode(std::size_t q) const {
    std::vector<std::uint32_t> y(n_);
    for (std::size_t j = n_; j-- > 0;) {
      y[j] = static_cast<std::uint32_t>(q % r_) + 1;
      q /= r_;
    }
    return y;
  }
  std::size_t encode(const std::vector<std::uint32_t>& y) const {
    std::size_t q = 0;
    for (auto v : y) q = q * r_ + (v - 1);
    return q;
  }
  std::string name(std::size_t q) const {
    std::vector<std::string> parts;
    for (auto v : decode(q)) parts.push_back(std::to_string(v));
    return "(" + join(parts, ",") + ")";
  }

 private:
  std::size_t n_;
  std::size_t r_;
  std::size_t size_;
};

/// Forbids, at every second-round state, the producer choices that skip
/// the designated consumer while that consumer is waiting on the producer.
void forbid_skipping(const Ecosystem& eco, NormativeSystem& norm,
                     const std::function<std::vector<int>(NormStateId)>& designated) {
  const Mas& mas = *eco.mas;
  const std::size_t n = eco.config.producers;
  for (StateId s = 0; s < mas.state_count(); ++s) {
    if (eco.states[s].round != 2) continue;
    std::vector<std::vector<std::uint32_t>> waiting(n);
    for (std::size_t j = 0; j < n; ++j) waiting[j] = eco.requesters(s, j);
    const auto joints = available_joint_actions(mas, s);
    for (NormStateId q = 0; q < norm.norm_state_count(); ++q) {
      const std::vector<int> y = designated(q);
      std::vector<std::uint32_t> forbidden;
      for (std::uint32_t idx = 0; idx < joints.size(); ++idx) {
        for (std::size_t j = 0; j < n; ++j) {
          if (y[j] < 0) continue;
          const auto who = static_cast<std::uint32_t>(y[j]);
          if (!std::binary_search(waiting[j].begin(), waiting[j].end(), who)) continue;
          const auto& batch = eco.batches[j][joints[idx].local[j]];
          const bool served = std::binary_search(batch.begin(), batch.end(), who);
          if (!served) {
            forbidden.push_back(idx);
            break;
          }
        }
      }
      norm.set_forbidden(s, q, std::move(forbidden));
    }
  }
}

std::string newcomer_view(const EcoState& st, std::size_t v) {
  std::vector<std::string> names;
  const int target = st.consumers[v].target;
  if (target >= 0) {
    for (std::size_t i = 0; i < st.consumers.size(); ++i) {
      if (st.consumers[i].target == target) names.push_back(consumer_name(i));
    }
  }
  return std::to_string(st.round) + "|" + join(names, ",");
}

NormativeSystem designated_norm(const Ecosystem& eco, std::size_t step, const char* name) {
  const std::size_t n = eco.config.producers;
  const std::size_t r = eco.config.roster();
  const TupleSpace space(n, r);
  std::vector<std::string> names;
  for (std::size_t q = 0; q < space.size(); ++q) names.push_back(space.name(q));
  std::vector<std::uint32_t> start(n);
  for (std::size_t j = 0; j < n; ++j) start[j] = static_cast<std::uint32_t>(j % r) + 1;

  NormativeSystem norm(std::move(names), eco.mas->state_count(),
                       static_cast<NormStateId>(space.encode(start)));
  norm.set_name(name);
  forbid_skipping(eco, norm, [&](NormStateId q) {
    std::vector<int> y;
    for (auto v : space.decode(q)) y.push_back(static_cast<int>(v) - 1);
    return y;
  });
  for (NormStateId q = 0; q < space.size(); ++q) {
    auto y = space.decode(q);
    for (auto& v : y) v = static_cast<std::uint32_t>((v - 1 + step) % r) + 1;
    const auto advanced = static_cast<NormStateId>(space.encode(y));
    for (StateId s = 0; s < eco.mas->state_count(); ++s) {
      norm.set_update(q, s, eco.states[s].round == 1 ? advanced : q);
    }
  }
  return norm;
}

}  // namespace

const std::vector<std::string>& EcoConfig::requirement(std::size_t i) const {
  if (i < consumers) return requirements.at(i);
  if (include_new_agent && i == consumers) return new_agent_requirement;
  throw Error("no consumer with index " + std::to_string(i + 1));
}

EcoConfig EcoConfig::uniform(std::size_t producers, std::size_t consumers, std::string good) {
  EcoConfig cfg;
  cfg.producers = producers;
  cfg.consumers = consumers;
  for (std::size_t j = 0; j < producers; ++j) {
    cfg.goods.push_back("g_" + std::to_string(j + 1));
    cfg.capacity.push_back(1);
  }
  cfg.requirements.assign(consumers, {good});
  cfg.new_agent_requirement = {good};
  return cfg;
}

void validate_config(const EcoConfig& cfg) {
  if (cfg.producers == 0) throw Error("at least one producer is required");
  if (cfg.consumers == 0) throw Error("at least one consumer is required");
  if (cfg.goods.size() != cfg.producers) throw Error("goods must list one kind per producer");
  if (cfg.capacity.size() != cfg.producers) throw Error("capacity must list one value per producer");
  for (std::size_t c : cfg.capacity) {
    if (c == 0) throw Error("capacities must be positive");
  }
  if (cfg.requirements.size() != cfg.consumers) {
    throw Error("every consumer needs a requirement");
  }
  if (cfg.cancel_rule && !cfg.include_new_agent) throw Error("cancel_rule needs new_agent");
  if (cfg.roster() > 24) throw Error("at most 24 consumers are supported");
  const std::set<std::string> produced(cfg.goods.begin(), cfg.goods.end());
  for (std::size_t i = 0; i < cfg.roster(); ++i) {
    const auto& r = cfg.requirement(i);
    if (r.empty()) throw Error("consumer " + consumer_name(i) + " requires nothing");
    for (const auto& g : r) {
      if (!produced.count(g)) throw Error("nobody produces '" + g + "' required by " + consumer_name(i));
    }
  }
  if (cfg.include_new_agent) {
    const auto& r = cfg.new_agent_requirement;
    if (std::adjacent_find(r.begin(), r.end(), std::not_equal_to<>()) != r.end()) {
      throw Error("the newcomer must require a single kind of goods");
    }
  }
}

EcoConfig parse_eco_config(std::string_view text) {
  EcoConfig cfg;
  cfg.goods.clear();
  std::map<std::size_t, std::vector<std::string>> listed;
  bool have_goods = false;
  bool have_capacity = false;
  std::istringstream in{std::string(text)};
  std::size_t line_no = 0;
  for (std::string line; std::getline(in, line);) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw ParseError("expected key = value", line_no, 1);
    const auto key_words = split_words(line.substr(0, eq));
    if (key_words.size() != 1) throw ParseError("malformed key", line_no, 1);
    const std::string& key = key_words[0];
    const auto values = split_words(line.substr(eq + 1));
    auto single = [&]() -> const std::string& {
      if (values.size() != 1) throw ParseError("'" + key + "' takes one value", line_no, eq + 2);
      return values[0];
    };
    if (key == "producers") {
      cfg.producers = parse_count(single(), line_no);
    } else if (key == "consumers") {
      cfg.consumers = parse_count(single(), line_no);
    } else if (key == "goods") {
      cfg.goods = values;
      have_goods = true;
    } else if (key == "capacity") {
      cfg.capacity.clear();
      for (const auto& v : values) cfg.capacity.push_back(parse_count(v, line_no));
      have_capacity = true;
    } else if (key.rfind("require.", 0) == 0) {
      const std::size_t i = parse_count(key.substr(8), line_no);
      if (i == 0) throw ParseError("consumers are numbered from 1", line_no, 1);
      listed[i - 1] = values;
    } else if (key == "new_agent") {
      cfg.include_new_agent = parse_bool(single(), line_no);
    } else if (key == "new_agent_require") {
      cfg.new_agent_requirement = values;
    } else if (key == "cancel_rule") {
      cfg.cancel_rule = parse_bool(single(), line_no);
    } else {
      throw ParseError("unknown key '" + key + "'", line_no, 1);
    }
  }
  if (!have_goods) {
    for (std::size_t j = 0; j < cfg.producers; ++j) cfg.goods.push_back("g_" + std::to_string(j + 1));
  }
  if (!have_capacity) cfg.capacity.assign(cfg.producers, 1);
  cfg.requirements.assign(cfg.consumers, {});
  for (auto& [i, r] : listed) {
    if (i >= cfg.consumers) throw Error("requirement for unknown consumer " + consumer_name(i));
    cfg.requirements[i] = std::move(r);
  }
  if (cfg.include_new_agent && cfg.new_agent_requirement.empty() && !cfg.goods.empty()) {
    cfg.new_agent_requirement = {cfg.goods.front()};
  }
  validate_config(cfg);
  return cfg;
}

std::string serialize_eco_config(const EcoConfig& cfg) {
  std::ostringstream out;
  out << "producers = " << cfg.producers << "\nconsumers = " << cfg.consumers
      << "\ngoods = " << join(cfg.goods, " ") << "\ncapacity =";
  for (auto c : cfg.capacity) out << ' ' << c;
  out << '\n';
  for (std::size_t i = 0; i < cfg.consumers; ++i) {
    out << "require." << i + 1 << " = " << join(cfg.requirements[i], " ") << '\n';
  }
  out << "new_agent = " << (cfg.include_new_agent ? "true" : "false") << '\n';
  if (cfg.include_new_agent) out << "new_agent_require = " << join(cfg.new_agent_requirement, " ") << '\n';
  out << "cancel_rule = " << (cfg.cancel_rule ? "true" : "false") << '\n';
  return out.str();
}

std::vector<std::uint32_t> Ecosystem::requesters(StateId s, std::size_t j) const {
  std::vector<std::uint32_t> result;
  const auto& cs = states.at(s).consumers;
  for (std::uint32_t i = 0; i < cs.size(); ++i) {
    if (cs[i].target == static_cast<int>(j)) result.push_back(i);
  }
  return result;
}

ActionId Ecosystem::service_action(std::size_t j, const std::vector<std::uint32_t>& served) const {
  auto id = mas->find_action(producer_agent(j), subset_name(served));
  if (!id) throw Error("producer " + producer_name(j) + " cannot serve " + subset_name(served));
  return *id;
}

Ecosystem gen_ecosystem(const EcoConfig& cfg) {
  validate_config(cfg);
  Ecosystem eco;
  eco.config = cfg;
  for (const auto& g : cfg.goods) {
    auto it = std::find(eco.kinds.begin(), eco.kinds.end(), g);
    if (it == eco.kinds.end()) it = eco.kinds.insert(eco.kinds.end(), g);
    eco.kind_of_producer.push_back(static_cast<std::uint32_t>(it - eco.kinds.begin()));
  }
  const std::size_t n = cfg.producers;
  const std::size_t roster = cfg.roster();
  const bool newcomer = cfg.include_new_agent;
  const std::size_t v = cfg.consumers;  // newcomer's roster index

  std::vector<std::vector<std::uint32_t>> required(roster);
  for (std::size_t i = 0; i < roster; ++i) {
    for (const auto& g : cfg.requirement(i)) {
      required[i].push_back(static_cast<std::uint32_t>(
          std::find(eco.kinds.begin(), eco.kinds.end(), g) - eco.kinds.begin()));
    }
    std::sort(required[i].begin(), required[i].end());
  }

  MasBuilder b;
  for (std::size_t j = 0; j < n; ++j) b.add_agent(producer_name(j));
  for (std::size_t i = 0; i < roster; ++i) b.add_agent(consumer_name(i));

  std::vector<ActionId> producer_idle(n);
  std::vector<std::map<std::vector<std::uint32_t>, ActionId>> serve(n);
  for (std::size_t j = 0; j < n; ++j) {
    producer_idle[j] = b.add_action(static_cast<AgentId>(j), kBottom);
    for (auto& subset : small_subsets(roster, cfg.capacity[j])) {
      serve[j][subset] = b.add_action(static_cast<AgentId>(j), subset_name(subset));
    }
  }
  std::vector<ActionId> consumer_idle(roster);
  std::vector<std::vector<ActionId>> request(roster);
  ActionId cancel = 0;
  for (std::size_t i = 0; i < roster; ++i) {
    const auto agent = static_cast<AgentId>(n + i);
    consumer_idle[i] = b.add_action(agent, kBottom);
    for (std::size_t j = 0; j < n; ++j) request[i].push_back(b.add_action(agent, producer_name(j)));
    if (cfg.cancel_rule && i == v) cancel = b.add_action(agent, "cancel");
  }

  auto kind_name = [&](int g) { return g < 0 ? std::string(kBottom) : eco.kinds[g]; };
  auto target_name = [&](int j) { return j < 0 ? std::string(kBottom) : producer_name(j); };
  auto remaining_name = [&](const std::vector<std::uint32_t>& rr) {
    if (rr.empty()) return std::string("none");
    std::vector<std::string> names;
    for (auto g : rr) names.push_back(eco.kinds[g]);
    return join(names, "+");
  };
  auto encode = [&](const EcoState& st) {
    std::string name = std::to_string(st.round);
    for (const auto& c : st.consumers) {
      name += "/" + remaining_name(c.remaining) + ":" + kind_name(c.demand) + ":" + target_name(c.target);
    }
    return name;
  };

  std::unordered_map<std::string, StateId> ids;
  std::deque<StateId> queue;
  auto intern = [&](const EcoState& st) {
    std::string name = encode(st);
    auto it = ids.find(name);
    if (it != ids.end()) return it->second;
    const StateId id = b.add_state(name);
    ids.emplace(std::move(name), id);
    eco.states.push_back(st);
    queue.push_back(id);
    return id;
  };

  EcoState initial;
  initial.consumers.assign(roster, ConsumerLocal{});
  b.add_initial(intern(initial));

  while (!queue.empty()) {
    const StateId s = queue.front();
    queue.pop_front();
    const EcoState st = eco.states[s];
    JointAction joint;
    joint.local.resize(n + roster);

    if (st.round == 1) {
      // Each idle consumer refills its job if done and requests one
      // producer of some still-missing kind.
      std::vector<std::vector<ActionId>> choices(roster);
      std::vector<std::vector<std::uint32_t>> refilled(roster);
      for (std::size_t i = 0; i < roster; ++i) {
        const auto& c = st.consumers[i];
        refilled[i] = c.remaining.empty() ? required[i] : c.remaining;
        if (c.demand >= 0) {
          choices[i] = {consumer_idle[i]};
          continue;
        }
        for (std::size_t j = 0; j < n; ++j) {
          if (std::binary_search(refilled[i].begin(), refilled[i].end(), eco.kind_of_producer[j])) {
            choices[i].push_back(request[i][j]);
          }
        }
      }
      for (std::size_t j = 0; j < n; ++j) {
        b.set_available(static_cast<AgentId>(j), s, {producer_idle[j]});
        joint.local[j] = producer_idle[j];
      }
      for (std::size_t i = 0; i < roster; ++i) b.set_available(static_cast<AgentId>(n + i), s, choices[i]);

      std::vector<std::size_t> digit(roster, 0);
      while (true) {
        EcoState next = st;
        next.round = 2;
        for (std::size_t i = 0; i < roster; ++i) {
          const ActionId a = choices[i][digit[i]];
          joint.local[n + i] = a;
          auto& c = next.consumers[i];
          c.remaining = refilled[i];
          if (a != consumer_idle[i]) {
            const auto j = static_cast<std::size_t>(
                std::find(request[i].begin(), request[i].end(), a) - request[i].begin());
            c.target = static_cast<int>(j);
            c.demand = static_cast<int>(eco.kind_of_producer[j]);
          }
        }
        b.add_transition(s, joint, intern(next));
        std::size_t i = roster;
        while (i > 0 && ++digit[i - 1] == choices[i - 1].size()) digit[--i] = 0;
        if (i == 0) break;
      }
    } else {
      // Each producer serves a maximal batch of its waiting consumers.
      std::vector<std::vector<std::vector<std::uint32_t>>> batches(n);
      for (std::size_t j = 0; j < n; ++j) {
        std::vector<std::uint32_t> waiting;
        for (std::uint32_t i = 0; i < roster; ++i) {
          if (st.consumers[i].target == static_cast<int>(j)) waiting.push_back(i);
        }
        batches[j] = subsets_of_size(waiting, std::min(cfg.capacity[j], waiting.size()));
        std::vector<ActionId> avail;
        for (const auto& batch : batches[j]) avail.push_back(serve[j].at(batch));
        std::sort(avail.begin(), avail.end());
        b.set_available(static_cast<AgentId>(j), s, avail);
      }
      const bool may_cancel = cfg.cancel_rule && st.consumers[v].target >= 0;
      for (std::size_t i = 0; i < roster; ++i) {
        std::vector<ActionId> avail{consumer_idle[i]};
        if (may_cancel && i == v) avail.push_back(cancel);
        b.set_available(static_cast<AgentId>(n + i), s, avail);
        joint.local[n + i] = consumer_idle[i];
      }

      std::vector<std::size_t> digit(n + 1, 0);
      const std::size_t cancel_options = may_cancel ? 2 : 1;
      while (true) {
        EcoState next = st;
        next.round = 1;
        if (digit[n] == 1) {
          joint.local[n + v] = cancel;
          next.consumers[v].demand = -1;
          next.consumers[v].target = -1;
        } else if (newcomer) {
          joint.local[n + v] = consumer_idle[v];
        }
        for (std::size_t j = 0; j < n; ++j) {
          const auto& batch = batches[j][digit[j]];
          joint.local[j] = serve[j].at(batch);
          for (std::uint32_t i : batch) {
            auto& c = next.consumers[i];
            const std::uint32_t kind = eco.kind_of_producer[j];
            c.remaining.erase(std::find(c.remaining.begin(), c.remaining.end(), kind));
            c.demand = -1;
            c.target = -1;
          }
        }
        b.add_transition(s, joint, intern(next));
        std::size_t k = n + 1;
        while (k > 0 && ++digit[k - 1] == (k - 1 == n ? cancel_options : batches[k - 1].size())) digit[--k] = 0;
        if (k == 0) break;
      }
    }
  }

  // Labels and observations.
  for (StateId s = 0; s < eco.states.size(); ++s) {
    const EcoState& st = eco.states[s];
    b.add_label(s, "k=" + std::to_string(st.round));
    for (std::size_t i = 0; i < roster; ++i) {
      const auto& c = st.consumers[i];
      const std::string idx = std::to_string(i + 1);
      b.add_label(s, "rr_" + idx + "=" + remaining_name(c.remaining));
      b.add_label(s, "d_" + idx + "=" + kind_name(c.demand));
      b.add_label(s, "t_" + idx + "=" + target_name(c.target));
    }
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<std::string> names;
      for (auto i : eco.requesters(s, j)) names.push_back(consumer_name(i));
      b.set_observation(static_cast<AgentId>(j), s, std::to_string(st.round) + "|" + join(names, ","));
    }
    for (std::size_t i = 0; i < roster; ++i) {
      if (newcomer && i == v) continue;
      const auto& c = st.consumers[i];
      b.set_observation(static_cast<AgentId>(n + i), s,
                        std::to_string(st.round) + "|" + remaining_name(c.remaining) + ":" +
                            kind_name(c.demand) + ":" + target_name(c.target));
    }
  }
  if (newcomer) {
    for (StateId s = 0; s < eco.states.size(); ++s) {
      b.set_observation(static_cast<AgentId>(n + v), s, newcomer_view(eco.states[s], v));
    }
  }
  eco.mas = b.build();
  eco.batches.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    eco.batches[j].resize(eco.mas->action_count(static_cast<AgentId>(j)));
    for (const auto& [batch, action] : serve[j]) eco.batches[j][action] = batch;
  }
  return eco;
}

std::vector<std::string> newcomer_observations(const Ecosystem& eco) {
  if (!eco.config.include_new_agent) throw Error("the configuration has no newcomer");
  std::vector<std::string> result;
  for (const auto& st : eco.states) result.push_back(newcomer_view(st, eco.config.consumers));
  return result;
}

NormativeSystem norm_round_robin(const Ecosystem& eco) { return designated_norm(eco, 1, "N1"); }

NormativeSystem norm_skip2(const Ecosystem& eco) { return designated_norm(eco, 2, "N6"); }

NormativeSystem norm_fifo(const Ecosystem& eco) {
  const std::size_t n = eco.config.producers;
  const std::size_t roster = eco.config.roster();
  const std::size_t states = eco.mas->state_count();

  // Queues of distinct roster members, shortest first.
  std::vector<std::vector<std::uint32_t>> queues{{}};
  for (std::size_t at = 0; at < queues.size(); ++at) {
    if (queues[at].size() == roster) continue;
    for (std::uint32_t i = 0; i < roster; ++i) {
      if (std::find(queues[at].begin(), queues[at].end(), i) != queues[at].end()) continue;
      auto longer = queues[at];
      longer.push_back(i);
      queues.push_back(std::move(longer));
    }
  }
  std::map<std::vector<std::uint32_t>, std::size_t> queue_id;
  for (std::size_t i = 0; i < queues.size(); ++i) queue_id[queues[i]] = i;
  auto queue_name = [&](const std::vector<std::uint32_t>& q) {
    std::vector<std::string> parts;
    for (auto i : q) parts.push_back(std::to_string(i + 1));
    return "[" + join(parts, ",") + "]";
  };

  const std::size_t base = queues.size();
  std::size_t count = 1;
  for (std::size_t j = 0; j < n; ++j) count *= base;
  auto decode = [&](std::size_t q) {
    std::vector<std::size_t> digits(n);
    for (std::size_t j = n; j-- > 0;) {
      digits[j] = q % base;
      q /= base;
    }
    return digits;
  };
  auto encode = [&](const std::vector<std::size_t>& digits) {
    std::size_t q = 0;
    for (auto d : digits) q = q * base + d;
    return q;
  };

  std::vector<std::string> names;
  for (std::size_t q = 0; q < count; ++q) {
    std::vector<std::string> parts;
    for (auto d : decode(q)) parts.push_back(queue_name(queues[d]));
    names.push_back("(" + join(parts, ",") + ")");
  }
  NormativeSystem norm(std::move(names), states, 0);
  norm.set_name("N2");
  forbid_skipping(eco, norm, [&](NormStateId q) {
    std::vector<int> heads;
    for (auto d : decode(q)) heads.push_back(queues[d].empty() ? -1 : static_cast<int>(queues[d].front()));
    return heads;
  });

  // Per producer and queue, the queue after moving to each state: drop
  // members no longer waiting, then append newcomers in index order.
  std::vector<std::vector<std::vector<std::size_t>>> step(n);  // [j][queue][s]
  for (std::size_t j = 0; j < n; ++j) {
    step[j].assign(base, std::vector<std::size_t>(states));
    for (StateId s = 0; s < states; ++s) {
      const auto waiting = eco.requesters(s, j);
      for (std::size_t d = 0; d < base; ++d) {
        std::vector<std::uint32_t> next;
        for (auto i : queues[d]) {
          if (std::binary_search(waiting.begin(), waiting.end(), i)) next.push_back(i);
        }
        for (auto i : waiting) {
          if (std::find(queues[d].begin(), queues[d].end(), i) == queues[d].end()) next.push_back(i);
        }
        step[j][d][s] = queue_id.at(next);
      }
    }
  }
  for (NormStateId q = 0; q < count; ++q) {
    const auto digits = decode(q);
    std::vector<std::size_t> next(n);
    for (StateId s = 0; s < states; ++s) {
      for (std::size_t j = 0; j < n; ++j) next[j] = step[j][digits[j]][s];
      norm.set_update(q, s, static_cast<NormStateId>(encode(next)));
    }
  }
  return norm;
}

std::vector<NormativeSystem> static_norms_simple(const Ecosystem& eco) {
  const EcoConfig& cfg = eco.config;
  const bool simple = cfg.producers == 1 && cfg.consumers == 2 && cfg.capacity[0] == 1 &&
                      !cfg.include_new_agent && cfg.requirements[0] == std::vector{cfg.goods[0]} &&
                      cfg.requirements[1] == std::vector{cfg.goods[0]};
  if (!simple) throw Error("the static norms are defined for one producer and two consumers needing one good");
  const Mas& mas = *eco.mas;
  std::optional<StateId> contested;
  for (StateId s = 0; s < mas.state_count(); ++s) {
    if (eco.states[s].round == 2 && eco.requesters(s, 0).size() == 2) contested = s;
  }
  if (!contested) throw Error("no state with two waiting consumers");

  auto skip = [&](const char* name, std::optional<std::uint32_t> served) {
    NormativeSystem norm = NormativeSystem::identity(mas);
    norm.set_name(name);
    if (served) {
      JointAction a{{eco.service_action(0, {*served}), *mas.find_action(1, kBottom),
                     *mas.find_action(2, kBottom)}};
      norm.forbid(*contested, 0, *mas.joint_index(*contested, a));
    }
    return norm;
  };
  std::vector<NormativeSystem> result;
  result.push_back(skip("N3", 0));
  result.push_back(skip("N4", 1));
  result.push_back(skip("N5", std::nullopt));
  return result;
}

std::pair<Formula, Formula> objectives(const EcoConfig& cfg) {
  std::vector<Formula> possibly;
  std::vector<Formula> inevitably;
  for (std::size_t i = 0; i < cfg.roster(); ++i) {
    const std::string idx = std::to_string(i + 1);
    const Formula done = Formula::atom("d_" + idx + "=" + kBottom);
    for (std::size_t j = 0; j < cfg.producers; ++j) {
      const Formula asked = Formula::atom("t_" + idx + "=" + producer_name(j));
      possibly.push_back(Formula::unary(
          FormulaKind::AG, Formula::implication(asked, Formula::unary(FormulaKind::EF, done))));
      inevitably.push_back(Formula::unary(
          FormulaKind::AG, Formula::implication(asked, Formula::unary(FormulaKind::AF, done))));
    }
  }
  return {conjoin_all(possibly), conjoin_all(inevitably)};
}

NormFamily ecosystem_family(const Ecosystem& eco, std::vector<NormativeSystem> members,
                            std::size_t active) {
  return NormFamily::make(eco.mas, std::move(members), active, newcomer_observations(eco));
}

}  // namespace normsys
