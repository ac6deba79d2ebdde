#include "normsys/recognition.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>

#include "normsys/error.hpp"

namespace normsys {

namespace {

/// Reachable products of every member with interned observations.
class FamilyIndex {
 public:
  explicit FamilyIndex(const NormFamily& family) {
    std::unordered_map<std::string, std::uint32_t> ids;
    for (const auto& o : family.new_agent_obs) {
      obs_.push_back(ids.emplace(o, static_cast<std::uint32_t>(ids.size())).first->second);
    }
    std::uint32_t offset = 0;
    for (const auto& member : family.members) {
      products_.push_back(reachable(KripkeStructure(family.mas, member)));
      offsets_.push_back(offset);
      offset += static_cast<std::uint32_t>(products_.back().size());
    }
    total_ = offset;
  }

  const ReachableProduct& product(std::size_t member) const { return products_[member]; }
  std::uint32_t obs(std::size_t member, NodeId node) const {
    return obs_[products_[member].states[node].state];
  }
  std::uint32_t global(std::size_t member, NodeId node) const { return offsets_[member] + node; }
  std::uint32_t total() const noexcept { return total_; }
  std::pair<std::uint32_t, NodeId> local(std::uint32_t global) const {
    auto it = std::upper_bound(offsets_.begin(), offsets_.end(), global);
    const auto member = static_cast<std::uint32_t>(it - offsets_.begin() - 1);
    return {member, global - offsets_[member]};
  }
  FamilyState state(std::uint32_t global) const {
    auto [member, node] = local(global);
    return {member, products_[member].states[node]};
  }

 private:
  std::vector<std::uint32_t> obs_;
  std::vector<ReachableProduct> products_;
  std::vector<std::uint32_t> offsets_;
  std::uint32_t total_ = 0;
};

std::vector<KripkeStructure> structures(const NormFamily& family) {
  std::vector<KripkeStructure> result;
  for (const auto& member : family.members) result.emplace_back(family.mas, member);
  return result;
}

const std::string& obs_of(const NormFamily& family, ProductState p) {
  return family.new_agent_obs.at(p.state);
}

bool is_run(const KripkeStructure& k, std::span<const ProductState> path) {
  if (path.empty() || !k.is_initial(path.front())) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    if (!k.has_edge(path[i], path[i + 1])) return false;
  }
  return true;
}

std::string fresh_name(std::string base, const std::set<std::string>& taken) {
  while (taken.count(base)) base += '\'';
  return base;
}

}  // namespace

NormFamily NormFamily::make(MasPtr mas, std::vector<NormativeSystem> members, std::size_t active,
                            std::vector<std::string> new_agent_obs) {
  NormFamily family;
  family.mas = std::move(mas);
  for (auto& m : members) family.members.push_back(std::make_shared<const NormativeSystem>(std::move(m)));
  family.active = active;
  family.new_agent_obs = std::move(new_agent_obs);
  return family;
}

std::vector<std::string> observations_of(const Mas& mas, AgentId agent) {
  std::vector<std::string> result;
  for (StateId s = 0; s < mas.state_count(); ++s) result.push_back(mas.observation(agent, s));
  return result;
}

ValidationReport validate_family(const NormFamily& family) {
  ValidationReport report;
  if (!family.mas) {
    report.violations.push_back({"family-model", "no system"});
    return report;
  }
  report = validate_mas(*family.mas);
  if (family.members.empty()) report.violations.push_back({"family-empty", "no candidate norms"});
  if (!family.members.empty() && family.active >= family.members.size()) {
    report.violations.push_back({"family-active", "active index " + std::to_string(family.active) +
                                                      " out of range"});
  }
  if (family.new_agent_obs.size() != family.mas->state_count()) {
    report.violations.push_back({"family-observation", "new agent observes " +
                                                           std::to_string(family.new_agent_obs.size()) +
                                                           " states, system has " +
                                                           std::to_string(family.mas->state_count())});
  }
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    for (auto& v : validate_norm(*family.mas, *family.members[i]).violations) {
      v.detail = "member " + std::to_string(i) + ": " + v.detail;
      report.violations.push_back(std::move(v));
    }
  }
  return report;
}

std::vector<std::string> extend_observation(const NormFamily& family,
                                            std::span<const ProductState> path) {
  std::vector<std::string> result;
  result.reserve(path.size());
  for (ProductState p : path) result.push_back(obs_of(family, p));
  return result;
}

std::string RecognitionVerdict::label() const {
  return std::string(problem == Problem::NC1 ? "NC1-" : "NC2-") +
         (successful ? "Successful" : "Unsuccessful");
}

SyncProduct build_sync_product(const NormFamily& family) {
  if (family.members.size() < 2) throw Error("the synchronized product needs a rival norm");
  const FamilyIndex index(family);
  const auto active = static_cast<std::uint32_t>(family.active);
  const auto& r0 = index.product(active);

  SyncProduct sp;
  sp.graph.propositions = {"safe"};
  std::unordered_map<std::uint64_t, NodeId> ids;
  std::vector<std::pair<NodeId, std::uint32_t>> nodes;  // (active node, rival global id)
  std::deque<NodeId> queue;

  auto intern = [&](NodeId a, std::uint32_t rival) {
    const std::uint64_t key = static_cast<std::uint64_t>(a) * index.total() + rival;
    auto [it, inserted] = ids.emplace(key, static_cast<NodeId>(nodes.size()));
    if (inserted) {
      nodes.emplace_back(a, rival);
      const FamilyState rs = index.state(rival);
      sp.states.push_back({r0.states[a], rs, rs.member != active});
      sp.graph.successors.emplace_back();
      sp.graph.labels.push_back(rs.member != active ? std::vector<PropId>{0} : std::vector<PropId>{});
      queue.push_back(it->second);
    }
    return it->second;
  };

  for (NodeId a : r0.graph.initial) {
    for (std::uint32_t r = 0; r < family.members.size(); ++r) {
      if (r == active) continue;
      for (NodeId t : index.product(r).graph.initial) {
        if (index.obs(active, a) == index.obs(r, t)) sp.graph.initial.push_back(intern(a, index.global(r, t)));
      }
    }
  }
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    const auto [a, rival] = nodes[v];
    const auto [r, t] = index.local(rival);
    const auto& rg = index.product(r).graph;
    std::vector<NodeId> succ;
    for (NodeId a2 : r0.graph.successors[a]) {
      for (NodeId t2 : rg.successors[t]) {
        if (index.obs(active, a2) == index.obs(r, t2)) succ.push_back(intern(a2, index.global(r, t2)));
      }
    }
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    sp.graph.successors[v] = std::move(succ);
  }
  std::sort(sp.graph.initial.begin(), sp.graph.initial.end());
  sp.graph.initial.erase(std::unique(sp.graph.initial.begin(), sp.graph.initial.end()),
                         sp.graph.initial.end());
  return sp;
}

RecognitionVerdict decide_nc1(const NormFamily& family) {
  RecognitionVerdict verdict;
  verdict.problem = RecognitionVerdict::Problem::NC1;
  verdict.successful = true;
  if (family.members.size() < 2) return verdict;

  const SyncProduct sp = build_sync_product(family);
  verdict.explored = sp.states.size();
  const auto& succ = sp.graph.successors;
  std::vector<bool> safe(sp.states.size());
  for (std::size_t v = 0; v < safe.size(); ++v) safe[v] = sp.states[v].safe;

  const SccDecomposition scc = tarjan_scc(succ, safe);
  std::optional<NodeId> entry;
  for (NodeId v = 0; v < sp.states.size() && !entry; ++v) {
    if (safe[v] && scc.nontrivial[scc.component[v]]) entry = v;
  }
  if (!entry) return verdict;

  const std::uint32_t component = scc.component[*entry];
  std::vector<bool> in_component(sp.states.size(), false);
  for (NodeId v : scc.members[component]) in_component[v] = true;
  std::vector<NodeId> next;
  for (NodeId w : succ[*entry]) {
    if (in_component[w]) next.push_back(w);
  }
  const auto stem = shortest_path(succ, sp.graph.initial, *entry, safe);
  const auto back = shortest_path(succ, next, *entry, in_component);
  if (!stem || !back) throw Error("internal: lasso reconstruction failed");

  std::vector<NodeId> sequence = *stem;
  sequence.insert(sequence.end(), back->begin(), back->end() - 1);
  LassoWitness lasso;
  lasso.loop_start = stem->size() - 1;
  lasso.rival = sp.states[sequence.front()].rival.member;
  for (NodeId v : sequence) {
    lasso.active_path.push_back(sp.states[v].active);
    lasso.rival_path.push_back(sp.states[v].rival.state);
  }
  verdict.successful = false;
  verdict.lasso = std::move(lasso);
  return verdict;
}

SubsetExploration explore_subset_structure(const NormFamily& family, bool stop_at_goal,
                                           std::size_t max_states) {
  const FamilyIndex index(family);
  const auto active = static_cast<std::uint32_t>(family.active);
  const auto& r0 = index.product(active);
  const std::uint32_t pure_lo = index.global(active, 0);
  const std::uint32_t pure_hi = pure_lo + static_cast<std::uint32_t>(r0.size());

  SubsetExploration ex;
  struct KeyHash {
    std::size_t operator()(const std::vector<std::uint32_t>& v) const noexcept {
      std::size_t h = v.size();
      for (std::uint32_t x : v) h ^= x + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      return h;
    }
  };
  // Key: active node followed by the sorted subset.
  std::unordered_map<std::vector<std::uint32_t>, NodeId, KeyHash> ids;
  std::vector<std::vector<std::uint32_t>> keys;
  std::deque<NodeId> queue;

  auto intern = [&](std::vector<std::uint32_t> key, NodeId parent) -> std::optional<NodeId> {
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    if (ex.states.size() >= max_states) {
      ex.truncated = true;
      return std::nullopt;
    }
    const auto id = static_cast<NodeId>(ex.states.size());
    SubsetState state;
    state.active = r0.states[key[0]];
    state.goal = true;
    for (std::size_t i = 1; i < key.size(); ++i) {
      state.members.push_back(index.state(key[i]));
      if (key[i] < pure_lo || key[i] >= pure_hi) state.goal = false;
    }
    std::sort(state.members.begin(), state.members.end());
    if (state.goal && !ex.goal) ex.goal = id;
    ex.states.push_back(std::move(state));
    ex.successors.emplace_back();
    ex.parent.push_back(parent == kNoJointIndex ? id : parent);
    keys.push_back(key);
    ids.emplace(std::move(key), id);
    queue.push_back(id);
    return id;
  };
  auto done = [&] { return (stop_at_goal && ex.goal) || ex.truncated; };

  for (NodeId a : r0.graph.initial) {
    std::vector<std::uint32_t> key{a};
    for (std::uint32_t r = 0; r < family.members.size(); ++r) {
      for (NodeId t : index.product(r).graph.initial) {
        if (index.obs(r, t) == index.obs(active, a)) key.push_back(index.global(r, t));
      }
    }
    std::sort(key.begin() + 1, key.end());
    intern(std::move(key), kNoJointIndex);
    if (done()) return ex;
  }
  while (!queue.empty()) {
    const NodeId v = queue.front();
    queue.pop_front();
    const std::vector<std::uint32_t> key = keys[v];
    std::vector<NodeId> succ;
    for (NodeId a2 : r0.graph.successors[key[0]]) {
      const std::uint32_t o = index.obs(active, a2);
      std::vector<std::uint32_t> next{a2};
      for (std::size_t i = 1; i < key.size(); ++i) {
        const auto [r, t] = index.local(key[i]);
        for (NodeId t2 : index.product(r).graph.successors[t]) {
          if (index.obs(r, t2) == o) next.push_back(index.global(r, t2));
        }
      }
      std::sort(next.begin() + 1, next.end());
      next.erase(std::unique(next.begin() + 1, next.end()), next.end());
      auto id = intern(std::move(next), v);
      if (id) succ.push_back(*id);
      if (done()) break;
    }
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    ex.successors[v] = std::move(succ);
    if (done()) break;
  }
  return ex;
}

RecognitionVerdict decide_nc2(const NormFamily& family) {
  RecognitionVerdict verdict;
  verdict.problem = RecognitionVerdict::Problem::NC2;
  const SubsetExploration ex = explore_subset_structure(family, true);
  verdict.explored = ex.states.size();
  if (!ex.goal) return verdict;
  std::vector<ProductState> path;
  for (NodeId v = *ex.goal;; v = ex.parent[v]) {
    path.push_back(ex.states[v].active);
    if (ex.parent[v] == v) break;
  }
  std::reverse(path.begin(), path.end());
  verdict.successful = true;
  verdict.path = std::move(path);
  return verdict;
}

bool validate_nc1_witness(const NormFamily& family, const LassoWitness& w) {
  if (w.rival >= family.members.size() || w.rival == family.active) return false;
  const std::size_t n = w.active_path.size();
  if (n == 0 || w.rival_path.size() != n || w.loop_start >= n) return false;
  const KripkeStructure k0(family.mas, family.members[family.active]);
  const KripkeStructure kr(family.mas, family.members[w.rival]);
  for (const auto& p : w.active_path) {
    if (p.state >= family.mas->state_count() || p.norm >= k0.norm().norm_state_count()) return false;
  }
  for (const auto& p : w.rival_path) {
    if (p.state >= family.mas->state_count() || p.norm >= kr.norm().norm_state_count()) return false;
  }
  if (!is_run(k0, w.active_path) || !is_run(kr, w.rival_path)) return false;
  if (!k0.has_edge(w.active_path.back(), w.active_path[w.loop_start])) return false;
  if (!kr.has_edge(w.rival_path.back(), w.rival_path[w.loop_start])) return false;
  return extend_observation(family, w.active_path) == extend_observation(family, w.rival_path);
}

bool validate_nc2_witness(const NormFamily& family, std::span<const ProductState> path) {
  if (path.empty()) return false;
  const auto ks = structures(family);
  const KripkeStructure& k0 = ks[family.active];
  for (const auto& p : path) {
    if (p.state >= family.mas->state_count() || p.norm >= k0.norm().norm_state_count()) return false;
  }
  if (!is_run(k0, path)) return false;
  const auto word = extend_observation(family, path);
  for (std::size_t r = 0; r < ks.size(); ++r) {
    if (r == family.active) continue;
    std::set<ProductState> frontier;
    for (const auto& p : ks[r].initial_states()) {
      if (obs_of(family, p) == word[0]) frontier.insert(p);
    }
    for (std::size_t i = 1; i < word.size() && !frontier.empty(); ++i) {
      std::set<ProductState> next;
      for (const auto& p : frontier) {
        for (const auto& q : ks[r].successors(p)) {
          if (obs_of(family, q) == word[i]) next.insert(q);
        }
      }
      frontier = std::move(next);
    }
    if (!frontier.empty()) return false;
  }
  return true;
}

std::optional<LassoWitness> nc1_bruteforce(const NormFamily& family, std::size_t depth) {
  if (family.members.size() < 2 || depth == 0) return std::nullopt;
  const auto ks = structures(family);
  const KripkeStructure& k0 = ks[family.active];
  std::vector<ProductState> as;
  std::vector<ProductState> rs;
  std::uint32_t rival = 0;
  std::optional<LassoWitness> found;

  std::function<bool()> extend = [&]() -> bool {
    if (as.size() >= depth) return false;
    for (const auto& a2 : k0.successors(as.back())) {
      for (const auto& r2 : ks[rival].successors(rs.back())) {
        if (obs_of(family, a2) != obs_of(family, r2)) continue;
        for (std::size_t i = 0; i < as.size(); ++i) {
          if (as[i] == a2 && rs[i] == r2) {
            found = LassoWitness{as, rival, rs, i};
            return true;
          }
        }
        as.push_back(a2);
        rs.push_back(r2);
        if (extend()) return true;
        as.pop_back();
        rs.pop_back();
      }
    }
    return false;
  };

  for (const auto& a : k0.initial_states()) {
    for (std::uint32_t r = 0; r < ks.size(); ++r) {
      if (r == family.active) continue;
      for (const auto& t : ks[r].initial_states()) {
        if (obs_of(family, a) != obs_of(family, t)) continue;
        as = {a};
        rs = {t};
        rival = r;
        if (extend()) return found;
      }
    }
  }
  return std::nullopt;
}

std::optional<std::vector<ProductState>> nc2_bruteforce(const NormFamily& family, std::size_t depth) {
  const auto ks = structures(family);
  const KripkeStructure& k0 = ks[family.active];

  // Does some run of `k` reproduce `word`?
  std::function<bool(const KripkeStructure&, const std::vector<std::string>&, std::size_t, ProductState)>
      run_from = [&](const KripkeStructure& k, const std::vector<std::string>& word, std::size_t i,
                     ProductState p) -> bool {
    if (obs_of(family, p) != word[i]) return false;
    if (i + 1 == word.size()) return true;
    for (const auto& q : k.successors(p)) {
      if (run_from(k, word, i + 1, q)) return true;
    }
    return false;
  };
  auto pure = [&](const std::vector<ProductState>& path) {
    const auto word = extend_observation(family, path);
    for (std::size_t r = 0; r < ks.size(); ++r) {
      if (r == family.active) continue;
      for (const auto& p : ks[r].initial_states()) {
        if (run_from(ks[r], word, 0, p)) return false;
      }
    }
    return true;
  };

  std::vector<std::vector<ProductState>> level;
  for (const auto& p : k0.initial_states()) level.push_back({p});
  for (std::size_t len = 1; len <= depth && !level.empty(); ++len) {
    for (const auto& path : level) {
      if (pure(path)) return path;
    }
    if (len == depth) break;
    std::vector<std::vector<ProductState>> next;
    for (const auto& path : level) {
      for (const auto& q : k0.successors(path.back())) {
        next.push_back(path);
        next.back().push_back(q);
      }
    }
    level = std::move(next);
  }
  return std::nullopt;
}

NormFamily build_nfa_recognition_instance(const Nfa& nfa) {
  if (nfa.alphabet.empty()) throw Error("the automaton's alphabet is empty");
  const std::set<std::string> symbols(nfa.alphabet.begin(), nfa.alphabet.end());
  const std::string bottom = fresh_name("bot", symbols);
  const std::string enter_automaton = fresh_name("a1", symbols);
  const std::string enter_words = fresh_name("a2", symbols);
  std::set<std::string> observations = symbols;
  observations.insert(bottom);
  const std::string init_obs = fresh_name("init", observations);

  MasBuilder b;
  const AgentId x = b.add_agent("x");
  std::vector<ActionId> letters;
  for (const auto& a : nfa.alphabet) letters.push_back(b.add_action(x, a));
  const ActionId a1 = b.add_action(x, enter_automaton);
  const ActionId a2 = b.add_action(x, enter_words);

  // Letter index sigma in 0..|Sigma|; the last one stands for bottom.
  const std::size_t sigma1 = nfa.symbol_count() + 1;
  auto letter_name = [&](std::size_t sigma) {
    return sigma < nfa.symbol_count() ? nfa.alphabet[sigma] : bottom;
  };
  const StateId s0 = b.add_state("s0");
  std::set<std::string> word_names;
  for (std::size_t sigma = 0; sigma < sigma1; ++sigma) word_names.insert("s_" + letter_name(sigma));
  const StateId loop = b.add_state(fresh_name("s_loop", word_names));
  std::vector<std::vector<StateId>> run(sigma1);  // run[sigma][q]
  for (std::size_t sigma = 0; sigma < sigma1; ++sigma) {
    for (std::size_t q = 0; q < nfa.state_count(); ++q) {
      run[sigma].push_back(b.add_state("(" + letter_name(sigma) + "," + nfa.states[q] + ")"));
    }
  }
  std::vector<StateId> word(sigma1);
  for (std::size_t sigma = 0; sigma < sigma1; ++sigma) word[sigma] = b.add_state("s_" + letter_name(sigma));

  b.set_available(x, s0, {a1, a2});
  b.set_observation(x, s0, init_obs);
  b.add_initial(s0);
  for (StateId s = 0; s < b.state_count(); ++s) {
    if (s != s0) b.set_available(x, s, letters);
  }
  b.set_observation(x, loop, bottom);
  for (std::size_t sigma = 0; sigma < sigma1; ++sigma) {
    for (StateId s : run[sigma]) b.set_observation(x, s, letter_name(sigma));
    b.set_observation(x, word[sigma], letter_name(sigma));
  }

  const std::size_t bot_index = sigma1 - 1;
  b.add_transition(s0, JointAction{{a1}}, run[bot_index][nfa.initial]);
  b.add_transition(s0, JointAction{{a2}}, word[bot_index]);
  for (std::size_t sigma = 0; sigma < sigma1; ++sigma) {
    for (std::size_t q = 0; q < nfa.state_count(); ++q) {
      for (std::size_t a = 0; a < nfa.symbol_count(); ++a) {
        const auto& targets = nfa.delta[q][a];
        if (targets.empty()) b.add_transition(run[sigma][q], JointAction{{letters[a]}}, loop);
        for (std::uint32_t q1 : targets) {
          b.add_transition(run[sigma][q], JointAction{{letters[a]}}, run[a][q1]);
        }
      }
    }
    for (std::size_t a = 0; a < nfa.symbol_count(); ++a) {
      b.add_transition(word[sigma], JointAction{{letters[a]}}, word[a]);
    }
  }
  for (std::size_t a = 0; a < nfa.symbol_count(); ++a) {
    b.add_transition(loop, JointAction{{letters[a]}}, loop);
  }
  MasPtr mas = b.build();

  auto entry_norm = [&](const char* name, const char* state, ActionId forbidden) {
    NormativeSystem n({state}, mas->state_count());
    n.set_name(name);
    n.forbid(s0, 0, *mas->joint_index(s0, JointAction{{forbidden}}));
    return n;
  };
  std::vector<NormativeSystem> members;
  members.push_back(entry_norm("N0", "t0", a1));
  members.push_back(entry_norm("N1", "t1", a2));
  auto obs = observations_of(*mas, x);
  return NormFamily::make(std::move(mas), std::move(members), 0, std::move(obs));
}

}  // namespace normsys
