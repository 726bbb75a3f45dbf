#include "cohere/forge.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <random>
#include <set>
#include <unordered_set>

namespace cohere {

std::string_view to_string(ObservationPerturbation m) {
  switch (m) {
    case ObservationPerturbation::ReplacePredicate: return "replace_predicate";
    case ObservationPerturbation::ReplaceArgument: return "replace_argument";
    case ObservationPerturbation::AddNegation: return "add_negation";
  }
  return "?";
}

std::string_view to_string(PlanPerturbation m) {
  switch (m) {
    case PlanPerturbation::DeleteProvider: return "delete_provider";
    case PlanPerturbation::ReversePair: return "reverse_pair";
  }
  return "?";
}

namespace {

using Rng = std::mt19937_64;

// Modulo pick keeps sequences identical across standard libraries, which
// the distribution classes do not guarantee.
std::size_t pick(Rng& rng, std::size_t n) { return static_cast<std::size_t>(rng() % n); }

}  // namespace

PerturbedObservation perturb_observation(const SceneGraph& graph, ObservationPerturbation mode,
                                         std::uint64_t seed,
                                         const std::vector<std::string>& relations) {
  Rng rng(seed);
  PerturbedObservation out;
  if (mode == ObservationPerturbation::AddNegation) {
    PropositionSet props = scene_graph_to_propositions(graph);
    if (props.empty()) throw PerturbationError("add_negation: graph has no facts");
    std::vector<Proposition> members(props.begin(), props.end());
    std::sort(members.begin(), members.end(), [](const Proposition& a, const Proposition& b) {
      return serialize_proposition(a) < serialize_proposition(b);
    });
    std::size_t k = pick(rng, members.size());
    members[k] = members[k].negated();
    out.props = PropositionSet::unordered(std::move(members));
    return out;
  }

  if (graph.empty()) throw PerturbationError(std::string(to_string(mode)) + ": empty graph");
  std::vector<std::pair<SpatialEdge, SpatialEdge>> candidates;
  for (const auto& e : graph.edges()) {
    if (mode == ObservationPerturbation::ReplacePredicate) {
      for (const auto& r : relations) {
        SpatialEdge to{r, e.src, e.dst};
        if (r != e.relation && !graph.has_edge(to)) candidates.emplace_back(e, to);
      }
    } else {
      for (const auto& [name, node] : graph.nodes()) {
        SpatialEdge as_src{e.relation, name, e.dst};
        SpatialEdge as_dst{e.relation, e.src, name};
        if (name != e.src && name != e.dst && !graph.has_edge(as_src)) {
          candidates.emplace_back(e, as_src);
        }
        if (name != e.dst && name != e.src && !graph.has_edge(as_dst)) {
          candidates.emplace_back(e, as_dst);
        }
      }
    }
  }
  if (candidates.empty()) {
    throw PerturbationError(std::string(to_string(mode)) + ": no applicable edge");
  }
  const auto& [from, to] = candidates[pick(rng, candidates.size())];
  SceneGraph g = graph;
  g.replace_edge(from, to);
  out.props = scene_graph_to_propositions(g);
  out.graph = std::move(g);
  return out;
}

std::vector<Plan> plan_perturbation_candidates(const Plan& plan, const DomainSpec& domain,
                                              PlanPerturbation mode) {
  const Plan grounded = domain.ground(plan);
  const SceneGraph& initial = domain.initial_graph(plan.task);
  if (!domain.replay(grounded, initial).executable()) {
    throw ValidationError("perturb_plan: plan for " + plan.task + " is not executable");
  }
  std::vector<Plan> candidates;
  const auto& steps = grounded.steps;
  if (mode == PlanPerturbation::DeleteProvider) {
    for (std::size_t j = 0; j < steps.size(); ++j) {
      bool provides = false;
      for (const auto& e : steps[j].effects) {
        if (!e.polarity) continue;
        for (std::size_t k = j + 1; k < steps.size() && !provides; ++k) {
          provides = steps[k].preconditions.contains(e);
        }
      }
      if (!provides) continue;
      Plan p = grounded;
      p.steps.erase(p.steps.begin() + static_cast<std::ptrdiff_t>(j));
      if (!domain.replay(p, initial).executable()) candidates.push_back(std::move(p));
    }
  } else {
    for (std::size_t j = 0; j < steps.size(); ++j) {
      for (std::size_t k = j + 1; k < steps.size(); ++k) {
        if (steps[j].args != steps[k].args) continue;
        Plan p = grounded;
        std::swap(p.steps[j], p.steps[k]);
        if (!domain.replay(p, initial).executable()) candidates.push_back(std::move(p));
      }
    }
  }
  return candidates;
}

Plan perturb_plan(const Plan& plan, const DomainSpec& domain, PlanPerturbation mode,
                  std::uint64_t seed) {
  std::vector<Plan> candidates = plan_perturbation_candidates(plan, domain, mode);
  if (candidates.empty()) {
    throw PerturbationError(std::string(to_string(mode)) + ": nothing to perturb in " + plan.task);
  }
  Rng rng(seed);
  return candidates[pick(rng, candidates.size())];
}

GenerationConfig GenerationConfig::with_total(std::size_t total, std::vector<std::string> tasks) {
  GenerationConfig c;
  const std::size_t n = c.per_failure_type.size();
  for (std::size_t i = 0; i < n; ++i) c.per_failure_type[i] = total / n + (i < total % n ? 1 : 0);
  c.tasks = std::move(tasks);
  return c;
}

std::size_t GenerationConfig::total() const {
  std::size_t t = 0;
  for (auto c : per_failure_type) t += c;
  return t;
}

namespace {

struct Candidate {
  std::string task;
  PairKind kind;
  PropositionSet premise;
  const std::string* hypothesis;
};

class Sampler {
 public:
  Sampler(const DomainSpec& domain, std::vector<std::string> tasks)
      : domain_(domain), tasks_(std::move(tasks)), relations_(domain.relations_with_arity(2)) {
    for (const auto& o : domain.objects()) {
      if (o.kind == "item") items_.push_back(o.name);
    }
    for (const auto& o : domain.objects()) kinds_[o.name] = o.kind;
  }

  std::optional<Candidate> draw(FailureType type, Rng& rng) const {
    const TaskSpec& task = domain_.task(tasks_[pick(rng, tasks_.size())]);
    SceneGraph initial = with_distractors(domain_.initial_graph(task.name), rng);
    Plan plan = task.plan;
    std::vector<SceneGraph> obs;
    std::size_t step = 0;
    std::optional<PropositionSet> observed;

    switch (type) {
      case FailureType::UnexpectedDynamics: {
        obs = domain_.replay(plan, initial).observations;
        step = pick(rng, plan.size());
        auto mode = static_cast<ObservationPerturbation>(pick(rng, 3));
        try {
          auto p = perturb_observation(filter_scene_graph(obs[step], plan, step), mode, rng(),
                                       relations_);
          observed = std::move(p.props);
        } catch (const PerturbationError&) {
          return std::nullopt;
        }
        break;
      }
      case FailureType::FailedExecution: {
        obs = domain_.replay(plan, initial).observations;
        std::vector<std::size_t> effective;
        for (std::size_t k = 0; k < obs.size(); ++k) {
          if (obs[k] != (k == 0 ? initial : obs[k - 1])) effective.push_back(k);
        }
        if (effective.empty()) return std::nullopt;
        step = effective[pick(rng, effective.size())];
        const SceneGraph& stale = step == 0 ? initial : obs[step - 1];
        observed = scene_graph_to_propositions(filter_scene_graph(stale, plan, step));
        break;
      }
      case FailureType::WrongOrder:
      case FailureType::MissingAction: {
        auto mode = type == FailureType::WrongOrder ? PlanPerturbation::ReversePair
                                                    : PlanPerturbation::DeleteProvider;
        const auto& options = perturbed_plans(task.name, mode);
        if (options.empty()) return std::nullopt;
        plan = options[pick(rng, options.size())];
        ReplayResult r = domain_.replay(plan, initial);
        // Distractors never touch plan objects, so the violation survives them.
        if (r.executable()) return std::nullopt;
        step = *r.first_violation;
        observed = scene_graph_to_propositions(filter_scene_graph(r.observations[step], plan, step));
        break;
      }
    }

    Candidate c;
    c.task = task.name;
    c.kind = pick(rng, 2) == 0 ? PairKind::Plan : PairKind::Observation;
    c.premise = c.kind == PairKind::Plan ? plan_prefix_to_propositions(plan_prefix(plan, step))
                                         : std::move(*observed);
    c.hypothesis = &task.explanations[pick(rng, task.explanations.size())];
    return c;
  }

 private:
  const std::vector<Plan>& perturbed_plans(const std::string& task, PlanPerturbation mode) const {
    auto key = std::make_pair(task, mode);
    auto it = plan_cache_.find(key);
    if (it == plan_cache_.end()) {
      it = plan_cache_.emplace(key, plan_perturbation_candidates(domain_.task(task).plan, domain_, mode))
               .first;
    }
    return it->second;
  }

  // Unrelated items placed on or next to objects already in the scene. They
  // never satisfy or break a precondition since plans only mention their
  // own objects.
  SceneGraph with_distractors(SceneGraph g, Rng& rng) const {
    std::vector<std::string> anchors;
    for (const auto& [name, node] : g.nodes()) {
      auto it = kinds_.find(name);
      if (it != kinds_.end() && it->second != "agent" && it->second != "substance") {
        anchors.push_back(name);
      }
    }
    std::vector<std::string> free;
    for (const auto& i : items_) {
      if (!g.has_node(i)) free.push_back(i);
    }
    std::size_t n = pick(rng, 4);
    for (std::size_t k = 0; k < n && !free.empty() && !anchors.empty(); ++k) {
      std::size_t at = pick(rng, free.size());
      std::string item = free[at];
      free.erase(free.begin() + static_cast<std::ptrdiff_t>(at));
      g.add_node(item);
      g.add_edge(pick(rng, 3) == 0 ? "next_to" : "on_top", item, anchors[pick(rng, anchors.size())]);
    }
    return g;
  }

  const DomainSpec& domain_;
  std::vector<std::string> tasks_;
  std::vector<std::string> relations_;
  std::vector<std::string> items_;
  std::map<std::string, std::string> kinds_;
  mutable std::map<std::pair<std::string, PlanPerturbation>, std::vector<Plan>> plan_cache_;
};

std::array<std::size_t, 3> label_quotas(std::size_t n) {
  std::array<std::size_t, 3> q{};
  for (std::size_t i = 0; i < 3; ++i) q[i] = n / 3 + (i < n % 3 ? 1 : 0);
  return q;
}

}  // namespace

std::vector<LabeledExample> generate_dataset(const DomainSpec& domain, const KnowledgeBase& kb,
                                             const Lexicon& lexicon,
                                             const GenerationConfig& config, std::uint64_t seed) {
  std::vector<std::string> tasks = config.tasks;
  if (tasks.empty()) tasks = domain.tasks_in(TaskGroup::Counterfactual);
  std::map<std::string, PropositionSet> hypotheses;
  for (const auto& name : tasks) {
    const TaskSpec& t = domain.task(name);
    if (t.explanations.empty()) throw ValidationError("task " + name + " has no explanation texts");
    for (const auto& text : t.explanations) {
      PropositionSet h = parse_explanation_text(text, lexicon);
      if (h.empty()) throw ValidationError("task " + name + ": text does not parse: " + text);
      hypotheses.emplace(text, std::move(h));
    }
  }
  std::vector<LabeledExample> out;
  if (config.total() == 0) return out;
  if (tasks.empty()) throw ValidationError("generate_dataset: no tasks selected");

  Sampler sampler(domain, tasks);
  Rng rng(seed);
  std::unordered_set<std::string> seen;
  std::array<std::size_t, 4> remaining = config.per_failure_type;
  std::array<std::size_t, 3> quotas = label_quotas(config.total());
  const std::size_t budget = config.total() * config.attempts_per_example + 1000;
  std::size_t cursor = 0;

  for (std::size_t attempt = 0; out.size() < config.total(); ++attempt) {
    if (attempt >= budget) {
      std::string missing;
      for (std::size_t t = 0; t < remaining.size(); ++t) {
        if (remaining[t] == 0) continue;
        missing += ' ' + std::string(to_string(kAllFailureTypes[t])) + '=' +
                   std::to_string(remaining[t]);
      }
      throw Error("generate_dataset: candidate space exhausted after " +
                  std::to_string(out.size()) + " of " + std::to_string(config.total()) +
                  " examples; still missing" + missing);
    }
    // Failure types take turns so that label quotas draw on all of them.
    while (remaining[cursor % remaining.size()] == 0) ++cursor;
    const std::size_t ti = cursor++ % remaining.size();
    const FailureType type = kAllFailureTypes[ti];
    // Past half the budget the label quotas give way so that narrow
    // domains still terminate.
    const bool strict = config.balance_labels && attempt < budget / 2;

    auto c = sampler.draw(type, rng);
    if (!c) continue;
    Label label = classify_pair(c->premise, hypotheses.at(*c->hypothesis), kb);
    const auto li = static_cast<std::size_t>(label);
    if (strict && quotas[li] == 0) continue;
    std::string premise_text = serialize_premise(c->premise);
    if (!seen.insert(premise_text + '\x1f' + *c->hypothesis).second) continue;

    LabeledExample ex;
    char id[32];
    std::snprintf(id, sizeof id, "-%06zu", out.size() + 1);
    ex.id = config.id_prefix + id;
    ex.task = c->task;
    ex.failure_type = type;
    ex.pair_kind = c->kind;
    ex.premise_text = std::move(premise_text);
    ex.hypothesis_text = *c->hypothesis;
    ex.label = label;
    ex.provenance = ExampleSource::Counterfactual;
    out.push_back(std::move(ex));
    if (quotas[li] > 0) --quotas[li];
    --remaining[ti];
  }
  return out;
}

}  // namespace cohere
