#include <gtest/gtest.h>

#include "cohere/domain.h"
#include "cohere/error.h"
#include "cohere/json_io.h"
#include "cohere/world.h"
#include "generators.h"
#include "oracle.h"

using namespace cohere;

namespace {

Action act(std::string name, std::vector<std::string> args) {
  Action a;
  a.name = std::move(name);
  a.args = std::move(args);
  return a;
}

Plan plan_of(std::vector<Action> steps) {
  Plan p;
  p.task = "t";
  p.steps = std::move(steps);
  return p;
}

SceneGraph fig1() {
  SceneGraph g;
  g.add_node("remote_control");
  g.add_node("book");
  g.add_node("table");
  g.add_edge("on_top", "remote_control", "table");
  g.add_edge("on_top", "book", "remote_control");
  return g;
}

std::set<std::string> names(const SceneGraph& g) {
  std::set<std::string> out;
  for (const auto& [n, node] : g.nodes()) out.insert(n);
  return out;
}

}  // namespace

TEST(SceneGraph, RejectsBadStructure) {
  SceneGraph g;
  g.add_node("a");
  EXPECT_THROW(g.add_node("a"), ValidationError);
  EXPECT_THROW(g.add_node("Bad"), ValidationError);
  EXPECT_THROW(g.add_edge("on_top", "a", "missing"), ValidationError);
  g.add_node("b");
  g.add_edge("on_top", "a", "b");
  EXPECT_THROW(g.add_edge("on_top", "a", "b"), ValidationError);
}

TEST(Filter, KeepsArgumentsAndNeighbours) {
  SceneGraph g;
  for (auto n : {"apple", "counter", "knife", "fridge"}) g.add_node(n);
  g.add_edge("on_top", "apple", "counter");
  g.add_edge("on_top", "knife", "counter");
  SceneGraph f = filter_scene_graph(g, plan_of({act("pick_up", {"apple"})}), 0);
  EXPECT_EQ(names(f), (std::set<std::string>{"apple", "counter"}));
  EXPECT_EQ(f.edges(), (std::set<SpatialEdge>{{"on_top", "apple", "counter"}}));
}

TEST(Filter, IsolatedArgumentsAndMissingOnes) {
  SceneGraph g;
  g.add_node("lamp", {{"has_state", "off"}});
  g.add_node("table");
  SceneGraph f = filter_scene_graph(g, plan_of({act("turn_on", {"lamp", "ghost"})}), 0);
  EXPECT_EQ(names(f), (std::set<std::string>{"lamp"}));
  EXPECT_TRUE(f.edges().empty());
  EXPECT_EQ(f.node("lamp").states.size(), 1u);
}

TEST(Filter, Fig1KeepsEverything) {
  SceneGraph g = fig1();
  EXPECT_EQ(filter_scene_graph(g, plan_of({act("pick_up", {"remote_control"})}), 0), g);
}

TEST(Filter, StepOutOfRange) {
  EXPECT_THROW(filter_scene_graph(fig1(), plan_of({act("pick_up", {"book"})}), 1), ValidationError);
}

TEST(Filter, MatchesSetBuilderIdempotentAndSubgraph) {
  gen::Rng rng(3);
  std::vector<std::string> objs{"a", "b", "c", "d", "e", "f"};
  for (int i = 0; i < 300; ++i) {
    SceneGraph g = gen::graph(rng, objs, rng.below(10));
    Plan p = gen::plan(rng, {"a", "b", "c", "d", "e", "f", "zz"}, 1 + rng.below(4));
    std::size_t step = rng.below(p.size());
    SceneGraph f = filter_scene_graph(g, p, step);
    EXPECT_EQ(names(f), oracle::filter_vertices(g, p, step));
    EXPECT_EQ(filter_scene_graph(f, p, step), f);
    for (const auto& e : f.edges()) EXPECT_TRUE(g.has_edge(e));
    for (const auto& [n, node] : f.nodes()) EXPECT_EQ(node, g.node(n));
    for (const auto& e : g.edges()) {
      if (names(f).count(e.src) && names(f).count(e.dst)) EXPECT_TRUE(f.has_edge(e));
    }
  }
}

TEST(PlanPrefix, Examples) {
  Plan p = plan_of({act("fill", {"cup", "water"}), act("place", {"cup", "stove"}),
                    act("toggle_on", {"stove"}), act("wait", {}), act("serve", {"cup"})});
  EXPECT_EQ(plan_prefix(p, 4), p);
  EXPECT_EQ(plan_prefix(p, 0).size(), 1u);
  EXPECT_EQ(plan_prefix(p, 1).steps, (std::vector<Action>{p.steps[0], p.steps[1]}));
  EXPECT_THROW(plan_prefix(p, 5), ValidationError);
}

TEST(KeyFrames, Examples) {
  SceneGraph g1 = fig1(), g2 = fig1(), g3 = fig1();
  g2.remove_edge({"on_top", "book", "remote_control"});
  g3.add_state("book", {"has_state", "open"});
  EXPECT_EQ(key_frames({g1, g1, g1}), (std::vector<std::size_t>{0}));
  EXPECT_EQ(key_frames({g1, g1, g2, g2, g3}), (std::vector<std::size_t>{0, 2, 4}));
  EXPECT_EQ(key_frames({g1}), (std::vector<std::size_t>{0}));
}

TEST(KeyFrames, Property) {
  gen::Rng rng(8);
  for (int i = 0; i < 200; ++i) {
    std::vector<SceneGraph> obs;
    std::size_t n = 1 + rng.below(6);
    for (std::size_t k = 0; k < n; ++k) {
      if (k > 0 && rng.chance(0.5)) {
        obs.push_back(obs.back());
      } else {
        obs.push_back(gen::graph(rng, {"a", "b", "c"}, rng.below(3)));
      }
    }
    auto kf = key_frames(obs);
    ASSERT_FALSE(kf.empty());
    EXPECT_EQ(kf[0], 0u);
    for (std::size_t j = 1; j < kf.size(); ++j) EXPECT_LT(kf[j - 1], kf[j]);
    for (std::size_t k = 1; k < n; ++k) {
      bool listed = std::find(kf.begin(), kf.end(), k) != kf.end();
      EXPECT_EQ(listed, obs[k] != obs[k - 1]);
    }
  }
}

TEST(ToPropositions, Examples) {
  SceneGraph g;
  g.add_node("book");
  g.add_node("remote_control");
  g.add_edge("on_top", "book", "remote_control");
  EXPECT_EQ(scene_graph_to_propositions(g),
            PropositionSet::unordered({parse_proposition("on_top(book,remote_control)")}));
  SceneGraph tv;
  tv.add_node("television", {{"has_state", "off"}});
  EXPECT_EQ(scene_graph_to_propositions(tv),
            PropositionSet::unordered({parse_proposition("has_state(television,off)")}));
  EXPECT_TRUE(scene_graph_to_propositions(SceneGraph{}).empty());
  EXPECT_FALSE(scene_graph_to_propositions(g).ordered());
}

TEST(ToPropositions, PlanPrefixIsSequence) {
  Plan p = plan_of({act("fill", {"cup", "water"}), act("place", {"cup", "stove"})});
  auto s = plan_prefix_to_propositions(p);
  EXPECT_TRUE(s.ordered());
  EXPECT_EQ(s, PropositionSet::sequence({parse_proposition("@0:fill(cup,water)"),
                                         parse_proposition("@1:place(cup,stove)")}));
  Plan r = plan_of({p.steps[1], p.steps[0]});
  EXPECT_FALSE(plan_prefix_to_propositions(r) == s);
}

TEST(Episode, ValidatesAndRoundTrips) {
  Episode e;
  e.plan = plan_of({act("pick_up", {"remote_control", "table"})});
  e.observations = {fig1()};
  e.failure_step = 0;
  e.failure_type = FailureType::FailedExecution;
  EXPECT_NO_THROW(e.validate());
  Episode back = episode_from_json(to_json(e));
  EXPECT_EQ(back.plan, e.plan);
  EXPECT_EQ(back.observations, e.observations);
  EXPECT_EQ(back.failure_type, e.failure_type);

  e.failure_step = 1;
  EXPECT_THROW(e.validate(), ValidationError);
  EXPECT_THROW(failure_type_from_string("gremlins"), ValidationError);
}

TEST(Episode, ShippedFilesLoad) {
  Episode e = load_episode(std::string(COHERE_DATA_DIR) + "/episodes/remote_blocked.json");
  EXPECT_EQ(e.observations[0], fig1());
  EXPECT_THROW(load_episode("/nonexistent/episode.json"), IoError);
}

TEST(Domain, CanonicalPlansReplay) {
  auto d = DomainSpec::load(std::string(COHERE_DATA_DIR) + "/domain.json");
  EXPECT_EQ(d.tasks().size(), 10u);
  EXPECT_EQ(d.tasks_in(TaskGroup::Counterfactual).size(), 4u);
  EXPECT_EQ(d.tasks_in(TaskGroup::Heldout),
            (std::vector<std::string>{"make_salad", "store_egg", "warm_water"}));
  for (const auto& [name, t] : d.tasks()) {
    auto r = d.replay(t.plan, d.initial_graph(name));
    EXPECT_TRUE(r.executable()) << name;
    EXPECT_EQ(r.observations.size(), t.plan.size());
    for (const auto& step : t.plan.steps) EXPECT_NO_THROW(d.schema(step.name));
  }
}

TEST(Domain, ReplayStopsChangingSceneAtFailedStep) {
  auto d = DomainSpec::load(std::string(COHERE_DATA_DIR) + "/domain.json");
  const auto& t = d.task("boil_water");
  Plan p = t.plan;
  p.steps.erase(p.steps.begin());  // no pick_up: fill cannot happen
  auto r = d.replay(p, d.initial_graph("boil_water"));
  ASSERT_FALSE(r.executable());
  EXPECT_EQ(*r.first_violation, 0u);
  EXPECT_EQ(serialize_proposition(*r.violated_precondition), "holding(robot,pot)");
  EXPECT_EQ(r.observations[0], d.initial_graph("boil_water"));
}
