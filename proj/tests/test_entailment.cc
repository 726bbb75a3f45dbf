#include <gtest/gtest.h>

#include "cohere/entailment.h"
#include "cohere/error.h"

using namespace cohere;

namespace {

Proposition P(const char* s) { return parse_proposition(s); }
Proposition L(const char* s) { return parse_proposition(s, VariablePolicy::Allow); }
PropositionSet S(std::initializer_list<const char*> xs) {
  std::vector<Proposition> v;
  for (auto x : xs) v.push_back(P(x));
  return PropositionSet::unordered(v);
}

KnowledgeBase starter() { return load_kb(std::string(COHERE_DATA_DIR) + "/starter.kb"); }

}  // namespace

TEST(Unify, Examples) {
  auto b = unify(L("on_top(X,Y)"), P("on_top(book,remote_control)"));
  ASSERT_TRUE(b);
  EXPECT_EQ(b->at("X").text(), "book");
  EXPECT_EQ(b->at("Y").text(), "remote_control");
  EXPECT_FALSE(unify(L("on_top(X,X)"), P("on_top(book,remote_control)")));
  auto o = unify(L("@T:pick_up(O)"), P("@3:pick_up(cup)"));
  ASSERT_TRUE(o);
  EXPECT_EQ(o->at("T").value(), 3u);
  EXPECT_EQ(o->at("O").text(), "cup");
}

TEST(Unify, PolarityArityOrdinalAndPriorBindings) {
  EXPECT_FALSE(unify(L("locate(X)"), P("!locate(a)")));
  EXPECT_FALSE(unify(L("q(X)"), P("q(a,b)")));
  EXPECT_FALSE(unify(L("pick_up(X)"), P("@1:pick_up(a)")));
  EXPECT_FALSE(unify(L("@T:pick_up(X)"), P("pick_up(a)")));
  Bindings prior{{"X", Term::ident("b")}};
  EXPECT_FALSE(unify(L("p(X)"), P("p(a)"), prior));
  EXPECT_TRUE(unify(L("p(X)"), P("p(b)"), prior));
}

TEST(Derive, SingleStepAndChaining) {
  auto kb = parse_kb("on_top(X,Y) -> is_blocking(X,Y)\n");
  auto d = derive(S({"on_top(book,remote_control)"}), kb);
  EXPECT_TRUE(d.contains(P("is_blocking(book,remote_control)")));
  EXPECT_TRUE(derive(PropositionSet{}, kb).empty());

  auto chain = parse_kb("a(X) -> b(X)\nb(X) -> c(X)\n", "<kb>", 2);
  EXPECT_EQ(derive(S({"a(k)"}), chain), S({"a(k)", "b(k)", "c(k)"}));
  chain.max_depth = 1;
  EXPECT_EQ(derive(S({"a(k)"}), chain), S({"a(k)", "b(k)"}));
}

TEST(Derive, GuardsAndConjunctions) {
  auto kb = parse_kb("@T:a(X) & @U:b(X) -> before(a,b) | T < U\n");
  auto seq = PropositionSet::sequence({P("@0:a(k)"), P("@2:b(k)")});
  EXPECT_TRUE(derive(seq, kb).contains(P("before(a,b)")));
  auto rev = PropositionSet::sequence({P("@0:b(k)"), P("@2:a(k)")});
  EXPECT_FALSE(derive(rev, kb).contains(P("before(a,b)")));
  auto other = PropositionSet::sequence({P("@0:a(k)"), P("@2:b(j)")});
  EXPECT_FALSE(derive(other, kb).contains(P("before(a,b)")));
}

TEST(Derive, FactCap) {
  auto kb = parse_kb("n(X) -> q(X,X)\nq(X,Y) -> q(Y,X)\n", "<kb>", 50);
  kb.fact_cap = 3;
  EXPECT_THROW(derive(S({"n(a)", "n(b)", "n(c)"}), kb), DerivationLimitError);
}

TEST(ClassifyPair, WorkedExamples) {
  auto kb = starter();
  auto obs = S({"on_top(remote_control,table)", "on_top(book,remote_control)"});
  EXPECT_EQ(classify_pair(obs, S({"is_blocking(book,remote_control)"}), kb), Label::Entails);
  EXPECT_EQ(classify_pair(obs, S({"!locate(remote_control)"}), kb), Label::Contradicts);
  auto tv = S({"on_top(television,tv_stand)", "has_state(television,off)"});
  EXPECT_EQ(classify_pair(tv, S({"!locate(remote_control)"}), kb), Label::NotEntails);
}

TEST(ClassifyPair, SingleRulesInIsolation) {
  auto blocking = parse_kb("on_top(X,Y) -> is_blocking(X,Y)\n");
  auto locate = parse_kb("on_top(X,Y) >< !locate(X)\n");
  auto obs = S({"on_top(remote_control,table)", "on_top(book,remote_control)"});
  EXPECT_EQ(classify_pair(obs, S({"is_blocking(book,remote_control)"}), blocking), Label::Entails);
  auto v = classify_pair_explained(obs, S({"!locate(remote_control)"}), locate);
  EXPECT_EQ(v.label, Label::Contradicts);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->kind, WitnessKind::ContradictionRule);
  EXPECT_EQ(v.witness->premise, P("on_top(remote_control,table)"));
}

TEST(ClassifyPair, IdentityAndClashWithoutRules) {
  KnowledgeBase empty;
  for (const char* s : {"p(a)", "@2:move(robot,kitchen)", "q(a,7)"}) {
    EXPECT_EQ(classify_pair(S({s}), S({s}), empty), Label::Entails);
    EXPECT_EQ(classify_pair(S({s}), PropositionSet::unordered({P(s).negated()}), empty),
              Label::Contradicts);
  }
}

TEST(ClassifyPair, ContradictionDominates) {
  auto kb = parse_kb("p(X) -> q(X)\n");
  EXPECT_EQ(classify_pair(S({"p(a)", "!r(a)"}), S({"q(a)", "r(a)"}), kb), Label::Contradicts);
}

TEST(ClassifyPair, RejectsEmptyOrLiftedHypothesis) {
  KnowledgeBase kb;
  EXPECT_THROW(classify_pair(S({"p(a)"}), PropositionSet{}, kb), ValidationError);
  EXPECT_THROW(classify_pair(S({"p(a)"}), PropositionSet::unordered({L("p(X)")}), kb),
               ValidationError);
}

TEST(Multimodal, CombinationTable) {
  const Label all[] = {Label::NotEntails, Label::Entails, Label::Contradicts};
  for (Label a : all) {
    for (Label b : all) {
      Label want = (a == Label::Contradicts || b == Label::Contradicts) ? Label::Contradicts
                   : (a == Label::Entails || b == Label::Entails)       ? Label::Entails
                                                                        : Label::NotEntails;
      EXPECT_EQ(combine(a, b), want);
    }
  }
  KnowledgeBase kb;
  auto l = classify_multimodal(S({"p(a)"}), S({"!q(a)"}), S({"p(a)", "q(a)"}), kb);
  EXPECT_EQ(l, (MultimodalLabels{Label::Entails, Label::Contradicts, Label::Contradicts}));
  l = classify_multimodal(S({"x(a)"}), S({"q(a)"}), S({"q(a)"}), kb);
  EXPECT_EQ(l.combined, Label::Entails);
}

TEST(ClassifySet, Examples) {
  KnowledgeBase kb;
  auto two = classify_set({S({"p(a)"}), S({"p(a)", "q(b)"})}, kb);
  EXPECT_EQ(two[1], classify_pair(S({"p(a)"}), S({"p(a)", "q(b)"}), kb));
  EXPECT_EQ(two[0], classify_pair(S({"p(a)", "q(b)"}), S({"p(a)"}), kb));

  auto three = classify_set({S({"p(a)"}), S({"r(c)"}), S({"!p(a)"})}, kb);
  EXPECT_EQ(three[2], Label::Contradicts);

  auto four = classify_set({S({"a(x)"}), S({"b(x)"}), S({"c(x)"}), S({"d(x)"})}, kb);
  EXPECT_EQ(four, std::vector<Label>(4, Label::NotEntails));
  EXPECT_THROW(classify_set({S({"a(x)"})}, kb), ValidationError);
}

TEST(LoadKb, GrammarAndSymmetricClosure) {
  auto one = parse_kb("on_top(X,Y) -> is_blocking(X,Y)\n");
  EXPECT_EQ(one.rules.size(), 1u);
  EXPECT_EQ(one.rules[0].kind, RuleKind::Entails);
  auto two = parse_kb("# comment\n\non_top(X,Y) >< !locate(X)   # trailing\n");
  ASSERT_EQ(two.rules.size(), 2u);
  EXPECT_EQ(two.rules[1].premises[0], L("!locate(X)"));
  EXPECT_EQ(two.rules[1].conclusion, L("on_top(X,Y)"));
  EXPECT_NE(two.rules[0].id, two.rules[1].id);
  auto g = parse_kb("@T:a(X) & @U:b(X) -> c(X) | T < U, T <= U, U = U\n");
  EXPECT_EQ(g.rules[0].guards.size(), 3u);
  EXPECT_EQ(g.rules[0].guards[1].op, GuardOp::LessEqual);
}

TEST(LoadKb, ErrorsNameTheLine) {
  try {
    parse_kb("p(X) -> q(X)\n\na(X) -> b(Y)\n", "rules.kb");
    FAIL();
  } catch (const LineError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_EQ(e.file(), "rules.kb");
  }
  for (const char* bad : {"p(X) q(X)", "p(X) -> ", "p(X) & q(X) >< r(X)", "p(X) -> q(X) | X < ",
                          "p(X) -> q(X) | T < U", "p(X) -> q(X) extra", "P(x) -> q(x)"}) {
    EXPECT_THROW(parse_kb(bad), LineError) << bad;
  }
  EXPECT_THROW(load_kb("/no/such/file.kb"), IoError);
}

TEST(LoadKb, StarterRoundTripsThroughToString) {
  auto kb = starter();
  std::string text;
  for (const auto& r : kb.rules) {
    if (r.id.back() != '~') text += r.to_string() + "\n";
  }
  auto again = parse_kb(text);
  ASSERT_EQ(again.rules.size(), kb.rules.size());
  for (std::size_t i = 0; i < kb.rules.size(); ++i) {
    EXPECT_EQ(again.rules[i].premises, kb.rules[i].premises);
    EXPECT_EQ(again.rules[i].conclusion, kb.rules[i].conclusion);
    EXPECT_EQ(again.rules[i].guards, kb.rules[i].guards);
  }
}
