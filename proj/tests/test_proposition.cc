#include <gtest/gtest.h>

#include "cohere/error.h"
#include "cohere/proposition.h"
#include "generators.h"

using namespace cohere;

TEST(Proposition, ParsesDocumentedExamples) {
  Proposition p = parse_proposition("on_top(remote_control, table)");
  EXPECT_TRUE(p.polarity);
  EXPECT_EQ(p.predicate, "on_top");
  ASSERT_EQ(p.args.size(), 2u);
  EXPECT_EQ(p.args[0].text(), "remote_control");
  EXPECT_EQ(p.args[1].text(), "table");
  EXPECT_FALSE(p.ordinal);

  Proposition n = parse_proposition("!locate(remote_control)");
  EXPECT_FALSE(n.polarity);
  EXPECT_EQ(n.predicate, "locate");

  Proposition o = parse_proposition("@3: pick_up(cup)");
  EXPECT_EQ(o.ordinal_value(), 3u);
  EXPECT_EQ(o.args[0].text(), "cup");
}

TEST(Proposition, WhitespaceInsensitive) {
  EXPECT_EQ(parse_proposition("  @ 2 : ! has_state ( tv , off ) "),
            parse_proposition("@2:!has_state(tv,off)"));
  EXPECT_EQ(parse_proposition("empty()").args.size(), 0u);
}

TEST(Proposition, Serializes) {
  EXPECT_EQ(serialize_proposition(Proposition::fact("locate", {"remote_control"}, {}, false)),
            "!locate(remote_control)");
  EXPECT_EQ(serialize_proposition(Proposition::fact("has_state", {"television", "off"})),
            "has_state(television,off)");
  EXPECT_EQ(serialize_proposition(Proposition::fact("move", {"robot", "kitchen"}, 0)),
            "@0:move(robot,kitchen)");
}

TEST(Proposition, IntegerArgumentsAreCanonical) {
  Proposition p = parse_proposition("at(x,007)");
  EXPECT_EQ(p.args[1].kind(), Term::Kind::Int);
  EXPECT_EQ(serialize_proposition(p), "at(x,7)");
  EXPECT_EQ(parse_proposition("@08:a()").ordinal_value(), 8u);
}

TEST(Proposition, ErrorsCarryOffsets) {
  try {
    parse_proposition("on_top(a,");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 9u);
    EXPECT_FALSE(e.expected().empty());
  }
  EXPECT_THROW(parse_proposition("On_top(a)"), ParseError);
  EXPECT_THROW(parse_proposition("on_top(a) extra"), ParseError);
  EXPECT_THROW(parse_proposition("@x:on_top(a)"), ParseError);
  EXPECT_THROW(parse_proposition("!!on_top(a)"), ParseError);
  EXPECT_THROW(parse_proposition(""), ParseError);
  EXPECT_THROW(parse_proposition("on_top(a b)"), ParseError);
}

TEST(Proposition, VariablesOnlyWhenAllowed) {
  EXPECT_THROW(parse_proposition("on_top(X,table)"), ParseError);
  Proposition p = parse_proposition("@T:on_top(X,table)", VariablePolicy::Allow);
  EXPECT_TRUE(p.args[0].is_variable());
  EXPECT_TRUE(p.ordinal->is_variable());
  EXPECT_FALSE(p.is_grounded());
}

TEST(Proposition, RoundTripProperty) {
  gen::Rng rng(11);
  gen::Vocab v;
  v.constants = {"a", "b_2", "remote_control", "0", "17"};
  for (int i = 0; i < 2000; ++i) {
    Proposition p = gen::fact(rng, v, 0.5, 0.5);
    std::string s = serialize_proposition(p);
    EXPECT_EQ(parse_proposition(s), p) << s;
    EXPECT_EQ(s.find(' '), std::string::npos);
  }
}

TEST(PropositionSet, UnorderedEqualityIgnoresOrder) {
  gen::Rng rng(5);
  for (int i = 0; i < 200; ++i) {
    auto s = gen::facts(rng, 1 + rng.below(8));
    std::vector<Proposition> v(s.begin(), s.end());
    std::shuffle(v.begin(), v.end(), rng.engine);
    EXPECT_EQ(PropositionSet::unordered(v), s);
  }
  auto a = PropositionSet::unordered({parse_proposition("p(a)"), parse_proposition("p(a)")});
  auto b = PropositionSet::unordered({parse_proposition("p(a)")});
  EXPECT_FALSE(a == b);  // multiset, not set
}

TEST(PropositionSet, SequenceNeedsIncreasingOrdinals) {
  EXPECT_NO_THROW(PropositionSet::sequence({parse_proposition("@0:a()"), parse_proposition("@2:b()")}));
  EXPECT_THROW(PropositionSet::sequence({parse_proposition("@1:a()"), parse_proposition("@1:b()")}),
               ValidationError);
  EXPECT_THROW(PropositionSet::sequence({parse_proposition("a()")}), ValidationError);
  auto seq = PropositionSet::sequence({parse_proposition("@0:a()")});
  auto set = PropositionSet::unordered({parse_proposition("@0:a()")});
  EXPECT_FALSE(seq == set);
}
