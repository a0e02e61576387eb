#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <array>

#include "signet/agents.hpp"
#include "signet/balance.hpp"

using namespace signet;

namespace {

UpdateContext make_ctx(Sign reference, std::vector<PeerView> peers,
                       InteractionKind kind = InteractionKind::Appraisal) {
    return {kind, UpdateMechanism::Homophily, 0, 1, reference, std::move(peers)};
}

}  // namespace

TEST_CASE("constant agent") {
    ConstantAgent pos(Sign::Positive), neg(Sign::Negative);
    auto ctx = make_ctx(Sign::Negative, {{2, Sign::Negative, Sign::Negative}});
    CHECK(pos.decide(ctx, 1).parsed == ParsedAnswer::Positive);
    CHECK(neg.decide(ctx, 5).parsed == ParsedAnswer::Negative);
    CHECK(pos.label() == "constant:+");
    CHECK(neg.label() == "constant:-");
}

TEST_CASE("echo agent repeats the reference") {
    EchoAgent echo;
    CHECK(echo.decide(make_ctx(Sign::Positive, {{2, Sign::Negative, Sign::Negative}}), 1).parsed ==
          ParsedAnswer::Positive);
    CHECK(echo.decide(make_ctx(Sign::Neutral, {{2, Sign::Negative, Sign::Negative}}), 1).parsed ==
          ParsedAnswer::Neutral);
}

TEST_CASE("rule agent follows the peer product sum") {
    RuleAgent rule;

    CHECK(rule.decide(make_ctx(Sign::Negative, {{2, Sign::Positive, Sign::Positive}}), 1).parsed ==
          ParsedAnswer::Positive);

    // Tie: the lone peer contributes zero, so the reference decides.
    CHECK(rule.decide(make_ctx(Sign::Negative, {{2, Sign::Positive, Sign::Neutral}}), 1).parsed ==
          ParsedAnswer::Negative);

    // Products +1, +1, -1, -1 cancel; reference +1 wins.
    auto tied = make_ctx(Sign::Positive, {{2, Sign::Positive, Sign::Positive},
                                          {3, Sign::Negative, Sign::Negative},
                                          {4, Sign::Positive, Sign::Negative},
                                          {5, Sign::Negative, Sign::Positive}});
    CHECK(rule.decide(tied, 1).parsed == ParsedAnswer::Positive);

    auto twoneg = make_ctx(Sign::Positive, {{2, Sign::Positive, Sign::Negative},
                                            {3, Sign::Negative, Sign::Positive},
                                            {4, Sign::Positive, Sign::Positive}});
    CHECK(rule.decide(twoneg, 1).parsed == ParsedAnswer::Negative);
}

TEST_CASE("deterministic backends are pure") {
    RuleAgent rule;
    EchoAgent echo;
    ConstantAgent constant(Sign::Negative);
    auto ctx = make_ctx(Sign::Positive, {{2, Sign::Negative, Sign::Positive}});
    for (AgentBackend* agent : std::initializer_list<AgentBackend*>{&rule, &echo, &constant}) {
        auto first = agent->decide(ctx, 3);
        for (int rep = 0; rep < 5; ++rep) {
            auto again = agent->decide(ctx, 3);
            CHECK(again.parsed == first.parsed);
            CHECK(again.justification == first.justification);
        }
    }
}

TEST_CASE("justifications of deterministic backends re-parse to the same answer") {
    RuleAgent rule;
    EchoAgent echo;
    ConstantAgent constant(Sign::Positive);
    const std::array<Sign, 3> signs = {Sign::Negative, Sign::Neutral, Sign::Positive};
    for (AgentBackend* agent : std::initializer_list<AgentBackend*>{&rule, &echo, &constant})
        for (Sign ref : signs)
            for (Sign fl : signs)
                for (Sign tl : signs) {
                    auto ctx = make_ctx(ref, {{2, fl, tl}});
                    auto d = agent->decide(ctx, 1);
                    CHECK(extract_sign(d.justification, ctx.kind, PromptDialect::LlamaStyle) ==
                          d.parsed);
                }
}

TEST_CASE("rule agent is equivariant under agent relabeling") {
    // Swap labels 0<->3 and 1<->2 on a population of five.
    const std::array<int, 5> perm = {3, 2, 1, 0, 4};
    auto base = InteractionMatrix::build(5, [](int i, int j) {
        return (3 * i + 5 * j) % 7 % 2 == 0 ? Sign::Positive : Sign::Negative;
    });
    auto permuted = InteractionMatrix::build(5, [&](int i, int j) {
        // Entry (i,j) of the permuted matrix is entry (perm^-1 i, perm^-1 j)
        // of the base; this permutation is an involution so perm works both
        // ways.
        return base.at(perm[i], perm[j]);
    });

    RuleAgent rule;
    for (auto mech : {UpdateMechanism::Homophily, UpdateMechanism::Influence})
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                if (i == j) continue;
                auto original = rule.decide(
                    build_context(base, i, j, InteractionKind::Opinion, mech), 1);
                auto relabeled = rule.decide(
                    build_context(permuted, perm[i], perm[j], InteractionKind::Opinion, mech), 1);
                CHECK(original.parsed == relabeled.parsed);
            }
}

TEST_CASE("scripted agent replays keyed lines") {
    ScriptedAgent agent({{{1, 0, 1}, "My new appraisal of Individual 1 will be negative."},
                         {{2, 0, 1}, "Positive. They proved me wrong."}},
                        PromptDialect::LlamaStyle);
    auto ctx = make_ctx(Sign::Positive, {{2, Sign::Positive, Sign::Positive}});
    CHECK(agent.decide(ctx, 1).parsed == ParsedAnswer::Negative);
    CHECK(agent.decide(ctx, 2).parsed == ParsedAnswer::Positive);
    CHECK_THROWS_AS(agent.decide(ctx, 3), std::out_of_range);
}
