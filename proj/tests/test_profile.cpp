#include "helpers.hpp"

#include <catch2/catch_amalgamated.hpp>

using namespace phragmen;

TEST_CASE("parses a grouped profile") {
    auto profile = parse_profile("candidates: a b c\n2: a\n1: b\n1: c\n");
    CHECK(profile.candidateCount() == 3);
    CHECK(profile.voterCount() == 4);
    CHECK(profile.groupedBallots().size() == 3);
    CHECK(profile.supporters(profile.candidateIndex("a")).count() == 2);
    CHECK(profile.ballot(0) == profile.ballot(1)); // multiplicity expanded
}

TEST_CASE("parses the minimal instance") {
    auto profile = parse_profile("candidates: a\n1: a\n");
    CHECK(profile.candidateCount() == 1);
    CHECK(profile.voterCount() == 1);
}

TEST_CASE("comments and blank lines are ignored") {
    auto profile = parse_profile("# header comment\ncandidates: a b\n\n1: a b # trailing\n");
    CHECK(profile.voterCount() == 1);
    CHECK(profile.ballot(0).count() == 2);
}

TEST_CASE("rejects a candidate nobody approves") {
    try {
        parse_profile("candidates: a b\n1: b\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("no approvers") != std::string::npos);
    }
}

TEST_CASE("rejects unknown candidates with position info") {
    try {
        parse_profile("candidates: a b\n1: a x\n");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.line == 2);
        CHECK(std::string(e.what()).find("unknown candidate 'x'") != std::string::npos);
    }
}

TEST_CASE("rejects empty ballots, bad multiplicities and missing header") {
    CHECK_THROWS_AS(parse_profile("candidates: a\n1:\n"), ParseError);
    CHECK_THROWS_AS(parse_profile("candidates: a\n0: a\n"), ParseError);
    CHECK_THROWS_AS(parse_profile("candidates: a\n-2: a\n"), ParseError);
    CHECK_THROWS_AS(parse_profile("1: a\n"), ParseError);
    CHECK_THROWS_AS(parse_profile("candidates: a a\n1: a\n"), ParseError);
    CHECK_THROWS_AS(parse_profile(""), ParseError);
}

TEST_CASE("stats count the largest ballot and supporter set") {
    auto profile = parse_profile(corpus::kProfile2);
    auto [s, d] = profile_stats(profile);
    CHECK(s == 3); // one voter approves a, b and c
    CHECK(d == 3); // b has three approvers
}

TEST_CASE("stats on a single-approval instance") {
    auto profile = parse_profile("candidates: a\n1: a\n");
    auto [s, d] = profile_stats(profile);
    CHECK(s == 1);
    CHECK(d == 1);
}

TEST_CASE("stats on an edge-voter instance built from a 3-regular graph") {
    // voters are the six edges of K4, candidates its four vertices
    auto profile = parse_profile(
        "candidates: v1 v2 v3 v4\n"
        "1: v1 v2\n1: v1 v3\n1: v1 v4\n1: v2 v3\n1: v2 v4\n1: v3 v4\n");
    auto [s, d] = profile_stats(profile);
    CHECK(s == 2);
    CHECK(d == 3);
}

TEST_CASE("results are invariant under ballot grouping") {
    auto grouped = parse_profile("candidates: a b c d\n2: a b\n3: c d\n1: a\n");
    auto expanded = parse_profile(
        "candidates: a b c d\n1: a b\n1: a b\n1: c d\n1: c d\n1: c d\n1: a\n");
    REQUIRE(grouped.voterCount() == expanded.voterCount());
    auto seqA = seq_phragmen(grouped, 2);
    auto seqB = seq_phragmen(expanded, 2);
    CHECK(seqA.committees == seqB.committees);
    auto lexA = leximax_phragmen(grouped, 2);
    auto lexB = leximax_phragmen(expanded, 2);
    CHECK(lexA.committees == lexB.committees);
    CHECK(lexA.certificates[0].loads == lexB.certificates[0].loads);
}

TEST_CASE("committee parsing and canonical order") {
    auto profile = parse_profile(corpus::kProfile2);
    auto committee = parse_committee(profile, "c,a");
    CHECK(committee.members == std::vector<int>{profile.candidateIndex("a"),
                                                profile.candidateIndex("c")});
    CHECK(committee_names(profile, committee) == "{a,c}");
    CHECK_THROWS_AS(parse_committee(profile, "a,zz"), std::invalid_argument);
    // {a,d} precedes {b,c}: first-member order decides
    CHECK(parse_committee(profile, "a,d") < parse_committee(profile, "b,c"));
}
