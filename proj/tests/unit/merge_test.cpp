#include <doctest.h>

#include <random>

#include "wii/answers.hpp"
#include "wii/merge.hpp"

using namespace wii;

namespace {

const std::string kSite = "http://www.example.gov.lk/";

const char* kHeader =
    "# assessor sheet\n"
    "site http://www.example.gov.lk/\n"
    "assessor inspector-07\n"
    "date 2015-04-02\n";

std::vector<CheckResult> automated(std::initializer_list<CriterionId> positive, bool c7_1_advisory_value = false) {
    std::vector<CheckResult> out;
    for (auto id : {CriterionId::C2, CriterionId::C6_1, CriterionId::C6_2, CriterionId::C6_3, CriterionId::C6_4}) {
        bool v = std::find(positive.begin(), positive.end(), id) != positive.end();
        out.push_back({id, v, {}, false});
    }
    out.push_back({CriterionId::C7_1, c7_1_advisory_value, {}, true});
    out.push_back({CriterionId::C7_2, false, {}, true});
    return out;
}

AnswerFileInvalid parse_error(const std::string& text) {
    try {
        parse_answers(text);
    } catch (const AnswerFileInvalid& e) {
        return e;
    }
    FAIL("expected AnswerFileInvalid");
    throw std::logic_error("unreachable");
}

}  // namespace

TEST_CASE("parse_answers") {
    SUBCASE("single eService answer") {
        auto f = parse_answers(std::string(kHeader) +
                               "answer C5 1 \"online revenue license renewal walkthrough\"\n");
        CHECK(f.site_url == kSite);
        CHECK(f.assessor == "inspector-07");
        CHECK(f.assessed_on == "2015-04-02");
        REQUIRE(f.answers.size() == 1);
        CHECK(f.answers[0].criterion == CriterionId::C5);
        CHECK(f.answers[0].value == 1);
        CHECK(f.answers[0].evidence == "online revenue license renewal walkthrough");
    }
    SUBCASE("non-binary value") {
        auto e = parse_error(std::string(kHeader) + "answer C1 2 \"x\"\n");
        CHECK(e.reason() == "value must be 0 or 1");
        CHECK(e.line() == 5);
        CHECK(e.field() == "value");
    }
    SUBCASE("duplicate criterion") {
        auto e = parse_error(std::string(kHeader) + "answer C3_1 1 \"a\"\n\nanswer C3_1 0 \"b\"\n");
        CHECK(e.reason() == "duplicate criterion");
        CHECK(e.line() == 7);
        CHECK(e.field() == "criterion");
    }
    SUBCASE("unknown criterion") {
        CHECK(parse_error(std::string(kHeader) + "answer C8 1 \"x\"\n").field() == "criterion");
    }
    SUBCASE("parent criterion") {
        CHECK(parse_error(std::string(kHeader) + "answer C6 1 \"x\"\n").field() == "criterion");
    }
    SUBCASE("unquoted evidence") {
        CHECK(parse_error(std::string(kHeader) + "answer C1 1 fine\n").field() == "evidence");
    }
    SUBCASE("unterminated evidence") {
        CHECK(parse_error(std::string(kHeader) + "answer C1 1 \"fine\n").reason() == "unterminated evidence string");
    }
    SUBCASE("trailing text") {
        CHECK(parse_error(std::string(kHeader) + "answer C1 1 \"a\" b\n").reason() == "text after evidence string");
    }
    SUBCASE("escapes") {
        auto f = parse_answers(std::string(kHeader) + "answer C4 1 \"said \\\"hi\\\" \\\\ bye\"\n");
        CHECK(f.answers[0].evidence == "said \"hi\" \\ bye");
    }
    SUBCASE("header rules") {
        CHECK(parse_error("assessor a\ndate 2015-01-01\n").field() == "site");
        CHECK(parse_error("site ftp://x/\nassessor a\ndate 2015-01-01\n").field() == "site");
        CHECK(parse_error("site http://x/\nassessor a b\ndate 2015-01-01\n").field() == "assessor");
        CHECK(parse_error("site http://x/\nassessor a\ndate 2015-02-29\n").field() == "date");
        CHECK_NOTHROW(parse_answers("site http://x/\nassessor a\ndate 2016-02-29\n"));
        CHECK(parse_error("site http://x/\nsite http://y/\n").reason() == "duplicate site");
        CHECK(parse_error("site http://x/\nassessor a\nanswer C1 1 \"\"\n").field() == "answer");
        CHECK(parse_error(std::string(kHeader) + "answer C1 1 \"\"\nassessor b\n").field() == "assessor");
        CHECK(parse_error(std::string(kHeader) + "verdict C1 1\n").field() == "statement");
    }
    SUBCASE("invalid UTF-8") {
        CHECK(parse_error(std::string(kHeader) + "answer C1 1 \"\xff\"\n").line() == 5);
    }
    SUBCASE("CRLF and blank lines") {
        auto f = parse_answers("site http://x/\r\n\r\nassessor a\r\ndate 2015-01-01\r\nanswer C1 0 \"\"\r\n");
        CHECK(f.answers.size() == 1);
    }
    SUBCASE("format round trip") {
        auto f = parse_answers(std::string(kHeader) + "answer C1 1 \"a \\\"b\\\"\"\nanswer C7_2 0 \"\"\n");
        CHECK(format_answers(parse_answers(format_answers(f))) == format_answers(f));
        CHECK(parse_answers(format_answers(f)).answers[0].evidence == "a \"b\"");
    }
}

TEST_CASE("merge") {
    auto weights = WeightTable::default_table();
    SiteIdentity site{kSite, {}};

    SUBCASE("automated C2 only, no answers") {
        auto a = merge(site, automated({CriterionId::C2}), ManualAnswerFile{}, MergePolicy{}, weights);
        CHECK(a.vector.value(CriterionId::C2));
        for (auto id : kManualOnlyCriteria) {
            CHECK_FALSE(a.vector.value(id));
            CHECK(a.provenance_of(id) == Provenance::DefaultZero);
        }
        CHECK(a.warnings.size() == 5);
        CHECK(a.wii_class == WiiClass::WIReady);
        CHECK(a.wii.str() == "0.15");
        CHECK(a.provenance_of(CriterionId::C2) == Provenance::Automated);
    }
    SUBCASE("manual C3_1 lifts the class") {
        auto manual = parse_answers(std::string(kHeader) + "answer C3_1 1 \"citizen portal\"\n");
        auto a = merge(site, automated({CriterionId::C2}), manual, MergePolicy{}, weights);
        CHECK(a.wii_class == WiiClass::WIAcquired);
        CHECK(a.wii.str() == "1.65");
        CHECK(a.vector.value(CriterionId::C3));
        CHECK(a.provenance_of(CriterionId::C3_1) == Provenance::Manual);
        CHECK(a.warnings.size() == 4);
    }
    SUBCASE("advisory C7_1 rejected by default") {
        auto a = merge(site, automated({}, true), ManualAnswerFile{}, MergePolicy{}, weights);
        CHECK_FALSE(a.vector.value(CriterionId::C7_1));
        CHECK(a.provenance_of(CriterionId::C7_1) == Provenance::DefaultZero);
        CHECK(std::count_if(a.warnings.begin(), a.warnings.end(),
                            [](const std::string& w) { return w.rfind("C7_1:", 0) == 0; }) == 1);
        CHECK(a.wii_class == WiiClass::NoWI);
    }
    SUBCASE("advisory C7_1 accepted by policy") {
        auto a = merge(site, automated({}, true), ManualAnswerFile{}, MergePolicy{true}, weights);
        CHECK(a.vector.value(CriterionId::C7_1));
        CHECK(a.vector.value(CriterionId::C7));
        CHECK(a.provenance_of(CriterionId::C7_1) == Provenance::HeuristicAdvisory);
        CHECK(a.provenance_of(CriterionId::C7_2) == Provenance::HeuristicAdvisory);
        CHECK(a.wii.str() == "0.15");
    }
    SUBCASE("advisory C7_1 confirmed manually") {
        auto manual = parse_answers(std::string(kHeader) + "answer C7_1 1 \"MySQL behind the forms\"\n");
        auto a = merge(site, automated({}, true), manual, MergePolicy{}, weights);
        CHECK(a.vector.value(CriterionId::C7_1));
        CHECK(a.provenance_of(CriterionId::C7_1) == Provenance::Manual);
    }
    SUBCASE("manual overrides automated") {
        auto manual = parse_answers(std::string(kHeader) + "answer C2 0 \"static export\"\n");
        auto a = merge(site, automated({CriterionId::C2}), manual, MergePolicy{}, weights);
        CHECK_FALSE(a.vector.value(CriterionId::C2));
        CHECK(a.provenance_of(CriterionId::C2) == Provenance::Manual);
        CHECK(a.warnings.size() == 6);
    }
    SUBCASE("missing automated result defaults with warning") {
        auto a = merge(site, {}, ManualAnswerFile{}, MergePolicy{}, weights);
        CHECK(a.warnings.size() == 12);
        CHECK(a.wii.centivalue() == 0);
    }
    SUBCASE("site mismatch") {
        auto manual = parse_answers("site http://other.gov.lk/\nassessor a\ndate 2015-01-01\n");
        CHECK_THROWS_AS(merge(site, automated({}), manual, MergePolicy{}, weights), SiteMismatch);
        SiteIdentity redirected{"https://www.other.gov.lk/home", {"http://other.gov.lk/"}};
        CHECK_NOTHROW(merge(redirected, automated({}), manual, MergePolicy{}, weights));
    }
    SUBCASE("site comparison normalizes") {
        auto manual = parse_answers("site HTTP://WWW.Example.gov.lk:80\nassessor a\ndate 2015-01-01\n");
        CHECK_NOTHROW(merge(site, automated({}), manual, MergePolicy{}, weights));
    }
    SUBCASE("duplicate automated result") {
        auto results = automated({});
        results.push_back(results.front());
        CHECK_THROWS_AS(merge(site, results, ManualAnswerFile{}, MergePolicy{}, weights), std::invalid_argument);
    }
}

TEST_CASE("merge properties over random inputs") {
    std::mt19937 rng(20150410);
    auto weights = WeightTable::default_table();
    SiteIdentity site{kSite, {}};
    for (int iter = 0; iter < 2000; ++iter) {
        std::vector<CheckResult> results;
        for (auto id : {CriterionId::C2, CriterionId::C6_1, CriterionId::C6_2, CriterionId::C6_3, CriterionId::C6_4,
                        CriterionId::C7_1, CriterionId::C7_2}) {
            if (rng() % 5 == 0) continue;
            bool advisory = id == CriterionId::C7_1 || id == CriterionId::C7_2;
            results.push_back({id, static_cast<bool>(rng() % 2), {}, advisory});
        }
        ManualAnswerFile manual{kSite, "a", "2015-01-01", {}};
        for (auto leaf : kLeafCriteria) {
            if (rng() % 3 == 0) manual.answers.push_back({leaf, static_cast<std::uint8_t>(rng() % 2), ""});
        }
        MergePolicy policy{static_cast<bool>(rng() % 2)};
        auto a = merge(site, results, manual, policy, weights);
        auto b = merge(site, results, manual, policy, weights);
        CHECK(a.vector == b.vector);
        CHECK(a.warnings == b.warnings);
        CHECK(a.provenance == b.provenance);
        CHECK(a.vector.parent_consistent());
        CHECK(compute_wii(a.vector, weights) == a.wii);
        CHECK(classify(a.vector) == a.wii_class);
        for (std::size_t i = 0; i < kLeafCount; ++i) {
            auto leaf = kLeafCriteria[i];
            const auto* answer = manual.find(leaf);
            CHECK((a.provenance[i] == Provenance::Manual) == (answer != nullptr));
            if (answer) CHECK(a.vector.value(leaf) == static_cast<bool>(answer->value));
            if (a.provenance[i] == Provenance::DefaultZero) CHECK_FALSE(a.vector.value(leaf));
            if (a.provenance[i] == Provenance::HeuristicAdvisory) CHECK(policy.accept_heuristics);
        }
    }
}
