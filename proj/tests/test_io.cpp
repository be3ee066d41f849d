#include <catch2/catch_amalgamated.hpp>

#include "qcover/io.hpp"

using namespace qcover;

TEST_CASE("family files round-trip byte-identically") {
    auto f3 = Field::make_shared(3);
    Family fam = extremal_family(f3, 4, 2);
    std::string text = family_to_string(fam);
    std::istringstream in(text);
    LoadedFamily back = read_family(in);
    CHECK(back.family == fam);
    CHECK_FALSE(back.sing.has_value());
    CHECK(family_to_string(back.family) == text);
}

TEST_CASE("singular headers carry the distinguished dimension") {
    auto f5 = Field::make_shared(5);
    SingularSpace sing(f5, 1, 2);
    Family fam = extremal_singular_family(sing, 2, 1);
    std::string text = family_to_string(fam, sing);
    CHECK(text.rfind("q=5 n=1 m=2 count=30 l=2\n", 0) == 0);
    std::istringstream in(text);
    LoadedFamily back = read_family(in);
    REQUIRE(back.sing.has_value());
    CHECK(back.sing->n() == 1);
    CHECK(back.sing->l() == 2);
    CHECK(back.family == fam);
    CHECK(family_to_string(back.family, back.sing) == text);
}

TEST_CASE("reader canonicalizes arbitrary bases and tolerates comments") {
    std::string text =
        "# a family of one plane, written with a scrambled basis\n"
        "q=3 n=3 m=2 count=1\n"
        "\n"
        "2 2 0;1 2 0\n";
    std::istringstream in(text);
    Family fam = read_family(in).family;
    auto f3 = Field::make_shared(3);
    CHECK(fam.members().front() == Subspace::span(f3, 3, {{1, 0, 0}, {0, 1, 0}}));
}

TEST_CASE("reader rejects malformed input") {
    auto parse = [](const std::string& text) {
        std::istringstream in(text);
        return read_family(in);
    };
    auto code_of = [&](const std::string& text) {
        try {
            parse(text);
            return errc::range; // placeholder: the call must throw
        } catch (const error& e) {
            return e.code();
        }
    };
    CHECK(code_of("") == errc::parse);                                    // no header
    CHECK(code_of("q=4 m=2 count=0\n") == errc::parse);                   // n missing
    CHECK(code_of("q=6 n=3 m=2 count=0\n") == errc::not_prime_power);     // bad field
    CHECK(code_of("q=2 n=3 m=2 count=1\n") == errc::parse);               // body missing
    CHECK(code_of("q=2 n=3 m=2 count=1\n1 0 0\n") == errc::parse);        // dim below m
    CHECK(code_of("q=2 n=3 m=1 count=1\n1 0\n") == errc::parse);          // short row
    CHECK(code_of("q=2 n=3 m=1 count=1\n1 0 5\n") == errc::parse);        // entry >= q
    CHECK(code_of("q=2 n=3 m=1 count=2\n1 0 0\n1 0 0\n") == errc::parse); // duplicates
    CHECK(code_of("q=2 n=3 m=1 count=1\n1 0 0\n0 1 0\n") == errc::parse); // trailing body
    CHECK(code_of("q=2 n=3 m=1 zz=1\n") == errc::parse);                  // unknown key
    CHECK(code_of("q=2 n=3 m=1 count=1 l=-1\n1 0 0\n") == errc::parse);   // negative l
}

TEST_CASE("an explicit l=0 header keeps the degenerate singular model") {
    std::istringstream in("q=2 n=3 m=1 count=1 l=0\n1 0 0\n");
    LoadedFamily lf = read_family(in);
    REQUIRE(lf.sing.has_value());
    CHECK(lf.sing->l() == 0);
    CHECK(family_to_string(lf.family, lf.sing) == "q=2 n=3 m=1 count=1 l=0\n1 0 0\n");
}

TEST_CASE("certificates serialize with a stable key order") {
    IneqReport rep = verify_size_bound(3, 3);
    OrderedJson cert = ineq_certificate("23", rep);
    std::vector<std::string> keys;
    for (auto it = cert.begin(); it != cert.end(); ++it) keys.push_back(it.key());
    CHECK(keys == std::vector<std::string>{"kind", "parameters", "result", "witness", "steps",
                                           "optimal", "nodes", "tool_version"});
    CHECK(cert["result"]["lhs"] == "884");
    CHECK(cert["result"]["rhs"] == "1210");
    CHECK(cert["result"]["holds"] == true);
    // parse -> dump is lossless
    std::string dumped = cert.dump(2);
    CHECK(OrderedJson::parse(dumped).dump(2) == dumped);
}

TEST_CASE("covering certificates re-validate") {
    auto f2 = Field::make_shared(2);
    Family fam = extremal_family(f2, 3, 2);
    CoverResult res = covering_number(fam);
    OrderedJson cert = tau_certificate(res, fam, std::nullopt, "inline", false);
    CHECK(cert["result"]["tau"] == 2);
    // the inline witness text parses back to the certified cover
    std::istringstream in(cert["witness"].get<std::string>());
    LoadedFamily wit = read_family(in);
    REQUIRE(wit.family.size() == 1);
    CHECK(wit.family.members().front() == res.witness);
    // and re-running the solver on the original family reproduces tau
    CHECK(covering_number(fam).tau == cert["result"]["tau"].get<int>());
}

TEST_CASE("search certificates embed the witness family") {
    SearchParams p;
    p.q = 2;
    p.n = 4;
    p.m = 2;
    p.min_tau = 2;
    SearchCertificate sc = search_max_family(p);
    OrderedJson cert = search_certificate(sc, std::nullopt);
    CHECK(cert["kind"] == "search-max");
    CHECK(cert["result"]["size"] == 7);
    CHECK(cert["optimal"] == true);
    std::istringstream in(cert["witness"].get<std::string>());
    Family wit = read_family(in).family;
    CHECK(wit == *sc.witness);
    CHECK(covering_number(wit).tau >= 2);
}
