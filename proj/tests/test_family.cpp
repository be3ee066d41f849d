#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "qcover/family.hpp"
#include "qcover/sampling.hpp"
#include "qcover/singular.hpp"

using namespace qcover;

namespace {

Family random_family(const FieldPtr& f, int n, int m, double keep, std::mt19937_64& rng) {
    std::vector<Subspace> members;
    for (const auto& s : all_subspaces(Subspace::full(f, n), m))
        if (std::uniform_real_distribution<>(0, 1)(rng) < keep) members.push_back(s);
    if (members.empty()) members.push_back(all_subspaces(Subspace::full(f, n), m).front());
    return Family::of(f, n, m, std::move(members));
}

} // namespace

TEST_CASE("family construction validates and canonicalizes") {
    auto f2 = Field::make_shared(2);
    auto a = Subspace::span(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    auto b = Subspace::span(f2, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
    Family fam = Family::of(f2, 4, 2, {b, a, b}); // unsorted, with a duplicate
    CHECK(fam.size() == 2);
    CHECK(fam.members().front() == std::min(a, b));

    CHECK_THROWS_AS(Family::of(f2, 4, 0, {}), error);                       // m >= 1
    CHECK_THROWS_AS(Family::of(f2, 4, 3, {a}), error);                      // wrong dim
    auto f3 = Field::make_shared(3);
    CHECK_THROWS_AS(Family::of(f3, 4, 2, {a}), error);                      // wrong field
}

TEST_CASE("intersecting check") {
    auto f2 = Field::make_shared(2);

    auto a = Subspace::span(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    Family singleton = Family::of(f2, 4, 2, {a});
    CHECK(is_intersecting(singleton).intersecting);

    Family planes = Family::of(f2, 3, 2, all_subspaces(Subspace::full(f2, 3), 2));
    CHECK(is_intersecting(planes).intersecting);

    auto b = Subspace::span(f2, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
    Family split = Family::of(f2, 4, 2, {a, b});
    IntersectReport rep = is_intersecting(split);
    CHECK_FALSE(rep.intersecting);
    REQUIRE(rep.violating.has_value());
    CHECK(rep.violating->first == 0);
    CHECK(rep.violating->second == 1);
}

TEST_CASE("family span") {
    auto f2 = Field::make_shared(2);
    auto a = Subspace::span(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    CHECK(family_span(Family::of(f2, 4, 2, {a})) == a);

    auto pt = Subspace::span(f2, 4, {{1, 0, 0, 0}});
    Family triv = trivial_family(f2, 4, 2, pt);
    CHECK(family_span(triv) == Subspace::full(f2, 4));

    CHECK_THROWS_AS(family_span(Family::of(f2, 4, 2, {})), error);
}

TEST_CASE("restriction to members through a subspace") {
    auto f2 = Field::make_shared(2);
    Family planes = Family::of(f2, 3, 2, all_subspaces(Subspace::full(f2, 3), 2));

    CHECK(members_containing(planes, Subspace::zero(f2, 3)).size() == planes.size());
    CHECK(members_containing(planes, Subspace::full(f2, 3)).size() == 0);

    auto pt = Subspace::span(f2, 3, {{1, 0, 0}});
    CHECK(members_containing(planes, pt).size() == 3);

    auto f3 = Field::make_shared(3);
    CHECK_THROWS_AS(members_containing(planes, Subspace::zero(f3, 3)), error);
}

TEST_CASE("covering number of the documented families") {
    auto f2 = Field::make_shared(2);

    SECTION("point pencil has covering number 1 with the common point as witness") {
        auto pt = Subspace::span(f2, 4, {{1, 0, 0, 0}});
        Family triv = trivial_family(f2, 4, 2, pt);
        CoverResult res = covering_number(triv);
        CHECK(res.tau == 1);
        CHECK(res.witness == pt);
        CHECK(res.exact);
        CHECK(res.family_intersecting);
    }
    SECTION("all planes of a 3-space need a plane") {
        Family planes = Family::of(f2, 3, 2, all_subspaces(Subspace::full(f2, 3), 2));
        CoverResult res = covering_number(planes);
        CHECK(res.tau == 2);
        CoverResult ex = covering_number_exhaustive(planes);
        CHECK(ex.tau == 2);
        CHECK(res.witness == ex.witness);
    }
    SECTION("all 3-subspaces of a 5-space over GF(3)") {
        auto f3 = Field::make_shared(3);
        Family layer = Family::of(f3, 5, 3, all_subspaces(Subspace::full(f3, 5), 3));
        CoverResult res = covering_number(layer);
        CHECK(res.tau == 3);
        CoverResult ex = covering_number_exhaustive(layer);
        CHECK(ex.tau == 3);
        CHECK(res.witness == ex.witness);
    }
    SECTION("singleton family is covered by any of its points") {
        auto a = Subspace::span(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
        Family single = Family::of(f2, 4, 2, {a});
        CoverResult res = covering_number(single);
        CoverResult ex = covering_number_exhaustive(single);
        CHECK(res.tau == 1);
        CHECK(ex.tau == 1);
        CHECK(res.witness == ex.witness);
        CHECK(contains(a, res.witness));
    }
    SECTION("two members meeting in a line have a 1-dimensional cover") {
        auto p1 = Subspace::span(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
        auto p2 = Subspace::span(f2, 4, {{1, 0, 0, 0}, {0, 0, 1, 0}});
        Family pair = Family::of(f2, 4, 2, {p1, p2});
        CoverResult bb = covering_number(pair);
        CoverResult ex = covering_number_exhaustive(pair);
        CHECK(bb.tau == 1);
        CHECK(ex.tau == 1);
        CHECK(bb.witness == ex.witness);
        CHECK(bb.witness == Subspace::span(f2, 4, {{1, 0, 0, 0}}));
    }
    SECTION("empty family is rejected") {
        CHECK_THROWS_AS(covering_number(Family::of(f2, 3, 2, {})), error);
    }
}

TEST_CASE("non-intersecting input is solved with a warning flag") {
    auto f2 = Field::make_shared(2);
    auto a = Subspace::span(f2, 4, {{1, 0, 0, 0}, {0, 1, 0, 0}});
    auto b = Subspace::span(f2, 4, {{0, 0, 1, 0}, {0, 0, 0, 1}});
    Family split = Family::of(f2, 4, 2, {a, b});
    CoverResult res = covering_number(split);
    CHECK_FALSE(res.family_intersecting);
    CHECK(res.tau == 2); // no common point between complementary planes
    CHECK(res.exact);
    CoverResult ex = covering_number_exhaustive(split);
    CHECK(ex.tau == res.tau);
    CHECK(ex.witness == res.witness);
}

TEST_CASE("disjoint points force the covering dimension up") {
    // two distinct 1-subspaces: nothing 1-dimensional meets both, any plane
    // through both does
    auto f2 = Field::make_shared(2);
    auto e1 = Subspace::span(f2, 2, {{1, 0}});
    auto e2 = Subspace::span(f2, 2, {{0, 1}});
    Family pts = Family::of(f2, 2, 1, {e1, e2});
    CoverResult res = covering_number(pts);
    CHECK_FALSE(res.family_intersecting);
    CHECK(res.tau == 2);
    CHECK(res.witness == Subspace::full(f2, 2));
    CoverResult ex = covering_number_exhaustive(pts);
    CHECK(ex.tau == 2);
    CHECK(ex.witness == res.witness);
}

TEST_CASE("solver matches the exhaustive route on random families") {
    std::mt19937_64 rng(31);
    for (unsigned long q : {2UL, 3UL}) {
        auto f = Field::make_shared(q);
        for (int iter = 0; iter < 12; ++iter) {
            Family fam = random_family(f, 4, 2, 0.25, rng);
            CoverResult bb = covering_number(fam);
            CoverResult ex = covering_number_exhaustive(fam);
            CHECK(bb.tau == ex.tau);
            CHECK(bb.witness == ex.witness);
            // tau = 1 iff a common point exists, by direct scan
            bool common = false;
            for (const auto& pt : points_of(family_span(fam))) {
                bool in_all = true;
                for (const auto& mbr : fam.members())
                    if (!contains(mbr, pt)) {
                        in_all = false;
                        break;
                    }
                if (in_all) {
                    common = true;
                    break;
                }
            }
            CHECK((bb.tau == 1) == common);
            // any intersecting family is covered by each of its members
            if (is_intersecting(fam).intersecting) CHECK(bb.tau <= fam.m());
            // families with maximal covering number span at least 2m-1 dims
            if (is_intersecting(fam).intersecting && bb.tau == fam.m())
                CHECK(family_span(fam).dim() >= 2 * fam.m() - 1);
        }
    }
}

TEST_CASE("solver results are reproducible") {
    auto f3 = Field::make_shared(3);
    Family fam = extremal_family(f3, 4, 2);
    CoverResult first = covering_number(fam);
    CoverResult second = covering_number(fam);
    CHECK(first.tau == second.tau);
    CHECK(first.witness == second.witness);
    CHECK(first.nodes == second.nodes);
}

TEST_CASE("node budget truncates gracefully") {
    auto f3 = Field::make_shared(3);
    Family fam = extremal_family(f3, 5, 3);
    CoverOptions opt;
    opt.node_budget = 5;
    CoverResult res = covering_number(fam, opt);
    CHECK_FALSE(res.exact);
    CHECK(res.tau >= 3); // upper bound only, never below the true value
    // the fallback witness is still a genuine cover
    for (const auto& mbr : fam.members()) CHECK(intersects(res.witness, mbr));
}

TEST_CASE("exhaustive solver respects the work cap") {
    auto f3 = Field::make_shared(3);
    Family fam = extremal_family(f3, 5, 3);
    CoverOptions opt;
    opt.work_cap = 1000;
    try {
        covering_number_exhaustive(fam, opt);
        FAIL("expected the work cap to reject this instance");
    } catch (const error& e) {
        CHECK(e.code() == errc::size_gate);
    }
}

TEST_CASE("popular extension") {
    auto f2 = Field::make_shared(2);
    Family planes = Family::of(f2, 3, 2, all_subspaces(Subspace::full(f2, 3), 2));

    SECTION("from the zero subspace: the most popular point") {
        auto zero = Subspace::zero(f2, 3);
        Extension ext = popular_extension(planes, zero);
        CHECK(ext.extended.dim() == 1);
        CHECK(ext.through_base == planes.size());
        CHECK(QInt(static_cast<unsigned long>(ext.through_extended)) * gaussian(2, 1, 2) >=
              QInt(static_cast<unsigned long>(ext.through_base)));
        CHECK(ext.through_extended == 3); // every point of F_2^3 lies in 3 planes
    }
    SECTION("exhaustive bound over all eligible bases") {
        for (int s = 0; s <= 1; ++s)
            for (const auto& base : all_subspaces(Subspace::full(f2, 3), s)) {
                bool eligible = false;
                for (const auto& mbr : planes.members())
                    if (!intersects(base, mbr)) {
                        eligible = true;
                        break;
                    }
                if (!eligible) continue;
                Extension ext = popular_extension(planes, base);
                CHECK(ext.extended.dim() == base.dim() + 1);
                CHECK(contains(ext.extended, base));
                CHECK(QInt(static_cast<unsigned long>(ext.through_extended)) * gaussian(2, 1, 2) >=
                      QInt(static_cast<unsigned long>(ext.through_base)));
            }
    }
    SECTION("rejected when the base already meets every member") {
        // any plane of the 3-space meets every other plane
        auto base = planes.members().front();
        try {
            popular_extension(planes, base);
            FAIL("expected rejection");
        } catch (const error& e) {
            CHECK(e.code() == errc::range);
        }
    }
}

TEST_CASE("restriction sizes obey the geometric ceiling when tau is maximal") {
    auto f2 = Field::make_shared(2);
    Family planes = Family::of(f2, 3, 2, all_subspaces(Subspace::full(f2, 3), 2));
    REQUIRE(covering_number(planes).tau == 2);
    const int m = planes.m();
    for (int s = 0; s <= m; ++s)
        for (const auto& sub : all_subspaces(Subspace::full(f2, 3), s)) {
            std::size_t count = members_containing(planes, sub).size();
            CHECK(QInt(static_cast<unsigned long>(count)) <=
                  qint_pow(gaussian(m, 1, 2), static_cast<unsigned long>(m - s)));
        }
}
