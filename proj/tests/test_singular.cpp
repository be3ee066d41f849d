#include <catch2/catch_amalgamated.hpp>

#include "qcover/singular.hpp"

using namespace qcover;

TEST_CASE("type classification") {
    auto f2 = Field::make_shared(2);
    SingularSpace sing(f2, 2, 1); // ambient 3, W1 = <e3>

    CHECK(type_of(sing, sing.w1()) == SubspaceType{1, 1});
    auto p = Subspace::span(f2, 3, {{1, 0, 0}, {0, 1, 0}});
    CHECK(type_of(sing, p) == SubspaceType{2, 0});
    auto q = Subspace::span(f2, 3, {{1, 0, 0}, {0, 0, 1}});
    CHECK(type_of(sing, q) == SubspaceType{2, 1});

    auto f3 = Field::make_shared(3);
    CHECK_THROWS_AS(type_of(sing, Subspace::zero(f3, 3)), error);
}

TEST_CASE("type layer enumeration") {
    auto f2 = Field::make_shared(2);
    SingularSpace sing(f2, 2, 1);
    auto full = Subspace::full(f2, 3);

    SECTION("the layer of X's own type is {X}") {
        auto p = Subspace::span(f2, 3, {{1, 0, 0}, {0, 0, 1}});
        auto layer = subspaces_of_type(sing, p, 2, 1);
        REQUIRE(layer.size() == 1);
        CHECK(layer.front() == p);
    }
    SECTION("k above l yields nothing") {
        CHECK(subspaces_of_type(sing, full, 2, 2).empty());
    }
    SECTION("points off the distinguished subspace, cross-checked by hand") {
        // 7 points in F_2^3, exactly one inside W1, so 6 of type (1,0);
        // the counting formula gives q * G(2,1) * G(1,0) = 2*3 = 6 as well
        auto layer = subspaces_of_type(sing, full, 1, 0);
        CHECK(layer.size() == 6);
        CHECK(count_type(1, 0, 3, 1, 2, 1, 2) == 6);
        for (const auto& pt : layer) CHECK(meet_dim(pt, sing.w1()) == 0);
    }
    SECTION("formula equals enumeration across a small grid, both directions") {
        for (unsigned long qv : {2UL, 3UL}) {
            auto f = Field::make_shared(qv);
            for (int n = 1; n <= 3; ++n)
                for (int l = 0; n + l <= 4; ++l) {
                    SingularSpace sg(f, n, l);
                    auto whole = Subspace::full(f, n + l);
                    for (int m = 0; m <= n + l; ++m)
                        for (int k = 0; k <= m; ++k) {
                            auto layer = subspaces_of_type(sg, whole, m, k);
                            QInt formula = count_type(m, k, n + l, l, n, l, qv);
                            CHECK(formula == static_cast<unsigned long>(layer.size()));
                            CHECK((formula > 0) == !layer.empty());
                        }
                }
        }
    }
}

TEST_CASE("trivial family construction") {
    auto f2 = Field::make_shared(2);
    auto pt = Subspace::span(f2, 3, {{1, 0, 0}});
    Family fam = trivial_family(f2, 3, 2, pt);
    CHECK(fam.size() == 3);
    CHECK(covering_number(fam).tau == 1);

    Family whole = trivial_family(f2, 3, 3, pt);
    CHECK(whole.size() == 1);

    auto line2 = Subspace::span(f2, 3, {{1, 0, 0}, {0, 1, 0}});
    CHECK_THROWS_AS(trivial_family(f2, 3, 2, line2), error);
}

TEST_CASE("extremal family construction") {
    auto f2 = Field::make_shared(2);
    Family e22 = extremal_family(f2, 3, 2);
    CHECK(e22.size() == 7);
    CHECK(covering_number(e22).tau == 2);

    auto f3 = Field::make_shared(3);
    Family e32 = extremal_family(f3, 4, 2);
    CHECK(e32.size() == 13);
    CHECK(covering_number(e32).tau == 2);
    CHECK(family_span(e32).dim() == 3);

    CHECK_THROWS_AS(extremal_family(f3, 4, 3), error); // ambient below 2m-1
}

TEST_CASE("singular extremal construction") {
    SECTION("k = 0, l = 0 reduces to the plain extremal family") {
        auto f3 = Field::make_shared(3);
        SingularSpace sing(f3, 4, 0);
        Family plain = extremal_family(f3, 4, 2);
        Family viaSingular = extremal_singular_family(sing, 2, 0);
        CHECK(viaSingular == plain);
    }
    SECTION("q=5, n=4, l=3, m=3, k=1: size by formula, covering number 3") {
        auto f5 = Field::make_shared(5);
        SingularSpace sing(f5, 4, 3);
        Family fam = extremal_singular_family(sing, 3, 1);
        CHECK(fam.size() == 19375); // 5^4 G(3,1) = 625*31
        CHECK(count_type(3, 1, 5, 3, 4, 3, 5) == 19375);
        CoverResult res = covering_number(fam);
        CHECK(res.tau == 3);
        CHECK(res.exact);
        CHECK(type_of(sing, family_span(fam)) == SubspaceType{5, 3});
    }
    SECTION("small mixed case q=5, n=1, l=2, m=2, k=1") {
        auto f5 = Field::make_shared(5);
        SingularSpace sing(f5, 1, 2);
        Family fam = extremal_singular_family(sing, 2, 1);
        CHECK(fam.size() == 30); // q G(1,1) G(2,1) = 5*1*6
        CHECK(covering_number(fam).tau == 2);
    }
    SECTION("infeasible parameters name the violated clause") {
        auto f5 = Field::make_shared(5);
        SingularSpace sing(f5, 2, 1);
        try {
            extremal_singular_family(sing, 3, 1); // t = 3 > l = 1
            FAIL("expected infeasibility");
        } catch (const error& e) {
            CHECK(e.code() == errc::infeasible);
            CHECK(std::string(e.what()).find("t <= l") != std::string::npos);
        }
    }
    SECTION("a type parameter above the member dimension is rejected") {
        auto f5 = Field::make_shared(5);
        SingularSpace roomy(f5, 1, 5);
        try {
            extremal_singular_family(roomy, 2, 4); // no m-subspace meets W1 in dim > m
            FAIL("expected infeasibility");
        } catch (const error& e) {
            CHECK(e.code() == errc::infeasible);
            CHECK(std::string(e.what()).find("k <= m") != std::string::npos);
        }
    }
}

TEST_CASE("extremal construction keeps covering number m in padded ambients") {
    // tau([X m]) = m does not depend on how much room surrounds X; the
    // exhaustive route corroborates wherever its work guard admits
    for (unsigned long q : {2UL, 3UL, 4UL, 5UL})
        for (int m : {2, 3})
            for (int pad = 0; pad <= 2; ++pad) {
                const int n = 2 * m - 1 + pad;
                auto f = Field::make_shared(q);
                Family fam = extremal_family(f, n, m);
                CHECK(gaussian(2 * m - 1, m, q) == static_cast<unsigned long>(fam.size()));
                CoverResult bb = covering_number(fam);
                CHECK(bb.exact);
                CHECK(bb.tau == m);
                QInt work = 0;
                for (int s = 1; s <= m; ++s)
                    work += gaussian(2 * m - 1, s, q) * static_cast<unsigned long>(fam.size());
                if (work <= 5'000'000UL) {
                    CoverResult ex = covering_number_exhaustive(fam);
                    CHECK(ex.tau == bb.tau);
                    CHECK(ex.witness == bb.witness);
                }
            }
}

TEST_CASE("singular extremal grid at small q") {
    // the construction and its covering number need no hypothesis on q
    for (unsigned long q : {2UL, 3UL, 5UL}) {
        auto f = Field::make_shared(q);
        for (int m : {2, 3})
            for (int k = 0; k <= 2; ++k) {
                const int n = k == 0 ? 2 * m - 1 : std::max(1, m - k);
                const int l = k == 0 ? 0 : m + k - 1;
                const int t = extremal_t(m, k, n);
                SingularSpace sing(f, n, l);
                Family fam = extremal_singular_family(sing, m, k);
                CHECK(count_type(m, k, 2 * m - 1, t, n, l, q) ==
                      static_cast<unsigned long>(fam.size()));
                CoverResult res = covering_number(fam);
                CHECK(res.exact);
                CHECK(res.tau == m);
                CHECK(res.family_intersecting);
            }
    }
}

TEST_CASE("extremal verification report") {
    auto f2 = Field::make_shared(2);

    SECTION("the genuine extremal family passes all four checks") {
        Family fam = extremal_family(f2, 3, 2);
        ExtremalReport rep = check_extremal(fam);
        CHECK(rep.intersecting);
        CHECK(rep.tau_ok);
        CHECK(rep.size_ok);
        CHECK(rep.span_ok);
        CHECK(rep.ok());
    }
    SECTION("a trivial family fails the covering check with tau = 1") {
        auto pt = Subspace::span(f2, 4, {{1, 0, 0, 0}});
        ExtremalReport rep = check_extremal(trivial_family(f2, 4, 2, pt));
        CHECK(rep.tau == 1);
        CHECK_FALSE(rep.tau_ok);
        CHECK_FALSE(rep.ok());
    }
    SECTION("deleting one member breaks the size check") {
        Family fam = extremal_family(f2, 3, 2);
        std::vector<Subspace> members(fam.members().begin(), fam.members().end() - 1);
        Family smaller = Family::of(f2, 3, 2, std::move(members));
        ExtremalReport rep = check_extremal(smaller);
        CHECK(rep.intersecting);
        CHECK_FALSE(rep.size_ok);
        CHECK_FALSE(rep.ok());
    }
    SECTION("singular report checks the span type") {
        auto f5 = Field::make_shared(5);
        SingularSpace sing(f5, 1, 2);
        Family fam = extremal_singular_family(sing, 2, 1);
        ExtremalReport rep = check_extremal(fam, sing);
        CHECK(rep.ok());
    }
}

TEST_CASE("span completeness") {
    auto f2 = Field::make_shared(2);

    CHECK(is_span_complete(extremal_family(f2, 3, 2)));
    CHECK(is_span_complete(extremal_family(f2, 4, 2))); // span is still 3-dimensional

    auto pt = Subspace::span(f2, 4, {{1, 0, 0, 0}});
    CHECK_FALSE(is_span_complete(trivial_family(f2, 4, 2, pt)));

    Family fam = extremal_family(f2, 3, 2);
    std::vector<Subspace> members(fam.members().begin(), fam.members().end() - 1);
    CHECK_FALSE(is_span_complete(Family::of(f2, 3, 2, std::move(members))));

    SECTION("singular variant") {
        auto f5 = Field::make_shared(5);
        SingularSpace sing(f5, 1, 2);
        Family sf = extremal_singular_family(sing, 2, 1);
        CHECK(is_span_complete(sf, sing));
        std::vector<Subspace> fewer(sf.members().begin(), sf.members().end() - 1);
        CHECK_FALSE(is_span_complete(Family::of(f5, 3, 2, std::move(fewer)), sing));
    }
}
