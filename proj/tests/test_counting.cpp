#include <catch2/catch_amalgamated.hpp>

#include "qcover/counting.hpp"
#include "qcover/inequalities.hpp"

using namespace qcover;

TEST_CASE("gaussian binomial values") {
    CHECK(gaussian(5, 0, 2) == 1);
    CHECK(gaussian(0, 0, 7) == 1);
    CHECK(gaussian(3, 2, 2) == 7);
    CHECK(gaussian(5, 3, 2) == 155);
    CHECK(gaussian(5, 3, 3) == 1210);
    CHECK(gaussian(2, 3, 2) == 0);
    CHECK_THROWS_AS(gaussian(3, 2, 1), error);
    CHECK_THROWS_AS(gaussian(-1, 0, 2), error);
}

TEST_CASE("gaussian binomial recurrence and symmetry") {
    for (unsigned long q : {2UL, 3UL, 4UL, 5UL, 8UL})
        for (long n = 1; n <= 12; ++n)
            for (long m = 1; m <= n; ++m) {
                CHECK(gaussian(n, m, q) == qint_pow(q, static_cast<unsigned long>(m)) *
                                                   gaussian(n - 1, m, q) +
                                               gaussian(n - 1, m - 1, q));
                CHECK(gaussian(n, m, q) == gaussian(n, n - m, q));
            }
}

TEST_CASE("type counts") {
    // a subspace contains exactly itself at its own type
    CHECK(count_type(2, 1, 2, 1, 2, 1, 2) == 1);
    CHECK(count_type(3, 0, 3, 0, 5, 2, 3) == 1);
    // zero outside the existence condition
    CHECK(count_type(2, 2, 3, 1, 3, 2, 2) == 0); // k1 > k
    CHECK(count_type(2, 0, 3, 1, 1, 4, 2) == 0); // m-k > n
    CHECK(count_type(1, 1, 2, 2, 2, 1, 2) == 0); // k > l
    // documented instance inside a type-(2,1) plane
    CHECK(count_type(1, 0, 2, 1, 2, 1, 2) == 2);
    CHECK_THROWS_AS(count_type(1, 0, 2, 1, 2, 1, 1), error);
}

TEST_CASE("extremal type parameter") {
    CHECK(extremal_t(3, 0, 5) == 0);
    CHECK(extremal_t(3, 0, 6) == 0);
    CHECK(extremal_t(3, 0, 4) == 1);
    CHECK(extremal_t(3, 2, 7) == 4);
    CHECK(extremal_t(2, 1, 1) == 2);
    CHECK_THROWS_AS(extremal_t(1, 0, 3), error);
}

TEST_CASE("size bound at the documented instances") {
    SECTION("m=3, q=3: 884 < 1210") {
        IneqReport rep = verify_size_bound(3, 3);
        CHECK(rep.lhs == 884);
        CHECK(rep.rhs == 1210);
        CHECK(rep.holds);
        CHECK(rep.all_hold());
    }
    SECTION("m=3, q=2 sits outside q >= m and the bound indeed fails") {
        IneqReport rep = verify_size_bound(3, 2);
        CHECK(rep.lhs == 210);
        CHECK(rep.rhs == 155);
        CHECK_FALSE(rep.holds);
    }
    SECTION("m=4, q=4 holds") { CHECK(verify_size_bound(4, 4).all_hold()); }
    SECTION("m < 3 is rejected") { CHECK_THROWS_AS(verify_size_bound(2, 5), error); }
}

TEST_CASE("size bound chain") {
    SECTION("m=4, q=4 and q=5: all steps hold") {
        for (unsigned long q : {4UL, 5UL}) {
            IneqReport rep = verify_size_bound_chain(4, q);
            CHECK(rep.holds);
            CHECK(rep.steps.size() == 5);
            for (const auto& s : rep.steps) CHECK(s.holds);
        }
    }
    SECTION("q below m is rejected") {
        try {
            verify_size_bound_chain(4, 3);
            FAIL("expected range rejection");
        } catch (const error& e) {
            CHECK(e.code() == errc::range);
        }
    }
    SECTION("m below 4 is rejected") { CHECK_THROWS_AS(verify_size_bound_chain(3, 7), error); }
}

TEST_CASE("power bounds") {
    SECTION("a=2, b=1, q=2: 2 < 3 <= 3") {
        IneqReport rep = verify_power_bounds(2, 1, 2);
        CHECK(rep.lhs == 2);
        CHECK(rep.rhs == 3);
        CHECK(rep.all_hold());
        CHECK(rep.steps.back().rhs == 3);
    }
    SECTION("a=5, b=2, q=3") {
        IneqReport rep = verify_power_bounds(5, 2, 3);
        CHECK(rep.lhs == 729);           // 3^6
        CHECK(rep.rhs == 1210);          // G(5,2) at q=3
        CHECK(rep.steps.back().rhs == 1600); // G(4,1)^2 = 40^2
        CHECK(rep.all_hold());
    }
    SECTION("a=b rejected") { CHECK_THROWS_AS(verify_power_bounds(3, 3, 2), error); }
}

TEST_CASE("singular size bound") {
    SECTION("m=3, k=0, n=5, l=0, q=5: t=0, compare against the full layer") {
        IneqReport rep = verify_singular_bound(3, 0, 5, 0, 5);
        CHECK(rep.params.back().first == "t");
        CHECK(rep.params.back().second == 0);
        CHECK(rep.rhs == gaussian(5, 3, 5));
        CHECK(rep.all_hold());
    }
    SECTION("m=3, k=1, n=4, l=4, q=5: t=3") {
        IneqReport rep = verify_singular_bound(3, 1, 4, 4, 5);
        CHECK(rep.rhs == qint_pow(5UL, 4UL) * gaussian(3, 1, 5)); // 5^4 G(3,1)
        CHECK(rep.all_hold());
    }
    SECTION("q = m+1 rejected") {
        try {
            verify_singular_bound(3, 0, 5, 0, 4);
            FAIL("expected range rejection");
        } catch (const error& e) {
            CHECK(e.code() == errc::range);
        }
    }
    SECTION("infeasible combination names the violated clause") {
        try {
            verify_singular_bound(3, 1, 2, 1, 7); // t = 3 > l = 1
            FAIL("expected infeasible rejection");
        } catch (const error& e) {
            CHECK(e.code() == errc::infeasible);
            CHECK(std::string(e.what()).find("t <= l") != std::string::npos);
        }
    }
}

TEST_CASE("prime power listing") {
    CHECK(prime_powers(2, 10) == std::vector<unsigned long>{2, 3, 4, 5, 7, 8, 9});
    CHECK(prime_powers(126, 129) == std::vector<unsigned long>{127, 128});
}
