#include <doctest.h>

#include <algorithm>

#include "smeval/rank.hpp"
#include "smeval/rng.hpp"

using namespace smeval;

TEST_CASE("rank_descending") {
    SUBCASE("strict ordering") {
        const std::vector<double> scores{0.9, 0.1, 0.5};
        CHECK(rank_descending(scores) == std::vector<double>{1.0, 3.0, 2.0});
    }
    SUBCASE("ties take the average rank") {
        const std::vector<double> scores{0.7, 0.7};
        CHECK(rank_descending(scores) == std::vector<double>{1.5, 1.5});
        const std::vector<double> three{0.2, 0.9, 0.2};
        CHECK(rank_descending(three) == std::vector<double>{2.5, 1.0, 2.5});
    }
    SUBCASE("single entry") {
        CHECK(rank_descending(std::vector<double>{0.4}) == std::vector<double>{1.0});
    }
}

TEST_CASE("spearman_rho") {
    SUBCASE("identical rankings") {
        const std::vector<double> a{1, 2, 3, 4};
        CHECK(spearman_rho(a, a) == 1.0);
    }
    SUBCASE("reversed rankings") {
        const std::vector<double> a{1, 2, 3, 4};
        const std::vector<double> b{4, 3, 2, 1};
        CHECK(spearman_rho(a, b) == -1.0);
    }
    SUBCASE("single transposition gives 0.8") {
        const std::vector<double> a{1, 2, 3, 4};
        const std::vector<double> b{1, 3, 2, 4};
        CHECK(spearman_rho(a, b) == doctest::Approx(0.8).epsilon(1e-12));
    }
    SUBCASE("constant vector returns 0 with the flag set") {
        const std::vector<double> a{2.5, 2.5, 2.5, 2.5};
        const std::vector<double> b{1, 2, 3, 4};
        bool degenerate = false;
        CHECK(spearman_rho(a, b, &degenerate) == 0.0);
        CHECK(degenerate);
    }
    SUBCASE("identity and reversal over random tie-free ranks") {
        auto rng = derive_stream(180, 0);
        for (int t = 0; t < 20; ++t) {
            std::vector<double> a(6);
            for (int i = 0; i < 6; ++i) a[i] = i + 1;
            for (int i = 5; i > 0; --i)
                std::swap(a[i], a[uniform_below(rng, i + 1)]);
            std::vector<double> rev(6);
            for (int i = 0; i < 6; ++i) rev[i] = 7.0 - a[i];
            CHECK(spearman_rho(a, a) == 1.0);
            CHECK(spearman_rho(a, rev) == doctest::Approx(-1.0).epsilon(1e-12));
        }
    }
    SUBCASE("errors") {
        const std::vector<double> a{1, 2};
        const std::vector<double> b{1, 2, 3};
        CHECK_THROWS_AS(spearman_rho(a, b), std::invalid_argument);
        const std::vector<double> one{1};
        CHECK_THROWS_AS(spearman_rho(one, one), std::invalid_argument);
    }
}
