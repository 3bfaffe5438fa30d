#include <doctest.h>

#include <cmath>

#include "smeval/measures.hpp"
#include "smeval/meta.hpp"
#include "test_util.hpp"

using namespace smeval;

namespace {

ScoreMatrix make_matrix(std::vector<std::string> images, std::vector<std::string> models,
                        std::vector<std::vector<double>> scores) {
    ScoreMatrix m;
    m.image_ids = std::move(images);
    m.model_ids = std::move(models);
    m.scores = std::move(scores);
    m.validate();
    return m;
}

}  // namespace

TEST_CASE("mm1 application ranking") {
    const auto scores = make_matrix({"a", "b"}, {"m1", "m2", "m3", "m4"},
                                    {{0.9, 0.7, 0.5, 0.3}, {0.8, 0.6, 0.4, 0.2}});
    SUBCASE("identical rankings score 0") {
        const MetaResult r = mm1_application_ranking(scores, scores);
        CHECK(r.value == 0.0);
        CHECK(r.per_image.size() == 2);
    }
    SUBCASE("reversed rankings score 2") {
        auto reversed = scores;
        for (auto& row : reversed.scores) std::reverse(row.begin(), row.end());
        const MetaResult r = mm1_application_ranking(scores, reversed);
        CHECK(r.value == doctest::Approx(2.0).epsilon(1e-12));
    }
    SUBCASE("one transposition per image: mean of the hand Spearman values") {
        // swapping the middle two of four ranks gives rho = 0.8
        const auto app = make_matrix({"a", "b"}, {"m1", "m2", "m3", "m4"},
                                     {{0.9, 0.5, 0.7, 0.3}, {0.8, 0.4, 0.6, 0.2}});
        const MetaResult r = mm1_application_ranking(scores, app);
        CHECK(r.value == doctest::Approx(0.2).epsilon(1e-12));
    }
    SUBCASE("id mismatch is rejected") {
        const auto other = make_matrix({"a", "c"}, {"m1", "m2", "m3", "m4"},
                                       {{1, 2, 3, 4}, {1, 2, 3, 4}});
        CHECK_THROWS_AS(mm1_application_ranking(scores, other), std::invalid_argument);
    }
    SUBCASE("empty matrices are rejected") {
        ScoreMatrix empty;
        empty.model_ids = {"m1", "m2", "m3", "m4"};
        CHECK_THROWS_AS(mm1_application_ranking(empty, empty), std::invalid_argument);
        CHECK_THROWS_AS(mm5_rank_distance(empty, empty), std::invalid_argument);
        CHECK_THROWS_AS(mm2_generic_vs_sota(empty, {}), std::invalid_argument);
    }
}

TEST_CASE("gaussian_baseline_map") {
    SUBCASE("peak of 1 at the exact center of an odd grid") {
        const GrayMap g = gaussian_baseline_map(7, 9);
        CHECK(g.at(4, 3) == 1.0);
    }
    SUBCASE("mirror symmetry") {
        const GrayMap g = gaussian_baseline_map(10, 6);
        for (int r = 0; r < g.height; ++r)
            for (int c = 0; c < g.width; ++c) {
                CHECK(g.at(r, c) == g.at(r, g.width - 1 - c));
                CHECK(g.at(r, c) == g.at(g.height - 1 - r, c));
            }
    }
    SUBCASE("corner value on a 101x101 grid") {
        const GrayMap g = gaussian_baseline_map(101, 101, 0.25);
        const double sigma = 0.25 * 101;
        const double expected = std::exp(-(50.0 * 50 + 50.0 * 50) / (2 * sigma * sigma));
        CHECK(g.at(0, 0) == doctest::Approx(expected).epsilon(1e-12));
        CHECK(g.at(0, 0) == doctest::Approx(0.0198).epsilon(1e-2));
    }
}

TEST_CASE("mm2 generic vs state of the art") {
    const auto sota = make_matrix({"a", "b", "c"}, {"m1", "m2"},
                                  {{0.8, 0.6}, {0.9, 0.7}, {0.5, 0.3}});
    SUBCASE("generic always below the mean") {
        const MetaResult r = mm2_generic_vs_sota(sota, {0.1, 0.2, 0.1});
        CHECK(r.value == 0.0);
        CHECK(r.extras.at("percent") == 0.0);
    }
    SUBCASE("generic always above") {
        const MetaResult r = mm2_generic_vs_sota(sota, {0.99, 0.99, 0.99});
        CHECK(r.value == 3.0);
        CHECK(r.extras.at("percent") == 100.0);
    }
    SUBCASE("single violation") {
        // means: 0.7, 0.8, 0.4
        const MetaResult r = mm2_generic_vs_sota(sota, {0.1, 0.85, 0.1});
        CHECK(r.value == 1.0);
        CHECK(r.per_image[1].value == 1.0);
    }
    SUBCASE("ties do not count") {
        const MetaResult r = mm2_generic_vs_sota(sota, {0.7, 0.8, 0.4});
        CHECK(r.value == 0.0);
    }
    SUBCASE("length mismatch rejected") {
        CHECK_THROWS_AS(mm2_generic_vs_sota(sota, {0.1, 0.2}), std::invalid_argument);
    }
}

TEST_CASE("mm3 ground-truth switch") {
    auto rng = derive_stream(200, 0);

    SUBCASE("structure measure on its own GT never errs") {
        std::vector<GrayMap> sms;
        std::vector<BinMap> gts;
        std::vector<std::string> ids;
        for (int i = 0; i < 8; ++i) {
            const BinMap gt = testutil::random_gt(9, 9, rng, 0.4);
            gts.push_back(gt);
            sms.push_back(to_gray(gt));
            ids.push_back("img" + std::to_string(i));
        }
        Mm3Params p;
        p.switches_per_image = 1000;  // exhaustive
        p.good_fraction = 1.0;
        p.seed = 5;
        const MetaResult r = mm3_gt_switch(make_measure("s"), sms, gts, ids, p);
        CHECK(r.value == 0.0);
        CHECK(r.extras.at("ties") == 0.0);
        CHECK(r.extras.at("trials") == 8.0 * 7.0);
    }

    SUBCASE("a constant measure ties every trial and errs never") {
        std::vector<GrayMap> sms;
        std::vector<BinMap> gts;
        std::vector<std::string> ids;
        for (int i = 0; i < 4; ++i) {
            gts.push_back(testutil::random_gt(6, 6, rng));
            sms.push_back(testutil::random_sm(6, 6, rng));
            ids.push_back("img" + std::to_string(i));
        }
        Mm3Params p;
        p.switches_per_image = 100;
        p.good_fraction = 1.0;
        const MeasureFn constant = [](const GrayMap&, const BinMap&) { return 0.5; };
        const MetaResult r = mm3_gt_switch(constant, sms, gts, ids, p);
        CHECK(r.value == 0.0);
        CHECK(r.extras.at("tie_pct") == 100.0);
    }

    SUBCASE("a GT-agnostic measure (mean of the map) ties every switch") {
        // With SM = GT the correct score is the map's own mean, and a wrong
        // GT cannot move it: full enumeration gives 0 errors, all ties.
        std::vector<GrayMap> sms;
        std::vector<BinMap> gts;
        std::vector<std::string> ids;
        for (int i = 0; i < 3; ++i) {
            const BinMap gt = testutil::random_gt(5, 5, rng);
            gts.push_back(gt);
            sms.push_back(to_gray(gt));
            ids.push_back("img" + std::to_string(i));
        }
        Mm3Params p;
        p.switches_per_image = 2;  // exhaustive for 3 images
        p.good_fraction = 1.0;
        const MeasureFn blind = [](const GrayMap& sm, const BinMap&) {
            return mean_value(sm);
        };
        const MetaResult r = mm3_gt_switch(blind, sms, gts, ids, p);
        CHECK(r.value == 0.0);
        CHECK(r.extras.at("ties") == 6.0);
        CHECK(r.extras.at("tie_pct") == 100.0);
    }

    SUBCASE("an anti-measure errs on every switch") {
        // Scoring the map's mass inside the wrong GT's background rewards
        // every switch: hand enumeration gives 100%.
        BinMap gt1(2, 2), gt2(2, 2);
        gt1.set(0, 0, true);
        gt1.set(1, 0, true);
        gt2.set(0, 1, true);
        gt2.set(1, 1, true);
        const std::vector<BinMap> gts{gt1, gt2};
        const std::vector<GrayMap> sms{to_gray(gt1), to_gray(gt2)};
        const MeasureFn anti = [](const GrayMap& sm, const BinMap& gt) {
            double s = 0.0;
            size_t n = 0;
            for (size_t i = 0; i < gt.values.size(); ++i)
                if (!gt.values[i]) {
                    s += sm.values[i];
                    ++n;
                }
            return n ? s / n : 0.0;
        };
        Mm3Params p;
        p.switches_per_image = 10;
        p.good_fraction = 1.0;
        const MetaResult r = mm3_gt_switch(anti, sms, gts, {"a", "b"}, p);
        CHECK(r.value == 100.0);
    }

    SUBCASE("size-mismatched wrong GTs are excluded") {
        std::vector<GrayMap> sms;
        std::vector<BinMap> gts;
        std::vector<std::string> ids;
        for (int i = 0; i < 3; ++i) {
            const int side = 6;
            const BinMap gt = testutil::random_gt(side, side, rng);
            gts.push_back(gt);
            sms.push_back(to_gray(gt));
            ids.push_back("same" + std::to_string(i));
        }
        gts.push_back(testutil::random_gt(9, 4, rng));
        sms.push_back(to_gray(gts.back()));
        ids.push_back("odd");
        Mm3Params p;
        p.switches_per_image = 50;
        p.good_fraction = 1.0;
        const MetaResult r = mm3_gt_switch(make_measure("s"), sms, gts, ids, p);
        // the odd-sized image cannot borrow any GT, and nobody can use its GT
        CHECK(r.extras.at("excluded") == 3.0 + 3.0);
        CHECK(r.extras.at("trials") == 3.0 * 2.0);
    }

    SUBCASE("same seed reproduces the sampled trials bit for bit") {
        std::vector<GrayMap> sms;
        std::vector<BinMap> gts;
        std::vector<std::string> ids;
        for (int i = 0; i < 12; ++i) {
            gts.push_back(testutil::random_gt(7, 7, rng));
            sms.push_back(testutil::random_sm(7, 7, rng));
            ids.push_back("img" + std::to_string(i));
        }
        Mm3Params p;
        p.switches_per_image = 5;  // forces sampling
        p.seed = 42;
        const MetaResult a = mm3_gt_switch(make_measure("s"), sms, gts, ids, p);
        const MetaResult b = mm3_gt_switch(make_measure("s"), sms, gts, ids, p);
        CHECK(a.value == b.value);
        CHECK(a.extras == b.extras);
        p.jobs = 4;  // parallel run must agree with serial
        const MetaResult c = mm3_gt_switch(make_measure("s"), sms, gts, ids, p);
        CHECK(a.value == c.value);
        CHECK(a.extras == c.extras);
    }

    SUBCASE("fewer than two images is an error") {
        const std::vector<BinMap> gts{testutil::random_gt(4, 4, rng)};
        const std::vector<GrayMap> sms{to_gray(gts[0])};
        Mm3Params p;
        CHECK_THROWS_AS(mm3_gt_switch(make_measure("s"), sms, gts, {"only"}, p),
                        std::invalid_argument);
    }
}

TEST_CASE("mm4 annotation robustness") {
    auto rng = derive_stream(210, 0);

    SUBCASE("an unchanged GT contributes 0") {
        // dilating an all-foreground GT is the identity
        const BinMap gt(6, 6, true);
        std::vector<std::vector<GrayMap>> maps{{GrayMap(6, 6, 0.9), GrayMap(6, 6, 0.4)}};
        Mm4Params p;
        p.mode = PerturbMode::dilate;
        const MetaResult r =
            mm4_annotation_robustness(make_measure("s"), maps, {gt}, {"a"}, p);
        CHECK(r.value == 0.0);
        CHECK(r.per_image[0].aux == 0.0);
    }

    SUBCASE("a GT-insensitive measure keeps its ranking") {
        std::vector<BinMap> gts;
        std::vector<std::vector<GrayMap>> maps;
        std::vector<std::string> ids;
        for (int i = 0; i < 4; ++i) {
            gts.push_back(testutil::random_gt(10, 10, rng, 0.4));
            maps.push_back({testutil::random_sm(10, 10, rng),
                            testutil::random_sm(10, 10, rng),
                            testutil::random_sm(10, 10, rng)});
            ids.push_back("img" + std::to_string(i));
        }
        const MeasureFn blind = [](const GrayMap& sm, const BinMap&) {
            return mean_value(sm);
        };
        Mm4Params p;
        p.seed = 3;
        const MetaResult r = mm4_annotation_robustness(blind, maps, gts, ids, p);
        CHECK(r.value == 0.0);
    }

    SUBCASE("a constant measure also contributes 0 (identical tied ranks)") {
        std::vector<BinMap> gts{testutil::random_gt(8, 8, rng)};
        std::vector<std::vector<GrayMap>> maps{
            {testutil::random_sm(8, 8, rng), testutil::random_sm(8, 8, rng)}};
        const MeasureFn constant = [](const GrayMap&, const BinMap&) { return 1.0; };
        Mm4Params p;
        const MetaResult r = mm4_annotation_robustness(constant, maps, gts, {"a"}, p);
        CHECK(r.value == 0.0);
        CHECK(r.per_image[0].warning);
    }

    SUBCASE("a pixel-count measure flips where the structure measure holds") {
        // GT: 10x10 block. Eroding shaves the one-pixel boundary band.
        // Model A is a structurally faithful soft map (0.95 on the object).
        // Model B misses 4 interior pixels and smears mass over the top
        // rows, so it is structurally much worse, yet its raw foreground
        // recall (0.96) just beats A's before the perturbation and just
        // loses after (60/64 = 0.9375). The recall measure flips; S keeps
        // its large stable gap in favor of A.
        BinMap gt(16, 16);
        for (int r = 3; r < 13; ++r)
            for (int c = 3; c < 13; ++c) gt.set(r, c, true);

        GrayMap model_a(16, 16, 0.05);
        for (int r = 3; r < 13; ++r)
            for (int c = 3; c < 13; ++c) model_a.at(r, c) = 0.95;

        GrayMap model_b(16, 16, 0.0);
        for (int r = 3; r < 13; ++r)
            for (int c = 3; c < 13; ++c) model_b.at(r, c) = 1.0;
        for (int r = 5; r < 7; ++r)  // interior misses, inside the eroded GT
            for (int c = 5; c < 7; ++c) model_b.at(r, c) = 0.0;
        for (int r = 0; r < 2; ++r)  // scattered background mass
            for (int c = 0; c < 16; ++c) model_b.at(r, c) = 1.0;

        const MeasureFn recall_only = [](const GrayMap& sm, const BinMap& g) {
            double s = 0.0;
            for (size_t i = 0; i < g.values.size(); ++i)
                if (g.values[i]) s += sm.values[i];
            return s / static_cast<double>(g.foreground_count());
        };

        std::vector<std::vector<GrayMap>> maps{{model_a, model_b}};
        Mm4Params p;
        p.mode = PerturbMode::erode;
        p.radius = 1;
        const MetaResult flip =
            mm4_annotation_robustness(recall_only, maps, {gt}, {"img"}, p);
        const MetaResult keep =
            mm4_annotation_robustness(make_measure("s"), maps, {gt}, {"img"}, p);
        CHECK(flip.value > 0.0);
        CHECK(keep.value == 0.0);
    }

    SUBCASE("needs two models") {
        std::vector<std::vector<GrayMap>> maps{{GrayMap(4, 4, 0.5)}};
        Mm4Params p;
        CHECK_THROWS_AS(mm4_annotation_robustness(make_measure("s"), maps,
                                                  {BinMap(4, 4, true)}, {"a"}, p),
                        std::invalid_argument);
    }
}

TEST_CASE("mm5 rank distance") {
    SUBCASE("agreeing top picks give distance 0") {
        const auto a = make_matrix({"x", "y"}, {"m1", "m2", "m3"},
                                   {{0.9, 0.2, 0.1}, {0.8, 0.3, 0.2}});
        const MetaResult r = mm5_rank_distance(a, a);
        CHECK(r.value == 0.0);
        CHECK(r.histogram.at(0) == 2);
        CHECK(r.extras.at("candidates") == 0.0);
    }
    SUBCASE("top map placed third scores distance 2") {
        const auto a = make_matrix({"x"}, {"m1", "m2", "m3"}, {{0.9, 0.5, 0.4}});
        const auto b = make_matrix({"x"}, {"m1", "m2", "m3"}, {{0.3, 0.9, 0.5}});
        const MetaResult r = mm5_rank_distance(a, b);
        CHECK(r.value == 2.0);
        CHECK(r.histogram.at(2) == 1);
    }
    SUBCASE("known permutation of ten models") {
        std::vector<double> row_a(10), row_b(10);
        for (int i = 0; i < 10; ++i) row_a[i] = 1.0 - i * 0.05;  // best is m0
        // B ranks m0 seventh
        for (int i = 0; i < 10; ++i) row_b[i] = 0.9 - i * 0.01;
        row_b[0] = 0.9 - 6 * 0.01 - 0.005;
        std::vector<std::string> models;
        for (int i = 0; i < 10; ++i) models.push_back("m" + std::to_string(i));
        const auto a = make_matrix({"x"}, models, {row_a});
        const auto b = make_matrix({"x"}, models, {row_b});
        CHECK(mm5_rank_distance(a, b).value == 6.0);
    }
}

TEST_CASE("meta values stay in their documented ranges") {
    auto rng = derive_stream(230, 0);
    for (int trial = 0; trial < 10; ++trial) {
        const size_t models = 2 + rng() % 5;
        const size_t images = 2 + rng() % 6;
        std::vector<std::string> image_ids, model_ids;
        std::vector<std::vector<double>> sa, sb;
        for (size_t m = 0; m < models; ++m) model_ids.push_back("m" + std::to_string(m));
        for (size_t i = 0; i < images; ++i) {
            image_ids.push_back("i" + std::to_string(i));
            std::vector<double> ra, rb;
            for (size_t m = 0; m < models; ++m) {
                ra.push_back(uniform01(rng));
                rb.push_back(uniform01(rng));
            }
            sa.push_back(ra);
            sb.push_back(rb);
        }
        const auto a = make_matrix(image_ids, model_ids, sa);
        const auto b = make_matrix(image_ids, model_ids, sb);

        const MetaResult r1 = mm1_application_ranking(a, b);
        CHECK(r1.value >= 0.0);
        CHECK(r1.value <= 2.0);

        const MetaResult r5 = mm5_rank_distance(a, b);
        for (const auto& e : r5.per_image) {
            CHECK(e.value >= 0.0);
            CHECK(e.value <= static_cast<double>(models - 1));
        }
    }

    // mm3 percentage bounds on a small exhaustive run
    std::vector<GrayMap> sms;
    std::vector<BinMap> gts;
    std::vector<std::string> ids;
    for (int i = 0; i < 5; ++i) {
        gts.push_back(testutil::random_gt(6, 6, rng));
        sms.push_back(testutil::random_sm(6, 6, rng));
        ids.push_back("img" + std::to_string(i));
    }
    Mm3Params p;
    p.switches_per_image = 4;
    p.good_fraction = 1.0;
    const MetaResult r3 = mm3_gt_switch(make_measure("s"), sms, gts, ids, p);
    CHECK(r3.value >= 0.0);
    CHECK(r3.value <= 100.0);
}

TEST_CASE("select_study_pairs") {
    const auto a = make_matrix({"p", "q", "r"}, {"m1", "m2"},
                               {{0.9, 0.1}, {0.8, 0.2}, {0.7, 0.3}});
    SUBCASE("no qualifying images is an error") {
        const MetaResult r = mm5_rank_distance(a, a);
        CHECK_THROWS_AS(select_study_pairs(r, a, a, 10, 1.0, 0), std::invalid_argument);
    }
    SUBCASE("qualifying set smaller than the cap is returned whole") {
        const auto b = make_matrix({"p", "q", "r"}, {"m1", "m2"},
                                   {{0.1, 0.9}, {0.2, 0.8}, {0.9, 0.3}});
        const MetaResult r = mm5_rank_distance(a, b);
        const auto pairs = select_study_pairs(r, a, b, 50, 1.0, 7);
        CHECK(pairs.size() == 2);  // p and q flip, r agrees
        for (const auto& p : pairs) {
            CHECK(p.model_a == "m1");
            CHECK(p.model_b == "m2");
            CHECK(p.distance == 1.0);
        }
    }
    SUBCASE("sampling is reproducible and capped") {
        std::vector<std::string> images;
        std::vector<std::vector<double>> sa, sb;
        for (int i = 0; i < 100; ++i) {
            images.push_back("img" + std::to_string(i));
            sa.push_back({0.9, 0.1});
            sb.push_back({0.1, 0.9});
        }
        const auto ma = make_matrix(images, {"m1", "m2"}, sa);
        const auto mb = make_matrix(images, {"m1", "m2"}, sb);
        const MetaResult r = mm5_rank_distance(ma, mb);
        const auto first = select_study_pairs(r, ma, mb, 50, 1.0, 99);
        const auto second = select_study_pairs(r, ma, mb, 50, 1.0, 99);
        REQUIRE(first.size() == 50);
        for (size_t i = 0; i < first.size(); ++i)
            CHECK(first[i].image_id == second[i].image_id);
        const auto other_seed = select_study_pairs(r, ma, mb, 50, 1.0, 7);
        bool differs = false;
        for (size_t i = 0; i < first.size(); ++i)
            if (first[i].image_id != other_seed[i].image_id) differs = true;
        CHECK(differs);
    }
}
