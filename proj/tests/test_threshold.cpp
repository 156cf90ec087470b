// Copyright 2026 The chrslab authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "chrslab/threshold.hpp"

using namespace chrslab;

namespace {

DensityMatrix maximally_mixed(Eigen::Index d) {
    return DensityMatrix(Mat(Mat::Identity(d, d) / static_cast<double>(d)));
}

BinaryTest constant_test(double p, std::string name) {
    return BinaryTest{std::move(name), [p](const DensityMatrix&) { return p; }};
}

ThresholdInstance planted_instance(int m, double planted_p, double background_p, int planted_idx) {
    ThresholdInstance inst;
    for (int i = 0; i < m; ++i)
        inst.tests.push_back(constant_test(i == planted_idx ? planted_p : background_p,
                                           "t" + std::to_string(i)));
    inst.state_supplier = []() { return maximally_mixed(2); };
    inst.theta = 0.5;
    inst.copies_per_test = 9;
    return inst;
}

}  // namespace

TEST_CASE("amplified test closed forms") {
    CHECK(pi_k_accept_prob(1.0, 30, PiVariant::AllAccept) == doctest::Approx(1.0));
    CHECK(pi_k_accept_prob(0.9, 10, PiVariant::AllAccept) ==
          doctest::Approx(0.34867844).epsilon(1e-7));
    // Majority variant is the binomial tail at half the runs.
    CHECK(pi_k_accept_prob(0.5, 4, PiVariant::HammingMajority) ==
          doctest::Approx(binomial_tail_geq(4, 2, 0.5)).epsilon(1e-12));
    CHECK_THROWS_AS(pi_k_accept_prob(1.5, 3, PiVariant::AllAccept), usage_error);
}

TEST_CASE("soundness algebra on a thousand-point grid") {
    // p^reps >= 1/3 implies p >= 3^(-1/reps), and the threshold dominates
    // 1 - 1/(5 lambda) at reps = 10 lambda.
    for (int lambda : {1, 2, 3, 5, 8}) {
        const int reps = 10 * lambda;
        const double thresh = pi_k_soundness_threshold(reps);
        CHECK(thresh >= 1.0 - 1.0 / (5.0 * lambda));
        for (int i = 0; i <= 1000; ++i) {
            const double p = static_cast<double>(i) / 1000.0;
            if (std::pow(p, reps) >= 1.0 / 3.0) CHECK(p >= thresh - 1e-12);
        }
    }
}

TEST_CASE("planted instance is found and re-verifies") {
    RngStream rng(42);
    int found_planted = 0, found_any = 0, reverified = 0;
    const int runs = 200;
    for (int run = 0; run < runs; ++run) {
        RngStream tr = rng.substream(run);
        const int planted = static_cast<int>(tr.uniform_below(8));
        ThresholdInstance inst = planted_instance(8, 0.8, 0.1, planted);
        ThresholdResult res = threshold_search(inst, tr);
        if (!res.index.has_value()) continue;
        ++found_any;
        if (*res.index == planted) ++found_planted;
        // Re-measure the returned test with 1000 fresh copies.
        int accepts = 0;
        for (int c = 0; c < 1000; ++c)
            if (tr.next_double() < inst.tests[*res.index].accept_prob(maximally_mixed(2)))
                ++accepts;
        if (accepts >= (1.0 / 3.0 - 0.1) * 1000) ++reverified;
    }
    CHECK(found_planted >= runs / 2);
    CHECK(reverified >= static_cast<int>(0.95 * found_any));
}

TEST_CASE("single certain test returns immediately") {
    RngStream rng(1);
    ThresholdInstance inst = planted_instance(1, 1.0, 0.0, 0);
    ThresholdResult res = threshold_search(inst, rng);
    REQUIRE(res.index.has_value());
    CHECK(*res.index == 0);
    CHECK(res.rounds_used == 1);
    CHECK(res.copies_used == 9);
}

TEST_CASE("round cap exhaustion reports not-found") {
    RngStream rng(2);
    ThresholdInstance inst = planted_instance(4, 0.0, 0.0, 0);
    ThresholdResult res = threshold_search(inst, rng);
    CHECK_FALSE(res.index.has_value());
    CHECK(res.rounds_used == 40);
}

TEST_CASE("theta outside the quoted window is rejected") {
    RngStream rng(3);
    ThresholdInstance inst = planted_instance(2, 1.0, 0.0, 0);
    inst.theta = 0.7;
    CHECK_THROWS_AS(threshold_search(inst, rng), usage_error);
    inst.theta = 0.3;
    CHECK_THROWS_AS(threshold_search(inst, rng), usage_error);
}

TEST_CASE("joint coherent threshold measurement matches the binomial tail") {
    RngStream rng(5);
    for (int rep = 0; rep < 5; ++rep) {
        PureState copy = sample_haar_state(4, rng);
        PureState probe = sample_haar_state(4, rng);
        MeasurementEffect eff = MeasurementEffect::projector(probe.projector());
        const double p = std::norm(copy.overlap(probe));
        for (int copies : {2, 3, 4}) {
            for (int min_acc = 0; min_acc <= copies; ++min_acc) {
                const double joint = exact_joint_threshold_prob(copy, eff, copies, min_acc);
                CHECK(joint ==
                      doctest::Approx(binomial_tail_geq(copies, min_acc, p)).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("toy owsg correctness") {
    ChrsFamily family(10, 3, 3);
    ToyOwsg owsg(3, family);
    for (int k = 0; k < owsg.key_count(); ++k) {
        const double p = owsg.verifier_accept_prob(k, owsg.state_for_key(k));
        CHECK(p == doctest::Approx(1.0).epsilon(1e-12));
    }

    ToyOwsg mixed(3, family, ToyOwsgVariant::PauliMixed);
    const double d = 8.0;
    const double expect = 1.0 - 0.05 * (1.0 - 1.0 / d);
    for (int k = 0; k < mixed.key_count(); ++k)
        CHECK(mixed.verifier_accept_prob(k, mixed.state_for_key(k)) ==
              doctest::Approx(expect).epsilon(1e-10));
}

TEST_CASE("wrong keys overlap near 1/2^n over fresh families") {
    RunningStats overlap;
    RngStream rng(17);
    for (int s = 0; s < 300; ++s) {
        ChrsFamily family(9000 + s, 3, 3);
        ToyOwsg owsg(3, family);
        const int a = static_cast<int>(rng.uniform_below(8));
        int b = static_cast<int>(rng.uniform_below(8));
        if (a == b) b = (b + 1) % 8;
        overlap.add(owsg.verifier_accept_prob(a, owsg.state_for_key(b)));
    }
    CHECK(std::abs(overlap.mean - 1.0 / 8.0) < 4 * overlap.stderr_mean());
}

TEST_CASE("distinct keys map to distinct states") {
    ChrsFamily family(11, 2, 2);
    ToyOwsg owsg(2, family);
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b)
            CHECK(std::abs(owsg.key_state(a).overlap(owsg.key_state(b))) < 1.0 - 1e-6);
}

TEST_CASE("attack breaks the toy owsg") {
    ChrsFamily family(77, 3, 3);
    ToyOwsg owsg(3, family);
    RngStream rng(123);
    OwsgAttackReport report = owsg_attack_experiment(owsg, 3, 30, rng);
    CHECK(report.success_rate >= 0.5);
    CHECK(report.mean_reverify >= report.soundness_bound);
}

TEST_CASE("degenerate instance: identical tests all verify") {
    // All keys produce the same state: any returned index re-verifies.
    RngStream rng(31);
    ThresholdInstance inst = planted_instance(4, 0.9, 0.9, 0);
    ThresholdResult res = threshold_search(inst, rng);
    REQUIRE(res.index.has_value());
    CHECK(inst.tests[*res.index].accept_prob(maximally_mixed(2)) == doctest::Approx(0.9));
}
