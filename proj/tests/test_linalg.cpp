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

#include "chrslab/haar.hpp"
#include "chrslab/linalg.hpp"
#include "chrslab/rng.hpp"

using namespace chrslab;

namespace {

Mat haar_unitary(Eigen::Index d, RngStream& rng) {
    Mat g(d, d);
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j) g(i, j) = rng.next_complex_gaussian();
    Eigen::HouseholderQR<Mat> qr(g);
    Mat q = qr.householderQ();
    Mat r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (Eigen::Index i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
    return q;
}

PureState plus_state() {
    Vec v(2);
    v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    return PureState(v);
}

}  // namespace

TEST_CASE("tensor products of basis states and operators") {
    PureState zero = PureState::basis(2, 0);
    PureState one = PureState::basis(2, 1);
    PureState zo = tensor_product(zero, one);
    Vec expect(4);
    expect << 0, 1, 0, 0;
    CHECK((zo.amplitudes() - expect).norm() == doctest::Approx(0.0));

    Mat id4 = tensor_product(Mat::Identity(2, 2), Mat::Identity(2, 2));
    CHECK((id4 - Mat::Identity(4, 4)).norm() == doctest::Approx(0.0));

    PureState pp = tensor_product(plus_state(), plus_state());
    for (int i = 0; i < 4; ++i)
        CHECK(std::abs(pp.amplitudes()[i] - cxd(0.5, 0.0)) < 1e-12);
}

TEST_CASE("partial trace recovers factors and marginals") {
    PureState zero = PureState::basis(2, 0);
    PureState one = PureState::basis(2, 1);
    MultiRegisterState s01 = MultiRegisterState::product(
        {{"a", 2}, {"b", 2}}, {zero.amplitudes(), one.amplitudes()});
    DensityMatrix ra = partial_trace(s01, {"a"});
    CHECK(trace_distance(ra, DensityMatrix::from_pure(zero)) < 1e-12);

    Vec bell(4);
    bell << 1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0);
    MultiRegisterState sbell({{"a", 2}, {"b", 2}}, bell);
    DensityMatrix mixed = partial_trace(sbell, {"b"});
    CHECK((mixed.matrix() - 0.5 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);

    RngStream rng(11);
    PureState x = sample_haar_state(4, rng);
    PureState y = sample_haar_state(2, rng);
    MultiRegisterState joint = MultiRegisterState::product(
        {{"x", 4}, {"y", 2}}, {x.amplitudes(), y.amplitudes()});
    CHECK(trace_distance(partial_trace(joint, {"x"}), DensityMatrix::from_pure(x)) < 1e-12);

    CHECK_THROWS_AS(partial_trace(joint, {}), usage_error);
}

TEST_CASE("partial trace with explicit dims") {
    RngStream rng(5);
    PureState x = sample_haar_state(2, rng);
    PureState y = sample_haar_state(3, rng);
    Mat joint = tensor_product(x.projector(), y.projector());
    DensityMatrix back = partial_trace(DensityMatrix(joint), {2, 3}, {0});
    CHECK(trace_distance(back, DensityMatrix::from_pure(x)) < 1e-12);
    DensityMatrix back2 = partial_trace(DensityMatrix(joint), {2, 3}, {1});
    CHECK(trace_distance(back2, DensityMatrix::from_pure(y)) < 1e-12);
}

TEST_CASE("trace distance closed forms") {
    DensityMatrix z = DensityMatrix::from_pure(PureState::basis(2, 0));
    DensityMatrix o = DensityMatrix::from_pure(PureState::basis(2, 1));
    DensityMatrix p = DensityMatrix::from_pure(plus_state());
    CHECK(trace_distance(z, z) == doctest::Approx(0.0));
    CHECK(trace_distance(z, o) == doctest::Approx(1.0));
    CHECK(trace_distance(z, p) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    CHECK_THROWS_AS(trace_distance(z.matrix(), Mat::Identity(4, 4)), usage_error);
}

TEST_CASE("fidelity closed forms") {
    DensityMatrix z = DensityMatrix::from_pure(PureState::basis(2, 0));
    DensityMatrix o = DensityMatrix::from_pure(PureState::basis(2, 1));
    DensityMatrix mixed(Mat(0.5 * Mat::Identity(2, 2)));
    CHECK(fidelity(z, z) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(fidelity(z, o) == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(fidelity(z, mixed) == doctest::Approx(0.5).epsilon(1e-9));

    // Pure inputs reduce to |<phi|psi>|^2.
    RngStream rng(3);
    for (int rep = 0; rep < 10; ++rep) {
        PureState a = sample_haar_state(8, rng);
        PureState b = sample_haar_state(8, rng);
        const double f = fidelity(DensityMatrix::from_pure(a), DensityMatrix::from_pure(b));
        CHECK(f == doctest::Approx(std::norm(a.overlap(b))).epsilon(1e-8));
    }
}

TEST_CASE("apply_unitary_on basics and the first-qubit Z twist") {
    Mat x01(2, 2), z(2, 2);
    x01 << 0, 1, 1, 0;
    z << 1, 0, 0, -1;

    MultiRegisterState s({{"q", 2}}, PureState::basis(2, 0).amplitudes());
    MultiRegisterState same = apply_unitary_on(s, Mat::Identity(2, 2), {"q"});
    CHECK((same.amplitudes() - s.amplitudes()).norm() < 1e-12);
    MultiRegisterState flipped = apply_unitary_on(s, x01, {"q"});
    CHECK(std::abs(flipped.amplitudes()[1] - cxd(1, 0)) < 1e-12);

    Vec v(4);
    v << 1.0 / std::sqrt(2.0), 0, 1.0 / std::sqrt(2.0), 0;  // (|00> + |10>)/sqrt(2)
    MultiRegisterState two({{"q1", 2}, {"q2", 2}}, v);
    MultiRegisterState twisted = apply_unitary_on(two, z, {"q1"});
    Vec expect(4);
    expect << 1.0 / std::sqrt(2.0), 0, -1.0 / std::sqrt(2.0), 0;
    CHECK((twisted.amplitudes() - expect).norm() < 1e-12);

    CHECK_THROWS_AS(apply_unitary_on(two, Mat::Identity(3, 3), {"q1"}), usage_error);
    Mat not_unitary = Mat::Identity(2, 2) * 2.0;
    CHECK_THROWS_AS(apply_unitary_on(two, not_unitary, {"q1"}), usage_error);
    CHECK_THROWS_AS(apply_unitary_on(two, z, {"nope"}), usage_error);
}

TEST_CASE("pauli strings: identity, Z, and exhaustive small-n properties") {
    CHECK((pauli_string(3, "III") - Mat::Identity(8, 8)).norm() < 1e-12);
    Mat z1 = pauli_string(1, "Z");
    CHECK(z1(0, 0) == cxd(1, 0));
    CHECK(z1(1, 1) == cxd(-1, 0));
    CHECK_THROWS_AS(pauli_string(2, "AZ"), usage_error);

    const char labels[] = {'I', 'X', 'Y', 'Z'};
    for (int n = 1; n <= 3; ++n) {
        const int count = 1 << (2 * n);
        for (int code = 0; code < count; ++code) {
            std::string spec;
            int c = code;
            for (int q = 0; q < n; ++q) {
                spec.push_back(labels[c & 3]);
                c >>= 2;
            }
            Mat p = pauli_string(n, spec);
            CHECK((p * p - Mat::Identity(p.rows(), p.cols())).cwiseAbs().maxCoeff() < 1e-12);
            const bool all_i = spec.find_first_not_of('I') == std::string::npos;
            if (!all_i) CHECK(std::abs(p.trace()) < 1e-12);
        }
    }
}

TEST_CASE("binary measurement: collapse and coherent modes") {
    MeasurementEffect p0 = MeasurementEffect::projector(PureState::basis(2, 0).projector());

    MultiRegisterState zero({{"q", 2}}, PureState::basis(2, 0).amplitudes());
    auto r0 = measure_binary(zero, p0, {"q"}, MeasureMode::Collapse);
    CHECK(r0.p_accept == doctest::Approx(1.0));

    MultiRegisterState plus({{"q", 2}}, plus_state().amplitudes());
    auto rp = measure_binary(plus, p0, {"q"}, MeasureMode::Collapse);
    CHECK(rp.p_accept == doctest::Approx(0.5));
    REQUIRE(rp.post_accept.has_value());
    CHECK(std::abs(rp.post_accept->amplitudes()[0] - cxd(1, 0)) < 1e-12);

    auto rc = measure_binary(plus, p0, {"q"}, MeasureMode::Coherent, "flag");
    REQUIRE(rc.coherent.has_value());
    const Vec& joint = rc.coherent->amplitudes();
    // (|0>|1>_anc + |1>|0>_anc)/sqrt(2): index 1 = (q=0, anc=1), index 2 = (q=1, anc=0)
    CHECK(std::abs(joint[1] - cxd(1.0 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(joint[2] - cxd(1.0 / std::sqrt(2.0), 0)) < 1e-12);
    CHECK(std::abs(joint[0]) < 1e-12);
    CHECK(std::abs(joint[3]) < 1e-12);

    Mat half = 0.5 * Mat::Identity(2, 2);
    MeasurementEffect soft = MeasurementEffect::from_operator(half);
    CHECK_THROWS_AS(measure_binary(plus, soft, {"q"}, MeasureMode::Coherent), usage_error);
}

TEST_CASE("unitary invariance of trace distance") {
    RngStream rng(17);
    for (Eigen::Index d : {2, 4, 16}) {
        Mat a = Mat::Zero(d, d), b = Mat::Zero(d, d);
        PureState pa = sample_haar_state(d, rng), pb = sample_haar_state(d, rng);
        PureState qa = sample_haar_state(d, rng), qb = sample_haar_state(d, rng);
        a = 0.5 * pa.projector() + 0.5 * pb.projector();
        b = 0.5 * qa.projector() + 0.5 * qb.projector();
        Mat u = haar_unitary(d, rng);
        const double before = trace_distance(a, b);
        const double after = trace_distance(Mat(u * a * u.adjoint()), Mat(u * b * u.adjoint()));
        CHECK(std::abs(before - after) < 1e-9);
    }
}

TEST_CASE("Fuchs-van de Graaf sandwich on random pure pairs") {
    RngStream rng(23);
    for (int rep = 0; rep < 25; ++rep) {
        PureState a = sample_haar_state(8, rng);
        PureState b = sample_haar_state(8, rng);
        DensityMatrix ra = DensityMatrix::from_pure(a), rb = DensityMatrix::from_pure(b);
        const double td = trace_distance(ra, rb);
        const double f = fidelity(ra, rb);
        // The eigensolver route puts ~1e-8 of noise on F (square roots of
        // noise-floor eigenvalues); td is exact to machine precision.
        CHECK(1.0 - std::sqrt(f) <= td + 1e-7);
        CHECK(td <= std::sqrt(1.0 - f) + 1e-7);
        // For pure pairs the upper bound is an identity against the exact overlap.
        CHECK(td == doctest::Approx(std::sqrt(1.0 - std::norm(a.overlap(b)))).epsilon(1e-10));
    }
}

TEST_CASE("measurement branch bookkeeping matches collapse statistics") {
    RngStream rng(29);
    for (int rep = 0; rep < 10; ++rep) {
        PureState psi = sample_haar_state(4, rng);
        PureState probe = sample_haar_state(4, rng);
        MeasurementEffect e = MeasurementEffect::projector(probe.projector());
        MultiRegisterState s({{"q", 4}}, psi.amplitudes());

        auto col = measure_binary(s, e, {"q"}, MeasureMode::Collapse);
        auto coh = measure_binary(s, e, {"q"}, MeasureMode::Coherent);
        CHECK(col.p_accept >= -1e-12);
        CHECK(col.p_accept <= 1.0 + 1e-12);

        // Collapsing the coherent record must reproduce collapse-mode statistics.
        REQUIRE(coh.coherent.has_value());
        MeasurementEffect anc1 = MeasurementEffect::projector(PureState::basis(2, 1).projector());
        auto readout = measure_binary(*coh.coherent, anc1, {"anc"}, MeasureMode::Collapse);
        CHECK(readout.p_accept == doctest::Approx(col.p_accept).epsilon(1e-10));
        if (col.p_accept > 1e-9 && readout.post_accept.has_value()) {
            DensityMatrix from_coh = partial_trace(*readout.post_accept, {"q"});
            DensityMatrix from_col = partial_trace(*col.post_accept, {"q"});
            CHECK(trace_distance(from_coh, from_col) < 1e-10);
        }
    }
}

TEST_CASE("state invariant validation") {
    Vec bad(2);
    bad << 1.0, 1.0;
    CHECK_THROWS_AS(PureState{bad}, usage_error);
    Mat not_herm(2, 2);
    not_herm << 1, 1, 0, 0;
    CHECK_THROWS_AS(DensityMatrix{not_herm}, usage_error);
    RngStream rng(1);
    CHECK_THROWS_AS(sample_haar_state(1, rng), usage_error);
}

TEST_CASE("measurement effect validation") {
    Mat too_big = 2.0 * PureState::basis(2, 0).projector();
    CHECK_THROWS_AS(MeasurementEffect::from_operator(too_big), usage_error);
    Mat negative = -0.5 * Mat::Identity(2, 2);
    CHECK_THROWS_AS(MeasurementEffect::from_operator(negative), usage_error);
    Mat soft = 0.5 * Mat::Identity(2, 2);
    CHECK_FALSE(MeasurementEffect::from_operator(soft).is_projector());
    CHECK_THROWS_AS(MeasurementEffect::projector(soft), usage_error);

    // Effect dimension must match the measured registers.
    MultiRegisterState st({{"q", 4}}, PureState::basis(4, 0).amplitudes());
    MeasurementEffect qubit = MeasurementEffect::projector(PureState::basis(2, 0).projector());
    CHECK_THROWS_AS(measure_binary(st, qubit, {"q"}, MeasureMode::Collapse), usage_error);
}
