// SPDX-License-Identifier: Apache-2.0
//
// Copyright (C) 2026 The fdmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "fdmimo/errors.hpp"
#include "fdmimo/numerics.hpp"
#include "test_support.hpp"

#include <Eigen/Dense>
#include <doctest.h>

#include <cmath>

using namespace fdmimo;
using namespace fdmimo::numerics;

namespace {

Eigen::MatrixXcd to_eigen(const ComplexMatrix& m) {
    Eigen::MatrixXcd e(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c)
            e(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = m(r, c);
    return e;
}

ComplexMatrix reconstruct(const Svd& s) {
    ComplexMatrix us = s.u;
    for (std::size_t r = 0; r < us.rows(); ++r)
        for (std::size_t c = 0; c < us.cols(); ++c)
            us(r, c) *= s.s[c];
    return us * s.vh;
}

double orthonormality_error(const ComplexMatrix& q) {
    // ||Q^H Q - I||_F for column-orthonormal Q.
    const ComplexMatrix g = adjoint(q) * q;
    return frobenius_norm(g - ComplexMatrix::identity(g.rows()));
}

// 40-term Maclaurin series of J0.
double j0_series(double x) {
    double term = 1.0, sum = 1.0;
    const double q = -x * x / 4.0;
    for (int k = 1; k < 40; ++k) {
        term *= q / (static_cast<double>(k) * k);
        sum += term;
    }
    return sum;
}

} // namespace

TEST_CASE("svd closed-form cases") {
    const Svd id = svd(ComplexMatrix::identity(3));
    for (double v : id.s)
        CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(orthonormality_error(id.u * id.vh) < 1e-12);

    const cplx d[] = {1.0, 3.0, 2.0};
    const Svd dg = svd(ComplexMatrix::diagonal(d));
    CHECK(dg.s[0] == doctest::Approx(3.0));
    CHECK(dg.s[1] == doctest::Approx(2.0));
    CHECK(dg.s[2] == doctest::Approx(1.0));
}

TEST_CASE("svd reconstructs random matrices and matches an Eigen oracle") {
    std::mt19937_64 gen(11);
    const std::size_t shapes[][2] = {{8, 8}, {4, 8}, {8, 4}, {1, 5}, {6, 1}, {3, 3}};
    for (int rep = 0; rep < 20; ++rep)
        for (const auto& sh : shapes) {
            const ComplexMatrix m = test::random_matrix(sh[0], sh[1], gen, rep % 2 ? 1e-4 : 1.0);
            const Svd s = svd(m);
            const double scale = frobenius_norm(m);
            CHECK(frobenius_norm(m - reconstruct(s)) <= 1e-10 * scale);
            CHECK(orthonormality_error(s.u) <= 1e-10 * static_cast<double>(sh[0]));
            CHECK(orthonormality_error(adjoint(s.vh)) <= 1e-10 * static_cast<double>(sh[1]));
            for (std::size_t i = 1; i < s.s.size(); ++i)
                CHECK(s.s[i - 1] >= s.s[i]);
            const Eigen::JacobiSVD<Eigen::MatrixXcd> oracle(to_eigen(m));
            for (std::size_t i = 0; i < s.s.size(); ++i)
                CHECK(std::abs(s.s[i] - oracle.singularValues()(static_cast<Eigen::Index>(i))) <= 1e-12 * scale);
        }
}

TEST_CASE("svd of a rank-deficient matrix keeps an orthonormal basis") {
    std::mt19937_64 gen(12);
    const ComplexMatrix a = test::random_matrix(8, 1, gen);
    const ComplexMatrix b = test::random_matrix(1, 8, gen);
    const ComplexMatrix m = a * b; // rank one
    const Svd s = svd(m);
    CHECK(s.s[1] <= 1e-12 * s.s[0]);
    CHECK(orthonormality_error(s.u) < 1e-10);
    CHECK(orthonormality_error(adjoint(s.vh)) < 1e-10);
    CHECK(frobenius_norm(m - reconstruct(s)) <= 1e-10 * frobenius_norm(m));
    CHECK(svd(ComplexMatrix(4, 4)).s[0] == 0.0);
}

TEST_CASE("hermitian_solve") {
    std::mt19937_64 gen(13);
    const ComplexMatrix b = test::random_matrix(3, 2, gen);
    CHECK(test::max_abs_diff(hermitian_solve(ComplexMatrix::identity(3), b), b) < 1e-15);
    CHECK(test::max_abs_diff(hermitian_solve(2.0 * ComplexMatrix::identity(4), ComplexMatrix::identity(4)),
                             0.5 * ComplexMatrix::identity(4)) < 1e-15);

    for (int rep = 0; rep < 100; ++rep) {
        const std::size_t n = 1 + static_cast<std::size_t>(rep % 8);
        const ComplexMatrix a = test::random_hpd(n, gen);
        const ComplexMatrix rhs = test::random_matrix(n, 3, gen);
        const ComplexMatrix x = hermitian_solve(a, rhs);
        CHECK(frobenius_norm(test::naive_product(a, x) - rhs) <= 1e-9 * frobenius_norm(rhs));
    }

    ComplexMatrix singular = ComplexMatrix::identity(3);
    singular(2, 2) = 1e-14;
    CHECK_THROWS_AS(hermitian_solve(singular, ComplexMatrix::identity(3)), NearSingularError);
    CHECK_THROWS_AS(hermitian_solve(-1.0 * ComplexMatrix::identity(2), ComplexMatrix::identity(2)), NearSingularError);
}

TEST_CASE("log_det_hermitian") {
    CHECK(log_det_hermitian(ComplexMatrix::identity(4)) == doctest::Approx(0.0));
    CHECK(log_det_hermitian(2.0 * ComplexMatrix::identity(3)) == doctest::Approx(3.0).epsilon(1e-15));
    CHECK_THROWS_AS(log_det_hermitian(-1.0 * ComplexMatrix::identity(2)), DomainError);

    std::mt19937_64 gen(14);
    for (int rep = 0; rep < 20; ++rep) {
        const ComplexMatrix a = test::random_hpd(5, gen);
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(to_eigen(a));
        double oracle = 0.0;
        for (Eigen::Index i = 0; i < 5; ++i)
            oracle += std::log2(eig.eigenvalues()(i));
        CHECK(log_det_hermitian(a) == doctest::Approx(oracle).epsilon(1e-8));

        // Block-diagonal additivity.
        const ComplexMatrix a2 = test::random_hpd(3, gen);
        ComplexMatrix blk(8, 8);
        for (std::size_t r = 0; r < 5; ++r)
            for (std::size_t c = 0; c < 5; ++c)
                blk(r, c) = a(r, c);
        for (std::size_t r = 0; r < 3; ++r)
            for (std::size_t c = 0; c < 3; ++c)
                blk(5 + r, 5 + c) = a2(r, c);
        CHECK(std::abs(log_det_hermitian(blk) - log_det_hermitian(a) - log_det_hermitian(a2)) <= 1e-8);
    }
}

TEST_CASE("bessel_j0") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(std::abs(bessel_j0(1.0) - 0.76519769) <= 1e-8);
    CHECK(std::abs(bessel_j0(2.40482556)) <= 1e-7);
    for (double x = 0.0; x <= 10.0; x += 0.01)
        CHECK(std::abs(bessel_j0(x) - j0_series(x)) <= 1e-8);
    for (double x = 0.0; x <= 50.0; x += 0.037) {
        CHECK(std::abs(bessel_j0(x) - std::cyl_bessel_j(0.0, x)) <= 1e-8);
        CHECK(bessel_j0(-x) == bessel_j0(x));
    }
}

TEST_CASE("unit conversions") {
    CHECK(dbm_to_mw(10.0) == doctest::Approx(10.0));
    CHECK(dbm_to_mw(-100.0) == doctest::Approx(1e-10).epsilon(1e-12));
    CHECK(db_to_linear(-110.0) == doctest::Approx(1e-11).epsilon(1e-12));
    CHECK(mw_to_dbm(dbm_to_mw(37.5)) == doctest::Approx(37.5));
    CHECK(linear_to_db(db_to_linear(-3.0)) == doctest::Approx(-3.0));
}
