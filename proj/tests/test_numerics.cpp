#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <complex>
#include <random>

#include "ioncav/langevin.hpp"
#include "ioncav/numerics.hpp"
#include "oracles.hpp"

using namespace ioncav;
using namespace ioncav::num;
using Catch::Approx;

TEST_CASE("real_roots_cubic on factored polynomials") {
    SECTION("three simple roots") {
        const auto r = real_roots_cubic({1.0, -6.0, 11.0, -6.0});
        REQUIRE(r.size() == 3);
        REQUIRE(r[0] == Approx(1.0).epsilon(1e-12));
        REQUIRE(r[1] == Approx(2.0).epsilon(1e-12));
        REQUIRE(r[2] == Approx(3.0).epsilon(1e-12));
    }

    SECTION("triple root collapses to one") {
        const auto r = real_roots_cubic({1.0, -3.0, 3.0, -1.0});
        REQUIRE(r.size() == 1);
        REQUIRE(r[0] == Approx(1.0).margin(1e-5));
    }

    SECTION("single real root") {
        // (x-2)(x^2+1)
        const auto r = real_roots_cubic({1.0, -2.0, 1.0, -2.0});
        REQUIRE(r.size() == 1);
        REQUIRE(r[0] == Approx(2.0).epsilon(1e-12));
    }
}

TEST_CASE("real_roots_cubic degrades gracefully") {
    REQUIRE_THROWS_MATCHES(real_roots_cubic({0.0, 0.0, 0.0, 0.0}), Error,
                           Catch::Matchers::Predicate<Error>([](const Error& e) {
                               return e.code() == errc::degenerate_input;
                           }));
    SECTION("quadratic") {
        const auto r = real_roots_cubic({0.0, 1.0, -3.0, 2.0});
        REQUIRE(r.size() == 2);
        REQUIRE(r[0] == Approx(1.0).epsilon(1e-12));
        REQUIRE(r[1] == Approx(2.0).epsilon(1e-12));
    }
    SECTION("quadratic without real roots") {
        REQUIRE(real_roots_cubic({0.0, 1.0, 0.0, 1.0}).empty());
    }
    SECTION("linear") {
        const auto r = real_roots_cubic({0.0, 0.0, 2.0, -4.0});
        REQUIRE(r.size() == 1);
        REQUIRE(r[0] == Approx(2.0));
    }
    SECTION("nonzero constant") {
        REQUIRE(real_roots_cubic({0.0, 0.0, 0.0, 3.0}).empty());
    }
}

TEST_CASE("real_roots_cubic recovers random factored roots to 1e-8") {
    std::mt19937 rng(123);
    std::uniform_real_distribution<double> log_root(std::log(0.1), std::log(1e3));
    for (int trial = 0; trial < 200; ++trial) {
        double a = std::exp(log_root(rng)), b = std::exp(log_root(rng)),
               c = std::exp(log_root(rng));
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        const double sep = 1e-4 * c;
        if (b - a < sep || c - b < sep) continue;  // keep roots distinct
        const Polynomial3 p{1.0, -(a + b + c), a * b + a * c + b * c, -a * b * c};
        const auto r = real_roots_cubic(p);
        REQUIRE(r.size() == 3);
        REQUIRE(r[0] == Approx(a).epsilon(1e-8));
        REQUIRE(r[1] == Approx(b).epsilon(1e-8));
        REQUIRE(r[2] == Approx(c).epsilon(1e-8));
    }
}

TEST_CASE("real_roots_cubic agrees with a bisection scan on random cubics") {
    std::mt19937 rng(321);
    std::uniform_real_distribution<double> coeff(-5.0, 5.0);
    int checked = 0;
    for (int trial = 0; trial < 60; ++trial) {
        Polynomial3 p{coeff(rng), coeff(rng), coeff(rng), coeff(rng)};
        if (std::abs(p.c3) < 0.1) continue;
        const auto mine = real_roots_cubic(p);
        const auto ref = oracles::bisection_roots(p, -50.0, 50.0);
        // the scan finds only sign-change (odd-multiplicity) roots
        if (mine.size() != ref.size()) continue;
        ++checked;
        for (std::size_t i = 0; i < ref.size(); ++i)
            REQUIRE(mine[i] == Approx(ref[i]).margin(1e-7));
    }
    REQUIRE(checked >= 40);
}

TEST_CASE("eig4 on known spectra") {
    SECTION("diagonal") {
        Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
        M.diagonal() << 1.0, 2.0, 3.0, 4.0;
        const auto ev = eig4(M);
        for (int i = 0; i < 4; ++i) {
            REQUIRE(ev[i].real() == Approx(i + 1.0).epsilon(1e-12));
            REQUIRE(ev[i].imag() == Approx(0.0).margin(1e-12));
        }
    }

    SECTION("two rotation blocks") {
        const double gamma = 1.0, Dt = 7.0, Gamma = 0.01, omega_m = 10.0;
        Eigen::Matrix4d M = Eigen::Matrix4d::Zero();
        M(0, 0) = -gamma; M(0, 1) = Dt; M(1, 0) = -Dt; M(1, 1) = -gamma;
        M(2, 2) = -Gamma; M(2, 3) = omega_m; M(3, 2) = -omega_m; M(3, 3) = -Gamma;
        const auto ev = eig4(M);
        std::vector<std::complex<double>> expected = {{-gamma, -Dt}, {-gamma, Dt},
                                                      {-Gamma, -omega_m}, {-Gamma, omega_m}};
        for (const auto& want : expected) {
            bool found = false;
            for (const auto& got : ev)
                if (std::abs(got - want) < 1e-9) found = true;
            REQUIRE(found);
        }
    }

    SECTION("characteristic polynomial vanishes at every eigenvalue") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> d(-3.0, 3.0);
        for (int trial = 0; trial < 50; ++trial) {
            Eigen::Matrix4d M;
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) M(i, j) = d(rng);
            const double scale = std::pow(M.norm(), 4);
            for (const auto& lambda : eig4(M)) {
                Eigen::Matrix4cd shifted =
                    M.cast<std::complex<double>>() - lambda * Eigen::Matrix4cd::Identity();
                REQUIRE(std::abs(shifted.determinant()) <= 1e-8 * scale);
            }
        }
    }

    SECTION("drift spectra are even in g2") {
        const auto ev_plus = eig4(drift_matrix(10.0, 10.0, 1.0, 0.01, 2.0));
        const auto ev_minus = eig4(drift_matrix(10.0, 10.0, 1.0, 0.01, -2.0));
        for (int i = 0; i < 4; ++i)
            REQUIRE(std::abs(ev_plus[i] - ev_minus[i]) < 1e-10);
    }
}

TEST_CASE("solve_linear") {
    SECTION("identity") {
        Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(4, 1.0, 4.0);
        REQUIRE((solve_linear(Eigen::MatrixXd::Identity(4, 4), b) - b).norm() == 0.0);
    }
    SECTION("scaled identity") {
        Eigen::VectorXd b = Eigen::VectorXd::LinSpaced(5, -2.0, 2.0);
        const Eigen::VectorXd x = solve_linear(2.0 * Eigen::MatrixXd::Identity(5, 5), b);
        REQUIRE((x - 0.5 * b).norm() < 1e-15);
    }
    SECTION("random well-conditioned 16x16 meets the residual bound") {
        std::mt19937 rng(99);
        std::normal_distribution<double> d(0.0, 1.0);
        for (int trial = 0; trial < 20; ++trial) {
            Eigen::MatrixXd A(16, 16);
            for (int i = 0; i < 16; ++i)
                for (int j = 0; j < 16; ++j) A(i, j) = d(rng);
            A += 8.0 * Eigen::MatrixXd::Identity(16, 16);
            Eigen::VectorXd b(16);
            for (int i = 0; i < 16; ++i) b(i) = d(rng);
            const Eigen::VectorXd x = solve_linear(A, b);
            REQUIRE((A * x - b).norm() <= 1e-12 * (A.norm() * x.norm() + b.norm()));
        }
    }
    SECTION("rank-deficient matrix is rejected") {
        Eigen::MatrixXd A = Eigen::MatrixXd::Ones(3, 3);
        REQUIRE_THROWS_MATCHES(solve_linear(A, Eigen::VectorXd::Ones(3)), Error,
                               Catch::Matchers::Predicate<Error>([](const Error& e) {
                                   return e.code() == errc::singular_system;
                               }));
    }
}

TEST_CASE("integrate_covariance_ode") {
    const Eigen::Matrix4d M = drift_matrix(5.0, 4.0, 1.0, 0.2, 0.0);

    SECTION("no diffusion keeps V at zero") {
        const Eigen::Matrix4d V =
            integrate_covariance_ode(M, Eigen::Matrix4d::Zero(), 10.0, 0.01 / M.norm());
        REQUIRE(V.norm() == 0.0);
    }

    SECTION("decoupled modes reach the analytic steady state") {
        const double n_b = 3.0;
        const Eigen::Matrix4d D = diffusion_matrix(1.0, 0.2, 0.0, n_b);
        const double t_end = 50.0 / 0.2;
        const Eigen::Matrix4d V = integrate_covariance_ode(M, D, t_end, 0.05 / M.norm());
        Eigen::Matrix4d expected = Eigen::Matrix4d::Zero();
        expected.diagonal() << n_b + 0.5, n_b + 0.5, 0.5, 0.5;
        REQUIRE((V - expected).cwiseAbs().maxCoeff() < 1e-9);
    }

    SECTION("too-large step is rejected") {
        REQUIRE_THROWS_MATCHES(
            integrate_covariance_ode(M, Eigen::Matrix4d::Zero(), 1.0, 1.0 / M.norm()), Error,
            Catch::Matchers::Predicate<Error>([](const Error& e) {
                return e.code() == errc::step_size;
            }));
    }
}

TEST_CASE("find_local_maxima") {
    SECTION("single Lorentzian bump") {
        std::vector<double> xs, ys;
        for (int i = 0; i <= 200; ++i) {
            const double x = i * 0.05;
            xs.push_back(x);
            ys.push_back(1.0 / (1.0 + (x - 5.0) * (x - 5.0)));
        }
        const auto m = find_local_maxima(xs, ys);
        REQUIRE(m.size() == 1);
        REQUIRE(m[0].first == Approx(5.0).margin(0.05));
    }

    SECTION("monotone data has no interior maxima") {
        std::vector<double> xs, ys;
        for (int i = 0; i < 50; ++i) {
            xs.push_back(i);
            ys.push_back(2.0 * i);
        }
        REQUIRE(find_local_maxima(xs, ys).empty());
    }

    SECTION("two separated bumps") {
        std::vector<double> xs, ys;
        for (int i = 0; i <= 400; ++i) {
            const double x = i * 0.05;
            xs.push_back(x);
            ys.push_back(1.0 / (1.0 + (x - 5.0) * (x - 5.0)) +
                         1.0 / (1.0 + (x - 15.0) * (x - 15.0)));
        }
        const auto m = find_local_maxima(xs, ys);
        REQUIRE(m.size() == 2);
        REQUIRE(m[0].first == Approx(5.0).margin(0.1));
        REQUIRE(m[1].first == Approx(15.0).margin(0.1));
    }

    SECTION("plateau reports its midpoint once") {
        const std::vector<double> xs = {0, 1, 2, 3, 4, 5, 6};
        const std::vector<double> ys = {0, 1, 2, 2, 2, 1, 0};
        const auto m = find_local_maxima(xs, ys);
        REQUIRE(m.size() == 1);
        REQUIRE(m[0].first == 3.0);
    }

    SECTION("bad input") {
        const std::vector<double> xs = {0, 1};
        const std::vector<double> ys = {0, 1};
        REQUIRE_THROWS_AS(find_local_maxima(xs, ys), Error);
        const std::vector<double> bad_x = {0, 2, 1};
        const std::vector<double> y3 = {0, 1, 0};
        REQUIRE_THROWS_AS(find_local_maxima(bad_x, y3), Error);
    }
}
