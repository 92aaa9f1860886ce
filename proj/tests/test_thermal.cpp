#include <doctest.h>

#include <cmath>

#include "recirc/assembly.hpp"
#include "recirc/linalg.hpp"
#include "recirc/thermal.hpp"
#include "support/oracles.hpp"

using namespace recirc;

TEST_CASE("mollifier: support, center value, normalization constant") {
    CHECK(mollifier_value(1.0, 1.0) == 0.0);
    CHECK(mollifier_value(-1.0, 1.0) == 0.0);
    CHECK(mollifier_value(2.5, 2.5) == 0.0);
    const double c = mollifier_constant();
    CHECK(mollifier_value(0.0, 1.0) == doctest::Approx(c).epsilon(1e-14));
    CHECK(mollifier_value(0.0, 2.0) == doctest::Approx(c / 2.0).epsilon(1e-14));
    CHECK_THROWS_AS(mollifier_value(0.0, 0.0), param_error);

    // independent adaptive-quadrature oracle for the unitary condition
    const double integral = oracle::adaptive_simpson(
        [](double t) { return std::abs(t) < 1.0 ? std::exp(t * t / (t * t - 1.0)) : 0.0; }, -1.0,
        1.0, 1e-14);
    CHECK(c == doctest::Approx(1.0 / integral).epsilon(1e-10));
    CHECK(c == doctest::Approx(0.8285).epsilon(2e-4));
}

TEST_CASE("mollifier mass is 1 across six decades of eps") {
    for (const double eps : {1e-3, 1e-2, 0.1, 1.0, 10.0, 100.0, 1000.0}) {
        const double mass = oracle::adaptive_simpson(
            [eps](double t) { return mollifier_value(t, eps); }, -eps, eps, 1e-13 * eps);
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
    }
}

TEST_CASE("collector mean: constant, linear, quadratic traces") {
    PumpLayout l;
    l.pairs.push_back({{Side::Bottom, 0.5, 1.5}, {Side::Left, 0.25, 0.75}});
    const Mesh m = build_rect_mesh(2.0, 1.0, 0.25, l);
    const DofMap dm = make_dof_map(m);
    const BoundaryTag c0{BoundaryTag::C, 0};

    const Vector constant(dm.scalar_q2_count(), 283.0);
    CHECK(collector_mean(m, dm, constant, c0) == doctest::Approx(283.0).epsilon(1e-13));

    const Vector linear = interpolate_scalar(dm, [](Vec2 p) { return 5.0 + 2.0 * p.x; });
    // midpoint of [0.5, 1.5] is x = 1
    CHECK(collector_mean(m, dm, linear, c0) == doctest::Approx(7.0).epsilon(1e-13));

    const Vector quad = interpolate_scalar(dm, [](Vec2 p) { return (p.x - 0.5) * (p.x - 0.5); });
    // mean over [0.5, 1.5] of (x - 0.5)^2 is 1/3
    CHECK(collector_mean(m, dm, quad, c0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    CHECK_THROWS_AS(collector_mean(m, dm, constant, BoundaryTag{BoundaryTag::C, 3}), param_error);
}

TEST_CASE("injector trace convolution") {
    const MollifierSpec spec = make_mollifier(0.5);

    {
        HistorySeries h{{-10.0, 10.0}, {283.0, 283.0}};
        CHECK(injector_trace_convolution(h, 3.0, spec) == doctest::Approx(283.0).epsilon(1e-9));
    }
    {
        // cold start: only the s <= 0 branch contributes
        HistorySeries h{{0.0, 10.0}, {285.5, 285.5}};
        CHECK(injector_trace_convolution(h, 0.0, spec) == doctest::Approx(285.5).epsilon(1e-9));
    }
    {
        // ramp: even mollifier centered at t - eps
        HistorySeries h{{-10.0, 10.0}, {-10.0, 10.0}};
        const double t = 3.0;
        const double got = injector_trace_convolution(h, t, spec);
        CHECK(got == doctest::Approx(t - 0.5).epsilon(1e-6));

        // brute-force fine-grid oracle
        const double lo = t - 2.0 * spec.epsilon;
        const int n = 2000000;
        double acc = 0.0;
        const double dw = (t - lo) / n;
        for (int i = 0; i <= n; ++i) {
            const double s = lo + i * dw;
            const double w = (i == 0 || i == n) ? 0.5 : 1.0;
            acc += w * dw * mollifier_value(t - spec.epsilon - s, spec.epsilon) * h.eval(s);
        }
        CHECK(got == doctest::Approx(acc).epsilon(1e-8));
    }
}

namespace {

PhysicalParams insulated_params(double b2S, double K) {
    PhysicalParams p;
    p.K = K;
    p.b1N = 0.0;
    p.b1S = 0.0;
    p.b2S = b2S;
    p.theta0 = 283.0;
    return p;
}

}  // namespace

TEST_CASE("equilibrium: uniform data is an exact steady state") {
    const Mesh m = build_rect_mesh(2.0, 1.0, 0.25, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    PhysicalParams params;
    params.b2S = 0.0;
    params.theta_N = 283.0;
    params.theta_S = 283.0;
    ThermalBcData bc;
    bc.theta_N = BoundaryData::constant(283.0);
    bc.theta_S = BoundaryData::constant(283.0);
    bc.T_r = BoundaryData::constant(283.0);

    Vector theta(dm.scalar_q2_count(), 283.0);
    const Vector v(dm.vector_q2_count(), 0.0);
    const ThermalStepper stepper(m, dm, params);
    for (int n = 0; n < 3; ++n) {
        auto [next, rep] = stepper.step(theta, v, {}, bc, 1800.0, n == 0);
        CHECK(rep.converged);
        for (double t : next) CHECK(std::abs(t - 283.0) <= 1e-9);
        theta = std::move(next);
    }
}

TEST_CASE("radiative relaxation toward T_r matches the lumped RK4 oracle") {
    const double b2S = 1e-10, Tr = 300.0, dt = 1.0;
    const Mesh m = build_rect_mesh(1.0, 1.0, 1.0 / 16.0, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    const PhysicalParams params = insulated_params(b2S, 1.0);
    ThermalBcData bc;
    bc.theta_N = BoundaryData::constant(0.0);
    bc.theta_S = BoundaryData::constant(0.0);
    bc.T_r = BoundaryData::constant(Tr);

    const double muS = boundary_measure(m, {BoundaryTag::S, -1});
    const double area = 1.0;
    const auto ode = [&](double, double y) {
        return b2S * muS / area * (Tr * Tr * Tr * Tr - y * y * y * y);
    };
    const auto oracle_means = oracle::rk4(ode, 283.0, 0.0, dt, 10);

    const ThermalStepper stepper(m, dm, params);
    Vector theta(dm.scalar_q2_count(), 283.0);
    const Vector v(dm.vector_q2_count(), 0.0);
    double prev_mean = 283.0;
    for (int n = 1; n <= 10; ++n) {
        auto [next, rep] = stepper.step(theta, v, {}, bc, dt, n == 1);
        theta = std::move(next);
        const double mean = integrate_scalar(m, dm, theta) / area;
        const double inc = mean - prev_mean;
        const double oracle_inc = oracle_means[n] - oracle_means[n - 1];
        CHECK(inc == doctest::Approx(oracle_inc).epsilon(0.05));
        CHECK(mean >= prev_mean);  // monotone approach from below
        prev_mean = mean;
    }
}

TEST_CASE("monotone radiative bracket: mean never exceeds T_r") {
    const double b2S = 1e-9, Tr = 300.0, dt = 10.0;
    const Mesh m = build_rect_mesh(1.0, 1.0, 0.25, PumpLayout::none());
    const DofMap dm = make_dof_map(m);
    const PhysicalParams params = insulated_params(b2S, 1.0);
    ThermalBcData bc;
    bc.theta_N = BoundaryData::constant(0.0);
    bc.theta_S = BoundaryData::constant(0.0);
    bc.T_r = BoundaryData::constant(Tr);

    const ThermalStepper stepper(m, dm, params);
    Vector theta(dm.scalar_q2_count(), 283.0);
    const Vector v(dm.vector_q2_count(), 0.0);
    double prev_mean = 283.0;
    for (int n = 1; n <= 30; ++n) {
        auto [next, rep] = stepper.step(theta, v, {}, bc, dt, n == 1);
        theta = std::move(next);
        const double mean = integrate_scalar(m, dm, theta);
        CHECK(mean >= prev_mean - 1e-12);
        CHECK(mean <= Tr + 1e-6);
        prev_mean = mean;
    }
    CHECK(prev_mean > 295.0);  // actually approached the radiative equilibrium
}

TEST_CASE("turbinating pump couples the injector to the collector mean") {
    PumpLayout l;
    l.pairs.push_back({{Side::Left, 0.5, 0.75}, {Side::Bottom, 0.5, 0.75}});
    const Mesh m = build_rect_mesh(2.0, 1.0, 0.25, l);
    const DofMap dm = make_dof_map(m);
    PhysicalParams params;
    params.b2S = 0.0;
    params.K = 1e-3;
    ThermalBcData bc;
    bc.theta_N = BoundaryData::constant(283.0);
    bc.theta_S = BoundaryData::constant(286.0);
    bc.T_r = BoundaryData::constant(283.0);

    const Vector theta_prev = interpolate_scalar(dm, [](Vec2 p) { return 283.0 + 2.0 * p.y; });
    const Vector v(dm.vector_q2_count(), 0.0);

    auto [theta, rep] = solve_temperature_step(m, dm, theta_prev, v, {PumpMode::Turbinate}, bc,
                                               params, 100.0, false);
    CHECK(rep.converged);
    const double mc = collector_mean(m, dm, theta, {BoundaryTag::C, 0});
    const double mt = collector_mean(m, dm, theta, {BoundaryTag::T, 0});
    CHECK(std::abs(mt - mc) <= 1e-7);

    // injector trace is the constant collector mean
    for (int d : dm.tag_dofs.at({BoundaryTag::T, 0})) CHECK(theta[d] == doctest::Approx(mc).epsilon(1e-9));

    // pumping swaps the roles
    auto [theta2, rep2] = solve_temperature_step(m, dm, theta_prev, v, {PumpMode::Pump}, bc,
                                                 params, 100.0, false);
    const double mc2 = collector_mean(m, dm, theta2, {BoundaryTag::C, 0});
    const double mt2 = collector_mean(m, dm, theta2, {BoundaryTag::T, 0});
    CHECK(std::abs(mt2 - mc2) <= 1e-7);
    for (int d : dm.tag_dofs.at({BoundaryTag::C, 0}))
        CHECK(theta2[d] == doctest::Approx(mt2).epsilon(1e-9));
}

TEST_CASE("assembled thermal system: identity rows and substituted rhs at constraints") {
    PumpLayout l;
    l.pairs.push_back({{Side::Left, 0.5, 0.75}, {Side::Bottom, 0.5, 0.75}});
    const Mesh m = build_rect_mesh(2.0, 1.0, 0.25, l);
    const DofMap dm = make_dof_map(m);
    PhysicalParams params;
    params.b2S = 1e-10;
    ThermalBcData bc;
    bc.theta_N = BoundaryData::constant(283.0);
    bc.theta_S = BoundaryData::constant(286.0);
    bc.T_r = BoundaryData::constant(300.0);

    const Vector theta = interpolate_scalar(dm, [](Vec2 p) { return 283.0 + 2.0 * p.y; });
    const Vector v(dm.vector_q2_count(), 0.0);
    const ThermalStepper stepper(m, dm, params);
    const ThermalSystem sys =
        stepper.assemble_system(theta, theta, v, {PumpMode::Turbinate}, bc, 100.0, false);

    REQUIRE(!sys.constrained_dofs.empty());
    const double mc = collector_mean(m, dm, theta, {BoundaryTag::C, 0});
    for (auto [d, value] : sys.constrained_dofs) {
        CHECK(value == doctest::Approx(mc).epsilon(1e-14));
        CHECK(sys.rhs[d] == doctest::Approx(value).epsilon(1e-14));
        for (int k = sys.matrix.row_ptr()[d]; k < sys.matrix.row_ptr()[d + 1]; ++k) {
            const double expected = (sys.matrix.col_idx()[k] == d) ? 1.0 : 0.0;
            CHECK(sys.matrix.values()[k] == doctest::Approx(expected));
        }
    }
    CHECK(sys.matrix.asymmetry() <= 1e-12 * sys.matrix.max_abs());
}

TEST_CASE("Picard iterate changes decrease after the first iterations") {
    const Mesh m = build_rect_mesh(16.0, 19.0, 1.0, PumpLayout::symmetric4(16.0, 19.0));
    const DofMap dm = make_dof_map(m);
    PhysicalParams params;  // table defaults
    params.b2S = 1.3e-11;
    ThermalBcData bc;
    bc.theta_N = BoundaryData::constant(283.0);
    bc.theta_S = BoundaryData::constant(286.0);
    bc.T_r = BoundaryData::constant(300.0);

    const Vector theta_prev = interpolate_scalar(dm, [](Vec2 p) { return 283.0 + 0.1 * p.y; });
    const Vector v(dm.vector_q2_count(), 0.0);
    const std::vector<PumpMode> modes(4, PumpMode::Turbinate);

    auto [theta, rep] = solve_temperature_step(m, dm, theta_prev, v, modes, bc, params, 1800.0,
                                               false);
    CHECK(rep.converged);
    REQUIRE(rep.iterate_changes.size() >= 3);
    for (std::size_t i = 3; i < rep.iterate_changes.size(); ++i)
        CHECK(rep.iterate_changes[i] <= rep.iterate_changes[i - 1] * (1.0 + 1e-12));
}
