#include <doctest.h>

#include <pvcsd/error.hpp>
#include <pvcsd/metrics.hpp>

#include <cmath>
#include <numeric>
#include <memory>
#include <random>

using namespace pvcsd;
using namespace std::chrono;

TEST_CASE("perfect forecast")
{
    const std::vector<double> m{0.0, 120.0, 480.0, 700.0, 310.0};
    const MetricsReport r = evaluate(m, m, 960.0);
    CHECK(r.rmse == 0.0);
    CHECK(r.mbe == 0.0);
    CHECK(*r.mape == 0.0);
    CHECK(*r.nrmse == 0.0);
    CHECK(*r.r2 == 1.0);
    CHECK(r.rmse_np == 0.0);
    CHECK(r.mape_np == 0.0);
    CHECK(r.n_samples == 5);
}

TEST_CASE("constant offset")
{
    const std::vector<double> m{100.0, 200.0, 300.0};
    std::vector<double> p = m;
    for (double& x : p)
        x += 12.5;
    const MetricsReport r = evaluate(p, m, 960.0);
    CHECK(r.mbe == doctest::Approx(-12.5));
    CHECK(r.rmse == doctest::Approx(12.5));
    CHECK(r.rmse_np == doctest::Approx(12.5 / 960.0));
}

TEST_CASE("formula oracle on a random fixture")
{
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(0.0, 900.0);
    std::vector<double> m(20), p(20);
    for (std::size_t i = 0; i < 20; ++i) {
        m[i] = i == 3 ? 0.0 : u(rng);
        p[i] = u(rng);
    }
    const double pnom = 960.0;
    long double sq = 0, sum = 0, ape = 0, apnp = 0, mean = 0;
    int n_ape = 0;
    for (std::size_t i = 0; i < 20; ++i)
        mean += m[i];
    mean /= 20;
    long double dev = 0;
    for (std::size_t i = 0; i < 20; ++i) {
        const long double e = static_cast<long double>(m[i]) - p[i];
        sq += e * e;
        sum += e;
        apnp += std::fabs(e) / pnom;
        if (m[i] != 0.0) {
            ape += std::fabs(e / m[i]);
            ++n_ape;
        }
        dev += (m[i] - mean) * (m[i] - mean);
    }
    const MetricsReport r = evaluate(p, m, pnom);
    const double rmse = static_cast<double>(std::sqrt(sq / 20));
    CHECK(r.rmse == doctest::Approx(rmse).epsilon(1e-12));
    CHECK(r.mbe == doctest::Approx(static_cast<double>(sum / 20)).epsilon(1e-12));
    CHECK(*r.mape == doctest::Approx(static_cast<double>(100 * ape / n_ape)).epsilon(1e-12));
    CHECK(*r.nrmse == doctest::Approx(static_cast<double>(std::sqrt(sq / dev))).epsilon(1e-12));
    CHECK(*r.r2 == doctest::Approx(static_cast<double>(1 - sq / dev)).epsilon(1e-12));
    CHECK(r.rmse_np == doctest::Approx(rmse / pnom).epsilon(1e-12));
    CHECK(r.mape_np == doctest::Approx(static_cast<double>(100 * apnp / 20)).epsilon(1e-12));
}

TEST_CASE("identities on random series")
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(0.0, 1000.0);
    std::uniform_int_distribution<int> len(2, 60);
    for (int n = 0; n < 1000; ++n) {
        const int k = len(rng);
        std::vector<double> m(static_cast<std::size_t>(k)), p(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) {
            m[i] = u(rng);
            p[i] = u(rng);
        }
        const MetricsReport r = evaluate(p, m, 960.0);
        CHECK(r.rmse >= std::abs(r.mbe));
        REQUIRE(r.nrmse.has_value());
        CHECK(*r.r2 == 1.0 - *r.nrmse * *r.nrmse);

        std::vector<double> m3 = m, p3 = p;
        for (std::size_t i = 0; i < m.size(); ++i) {
            m3[i] *= 3.0;
            p3[i] *= 3.0;
        }
        const MetricsReport s = evaluate(p3, m3, 960.0);
        CHECK(s.rmse == doctest::Approx(3.0 * r.rmse));
        CHECK(s.mbe == doctest::Approx(3.0 * r.mbe));
        CHECK(*s.mape == doctest::Approx(*r.mape));
        CHECK(*s.nrmse == doctest::Approx(*r.nrmse));
    }
}

TEST_CASE("undefined measures are absent")
{
    const std::vector<double> flat{5.0, 5.0, 5.0};
    const std::vector<double> p{4.0, 5.0, 6.0};
    const MetricsReport r = evaluate(p, flat, 960.0);
    CHECK_FALSE(r.nrmse.has_value());
    CHECK_FALSE(r.r2.has_value());
    const std::vector<double> zeros{0.0, 0.0};
    const std::vector<double> pz{1.0, 2.0};
    const MetricsReport z = evaluate(pz, zeros, 960.0);
    CHECK_FALSE(z.mape.has_value());
    CHECK(z.mape_np == doctest::Approx(100.0 * 1.5 / 960.0));
}

TEST_CASE("mask and argument errors")
{
    const std::vector<double> m{1.0, 2.0, 3.0, 4.0};
    const std::vector<double> p{1.0, 2.0, 30.0, 4.0};
    const std::vector<std::size_t> mask{0, 1, 3};
    const MetricsReport r = evaluate(p, m, 960.0, mask);
    CHECK(r.rmse == 0.0);
    CHECK(r.n_samples == 3);
    CHECK_THROWS_AS(evaluate(p, m, 960.0, std::vector<std::size_t>{}), InputError);
    CHECK_THROWS_AS(evaluate(p, m, 960.0, std::vector<std::size_t>{4}), InputError);
    CHECK_THROWS_AS(evaluate(p, std::vector<double>{1.0}, 960.0), InputError);
    CHECK_THROWS_AS(evaluate(p, m, 0.0), InputError);
}

TEST_CASE("daily RMSE")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(0.0, 800.0);
    std::vector<Timestamp> t;
    std::vector<double> m, p;
    std::vector<char> inc_c;
    const Timestamp start = sys_days{year{2012} / 5 / 1} - hours{1};
    for (int h = 0; h < 72; ++h) {
        t.push_back(start + hours{h});
        const bool light = h % 24 >= 6 && h % 24 <= 19;
        m.push_back(light ? u(rng) : 0.0);
        p.push_back(light ? u(rng) : 0.0);
        inc_c.push_back(light);
    }
    const auto inc = std::make_unique<bool[]>(72);
    for (int i = 0; i < 72; ++i)
        inc[static_cast<std::size_t>(i)] = inc_c[static_cast<std::size_t>(i)] != 0;
    const std::span<const bool> include(inc.get(), 72);
    const auto rows = daily_rmse(t, p, m, include, hours{1});
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].day == sys_days{year{2012} / 5 / 1});
    CHECK(rows[0].n_samples == 14);

    // Recombining per-day RMSE by sample counts gives the whole-period RMSE.
    std::vector<std::size_t> mask;
    for (std::size_t i = 0; i < 72; ++i) {
        if (inc[i])
            mask.push_back(i);
    }
    double sq = 0.0;
    std::size_t n = 0;
    for (const auto& r : rows) {
        sq += r.rmse * r.rmse * static_cast<double>(r.n_samples);
        n += r.n_samples;
    }
    CHECK(std::sqrt(sq / static_cast<double>(n)) == doctest::Approx(evaluate(p, m, 960.0, mask).rmse).epsilon(1e-12));

    // Perfect forecast and constant measured power.
    std::vector<double> flat(72, 50.0);
    for (const auto& r : daily_rmse(t, flat, flat, include, hours{1})) {
        CHECK(r.rmse == 0.0);
        CHECK(r.measured_std == 0.0);
    }
    const auto none = std::make_unique<bool[]>(72);
    CHECK(daily_rmse(t, p, m, std::span<const bool>(none.get(), 72), hours{1}).empty());
}
