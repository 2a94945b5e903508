#include <doctest.h>

#include "vswt/params.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <random>

using namespace vswt;

TEST_CASE("empty document yields the full default parameter set") {
    const auto p = load_params("");
    CHECK(p == TurbineParams{});
    CHECK(p.s_base == 3.6e6);
    CHECK(p.k_rotor == 0.00145);
    CHECK(p.kpp == 150.0);
    CHECK(p.kip == 25.0);
    CHECK(p.kpc == 3.0);
    CHECK(p.kic == 30.0);
    CHECK(p.t_pi == 0.01);
    CHECK(p.beta_min == 0.0);
    CHECK(p.beta_max == 27.0);
    CHECK(p.dbeta_rate == 10.0);
    CHECK(p.pe_max == 1.0);
    CHECK(p.pe_min == 0.1);
    CHECK(p.dpe_rate == 0.45);
    CHECK(p.kpt == 3.0);
    CHECK(p.kit == 0.6);
    CHECK(p.v_wt == 1.0);
    CHECK(p.t_con == 0.02);
    CHECK(p.t_f == 5.0);
    CHECK(p.t_pc == 0.05);
    CHECK(p.h_wt_1m == 5.19);
    CHECK(p.h_g_2m == 0.90);
    CHECK(p.h_wt_2m == 4.29);
    CHECK(p.d_shaft == 1.5);
    CHECK(p.k_shaft == 296.7);
    CHECK(p.omega0_2m == 1.335);
    CHECK(p.v_cut_in == 4.0);
    CHECK(p.v_cut_out == 25.0);
}

TEST_CASE("coefficient table: 24 entries verbatim, alpha(2,1) corrected") {
    const auto ge = CpCoefficients::ge36();
    const auto printed = CpCoefficients::printed_paper_table();
    int differing = 0;
    for (std::size_t i = 0; i < 5; ++i) {
        for (std::size_t j = 0; j < 5; ++j) {
            differing += ge.alpha[i][j] != printed.alpha[i][j];
        }
    }
    CHECK(differing == 1);
    CHECK(ge.alpha[2][1] == -1.10e-2);
    CHECK(printed.alpha[2][1] == -1.01e-2);
    CHECK(ge.alpha[0][0] == -4.19e-1);
    CHECK(ge.alpha[4][4] == 4.97e-10);
}

TEST_CASE("single keys override defaults") {
    CHECK(load_params("h_wt_1m = 5.19").h_wt_1m == 5.19);
    const auto p = load_params("# comment\n  kpp=120   # trailing\n\nt_f = 2.5\n");
    CHECK(p.kpp == 120.0);
    CHECK(p.t_f == 2.5);
    CHECK(p.kip == 25.0);
    CHECK_FALSE(load_params("pitch_servo_lag = false").pitch_servo_lag);
}

TEST_CASE("parse errors report line and key") {
    try {
        (void)load_params("kpp = 1\nbogus_key = 3\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 2);
        CHECK(e.key() == "bogus_key");
    }
    try {
        (void)load_params("\n\nkpp = 1,5\n");
        FAIL("expected ConfigError");
    } catch (const ConfigError& e) {
        CHECK(e.line() == 3);
        CHECK(e.key() == "kpp");
    }
    CHECK_THROWS_AS((void)load_params("kpp 150"), ConfigError);
    CHECK_THROWS_AS((void)load_params("cp_coeffs = 1, 2, 3"), ConfigError);
    CHECK_THROWS_AS((void)load_config("model = three-mass"), ConfigError);
}

TEST_CASE("validation failure names the key") {
    try {
        (void)load_params("t_con = -1");
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(e.violations().size() == 1);
        CHECK(e.violations()[0].field == "t_con");
    }
}

TEST_CASE("validate reports every violation") {
    CHECK(validate(TurbineParams{}).empty());

    TurbineParams p;
    p.beta_min = 30.0;
    auto v = validate(p);
    REQUIRE(v.size() == 1);
    CHECK(v[0].rule == "beta_min < beta_max");

    p = TurbineParams{};
    p.k_shaft = 0.0;
    v = validate(p);
    REQUIRE(v.size() == 1);
    CHECK(v[0].field == "k_shaft");

    p = TurbineParams{};
    p.t_con = -1;
    p.h_g_2m = 0;
    p.pe_min = 2.0;
    CHECK(validate(p).size() == 3);
}

TEST_CASE("property: one mutated field gives exactly one violation naming it") {
    struct Mutation {
        const char* field;
        double TurbineParams::*member;
        double bad;
    };
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const Mutation cases[] = {
        {"s_base", &TurbineParams::s_base, 0.0},       {"k_tsr", &TurbineParams::k_tsr, -3.0},
        {"t_pi", &TurbineParams::t_pi, 0.0},           {"t_con", &TurbineParams::t_con, nan},
        {"t_f", &TurbineParams::t_f, -5.0},            {"t_pc", &TurbineParams::t_pc, 0.0},
        {"h_wt_1m", &TurbineParams::h_wt_1m, -1.0},    {"h_wt_2m", &TurbineParams::h_wt_2m, 0.0},
        {"h_g_2m", &TurbineParams::h_g_2m, -0.9},      {"k_shaft", &TurbineParams::k_shaft, 0.0},
        {"omega0_2m", &TurbineParams::omega0_2m, 0.0}, {"beta_min", &TurbineParams::beta_min, 27.0},
        {"beta_max", &TurbineParams::beta_max, -1.0},  {"pe_min", &TurbineParams::pe_min, 1.0},
        {"pe_max", &TurbineParams::pe_max, 0.05},      {"v_cut_in", &TurbineParams::v_cut_in, 25.0},
        {"v_cut_out", &TurbineParams::v_cut_out, 3.0}, {"kpp", &TurbineParams::kpp, -1.0},
        {"d_shaft", &TurbineParams::d_shaft, -0.1},    {"dpe_rate", &TurbineParams::dpe_rate, 0.0},
    };
    for (const auto& m : cases) {
        CAPTURE(m.field);
        TurbineParams p;
        p.*(m.member) = m.bad;
        const auto v = validate(p);
        REQUIRE(v.size() == 1);
        CHECK(v[0].rule.find(m.field) != std::string::npos);
    }
}

TEST_CASE("property: serialize then load is the identity") {
    std::mt19937_64 rng(20261016);
    std::uniform_real_distribution<double> scale(0.5, 2.0);
    for (int trial = 0; trial < 50; ++trial) {
        Config c;
        auto& p = c.params;
        for (double* f : {&p.k_rotor, &p.k_tsr, &p.kpp, &p.kip, &p.kpc, &p.kic, &p.t_pi, &p.kpt, &p.kit, &p.t_con,
                          &p.t_f, &p.t_pc, &p.h_wt_1m, &p.h_wt_2m, &p.h_g_2m, &p.d_shaft, &p.k_shaft}) {
            *f *= scale(rng);
        }
        for (auto& row : p.cp_coeffs.alpha) {
            for (double& a : row) {
                a *= scale(rng);
            }
        }
        p.pitch_servo_lag = trial % 2 == 0;
        c.scenario.wind_profile = WindProfile{{{0.0, 5.0 * scale(rng)}, {10.0 * scale(rng), 12.0}, {60.0, 20.0}}};
        c.scenario.model = trial % 3 == 0 ? MechanicalModel::two_mass : MechanicalModel::one_mass;
        c.scenario.integrator = trial % 5 == 0 ? Integrator::euler : Integrator::rk4;
        const auto back = load_config(serialize(c));
        CHECK(back.params == c.params);
        CHECK(back.scenario == c.scenario);
    }
}

TEST_CASE("scenario keys and validation") {
    const auto c = load_config("wind_profile = 0:5, 150:20\nduration = 150\ndt = 0.001\nmodel = two-mass\n");
    REQUIRE(c.scenario.wind_profile.points.size() == 2);
    CHECK(c.scenario.wind_profile.points[1].t == 150.0);
    CHECK(c.scenario.wind_profile.points[1].v == 20.0);
    CHECK(c.scenario.model == MechanicalModel::two_mass);

    CHECK_THROWS_AS((void)load_config("dt = 0"), ValidationError);
    CHECK_THROWS_AS((void)load_config("dt = 1\nduration = 0.5"), ValidationError);
    CHECK_THROWS_AS((void)load_config("wind_profile = 0:5, 0:6"), ValidationError);
    CHECK_THROWS_AS((void)load_config("wind_profile = 0:5, 10:45"), ValidationError);
    CHECK_THROWS_AS((void)load_config("wind_profile = 0-5"), ConfigError);
    CHECK_THROWS_AS((void)load_config("dt = 0.001\noutput_interval = 0.0015"), ValidationError);
}

TEST_CASE("shipped default config equals the built-in defaults") {
    std::ifstream f(VSWT_SOURCE_DIR "/config/default.cfg");
    REQUIRE(f);
    const std::string text{std::istreambuf_iterator<char>(f), {}};
    const auto c = load_config(text);
    CHECK(c.params == TurbineParams{});
    CHECK(c.scenario == Scenario{});
}
