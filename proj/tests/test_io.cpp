#include <doctest.h>

#include "vswt/engine.hpp"
#include "vswt/errors.hpp"
#include "vswt/io.hpp"

#include <cmath>
#include <sstream>

using namespace vswt;
using namespace vswt::io;

TEST_CASE("value formatting") {
    CHECK(format_value(0.0) == "0");
    CHECK(format_value(-0.0) == "0");
    CHECK(format_value(1.0 / 3.0) == "0.333333333");
    CHECK(format_value(123456789012.0) == "1.23456789e+11");
}

TEST_CASE("curve table CSV") {
    curves::CurveTable t;
    t.abscissa_label = "lambda";
    t.abscissa = {2.0, 2.5};
    t.series = {{"cp_beta=0", {0.1, 0.2}}, {"cp_beta=9", {-0.05, 1.0 / 7.0}}};
    t.metadata = {{"curve", "cp-lambda"}};
    std::ostringstream out;
    write_csv(t, out);
    const auto text = out.str();
    CHECK(text.rfind("# generator: vswt", 0) == 0);
    CHECK(text.find('\r') == std::string::npos);
    CHECK(text.find("# curve: cp-lambda\n") != std::string::npos);
    CHECK(text.find("lambda,cp_beta=0,cp_beta=9\n2,0.1,-0.05\n2.5,0.2,0.142857143\n") != std::string::npos);

    const auto parsed = parse_csv(text);
    CHECK(parsed.header == std::vector<std::string>{"lambda", "cp_beta=0", "cp_beta=9"});
    REQUIRE(parsed.rows.size() == 2);
    CHECK(parsed.rows[1][2] == doctest::Approx(1.0 / 7.0).epsilon(1e-9));
}

TEST_CASE("empty series list gives a header-only table") {
    curves::CurveTable t;
    t.abscissa_label = "v_w";
    t.abscissa = {4.0, 5.0};
    std::ostringstream out;
    write_csv(t, out);
    const auto parsed = parse_csv(out.str());
    CHECK(parsed.header == std::vector<std::string>{"v_w"});
    CHECK(parsed.rows.empty());
    CHECK_FALSE(parsed.comments.empty());
}

TEST_CASE("trajectory CSV round trip and column order") {
    Scenario sc;
    sc.duration = 1.0;
    sc.model = MechanicalModel::two_mass;
    const auto tr = engine::simulate(sc, TurbineParams{});
    std::ostringstream out;
    write_csv(tr, out);
    const auto parsed = parse_csv(out.str());
    CHECK(parsed.header == std::vector<std::string>{"t", "v_w", "beta", "lambda", "cp", "p_mech", "p_e", "p_ef",
                                                    "omega_wt", "omega_g", "omega_ref", "shaft_torque"});
    REQUIRE(parsed.rows.size() == tr.size());
    const auto cols = tr.columns();
    for (std::size_t r = 0; r < tr.size(); ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            const double v = (*cols[c].second)[r];
            REQUIRE(std::abs(parsed.rows[r][c] - v) <= 5e-9 * std::abs(v) + 1e-300);
        }
    }
}

TEST_CASE("CSV parse errors") {
    CHECK_THROWS_AS((void)parse_csv("a,b\n1\n"), IoError);
    CHECK_THROWS_AS((void)parse_csv("a\nx\n"), IoError);
}

TEST_CASE("plot scripts") {
    const std::vector<std::string> cols = {"lambda", "cp_beta=0", "cp_beta=9"};
    const auto gp = emit_plot_script("cp.csv", PlotKind::cp_lambda, cols);
    CHECK(gp == emit_plot_script("cp.csv", PlotKind::cp_lambda, cols));
    for (const auto& c : cols) {
        CHECK(gp.find('"' + c + '"') != std::string::npos);
    }
    CHECK(gp.find("\"λ\"") != std::string::npos);
    CHECK(gp.find("\"Cp\"") != std::string::npos);
    CHECK(gp.find("cp.csv.png") != std::string::npos);

    const auto pm = emit_plot_script("p.csv", PlotKind::pmech_omega, {"omega", "p_mech_v=4"});
    CHECK(pm.find("\"P_mech (pu)\"") != std::string::npos);

    const auto tr = emit_plot_script("run.csv", PlotKind::trajectory,
                                     {"t", "v_w", "beta", "lambda", "cp", "p_mech", "p_e", "p_ef", "omega_wt", "omega_g",
                                      "omega_ref"});
    CHECK(tr.find("multiplot") != std::string::npos);
    CHECK(tr.find("\"omega_ref\"") != std::string::npos);

    CHECK(parse_plot_kind("cp-vw") == PlotKind::cp_vw);
    CHECK_THROWS_AS((void)parse_plot_kind("surface"), DomainError);
    CHECK_THROWS_AS((void)emit_plot_script("x.csv", PlotKind::cp_vw, {"v_w"}), DomainError);
}

TEST_CASE("unwritable path") {
    CHECK_THROWS_AS(write_file("/nonexistent-dir/x.csv", "a"), IoError);
}
