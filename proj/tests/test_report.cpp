#include <doctest.h>

#include <cmath>
#include <fstream>

#include "oracles.hpp"
#include "subpot/errors.hpp"
#include "subpot/report.hpp"

using namespace subpot;

namespace {

LoadedSpec corpus(const std::string& name) { return load_spec(testing::corpus_path(name)); }

Json parse_doc(const std::string& text) { return Json::parse(text); }

} // namespace

TEST_CASE("spec files load and validate") {
    const LoadedSpec circle = corpus("circle.json");
    const auto& sub = std::get<SubmanifoldSpec>(circle.spec);
    CHECK(sub.param_dim == 1);
    CHECK(sub.ambient.dim() == 2);
    CHECK(circle.echo["kind"] == "submanifold");

    const LoadedSpec cubic = corpus("frob_cubic_n2.json");
    CHECK(std::get<FrobeniusSpec>(cubic.spec).c_const == 1.0);
}

TEST_CASE("schema violations are reported with the offending field") {
    try {
        parse_spec_json(parse_doc(R"({"kind":"frobenius","N":2,"eta":[[1,0.5],[0.2,1]],"c":1,"phi":"u1"})"));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("eta") != std::string::npos);
    }
    try {
        parse_spec_json(parse_doc(R"({"kind":"frobenius","N":1,"eta":[[1]],"c":0,"phi":"u1"})"));
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        CHECK(std::string(e.what()).find("c") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_spec_json(parse_doc(R"({"kind":"circle","N":1})")), SchemaError);
    CHECK_THROWS_AS(parse_spec_json(parse_doc(R"({"N":1})")), SchemaError);
    CHECK_THROWS_AS(
        parse_spec_json(parse_doc(
            R"({"kind":"submanifold","N":1,"signs":[1,1],"r":["u1","0"],"n":["0","u1"],"extra":1})")),
        SchemaError);
    CHECK_THROWS_AS(
        parse_spec_json(parse_doc(R"({"kind":"submanifold","N":1,"signs":[1],"r":["u1","0"],"n":["0","u1"]})")),
        SchemaError);
    CHECK_THROWS_AS(load_spec("/nonexistent/path.json"), Error);
}

TEST_CASE("expression errors surface through spec loading") {
    CHECK_THROWS_AS(
        parse_spec_json(parse_doc(
            R"({"kind":"submanifold","N":1,"signs":[1,1],"r":["u2","0"],"n":["0","u1"]})")),
        ParseError);
}

TEST_CASE("grid parsing and row-major iteration") {
    const GridSpec grid = GridSpec::parse("0:1:3,2:3:2");
    CHECK(grid.total() == 6);
    CHECK(grid.point(0)(0) == 0.0);
    CHECK(grid.point(0)(1) == 2.0);
    CHECK(grid.point(1)(0) == 0.0);
    CHECK(grid.point(1)(1) == 3.0);
    CHECK(grid.point(2)(0) == 0.5);
    CHECK(grid.point(5)(0) == 1.0);
    CHECK(grid.point(5)(1) == 3.0);

    const GridSpec single = GridSpec::parse("1.5:2.5:1");
    CHECK(single.point(0)(0) == 1.5);

    CHECK_THROWS_AS(GridSpec::parse("1:0:5"), SchemaError);
    CHECK_THROWS_AS(GridSpec::parse("0:1:0"), SchemaError);
    CHECK_THROWS_AS(GridSpec::parse("a:b:c"), SchemaError);
    CHECK_THROWS_AS(GridSpec::parse(""), SchemaError);
    CHECK_THROWS_AS(GridSpec::parse("0:1:2").validate(2), DimensionError);
}

TEST_CASE("analyze report on the circle passes and is deterministic in-process") {
    const LoadedSpec circle = corpus("circle.json");
    const GridSpec grid = GridSpec::parse("0:6.28:32");
    const Json r1 = analyze_report(circle, grid, {});
    const Json r2 = analyze_report(circle, grid, {});
    CHECK(report_passed(r1));
    CHECK(r1.dump(2) == r2.dump(2));
    CHECK(r1["aggregate"]["points"] == 32);
    CHECK(r1["verdicts"]["gauss"] == "PASS");
    const std::string text = render_text(r1);
    CHECK(text.find("overall: PASS") != std::string::npos);
}

TEST_CASE("analyze report collects per-point failures and fails overall") {
    // the potential stops being normal away from the u1 axis
    const Json doc = parse_doc(
        R"({"kind":"submanifold","N":1,"signs":[1,1],"r":["u1","u1^2"],"n":["0","1"]})");
    const LoadedSpec bad = parse_spec_json(doc);
    const Json report = analyze_report(bad, GridSpec::parse("-1:1:5"), {});
    CHECK_FALSE(report_passed(report));
    CHECK(report["aggregate"]["errors"].get<int>() > 0);
    CHECK(report["verdicts"]["no_errors"] == "FAIL");
}

TEST_CASE("analyze report on a frobenius spec covers associativity and curvature") {
    const Json report =
        analyze_report(corpus("frob_cubic_n2.json"), GridSpec::parse("-2:2:8,-2:2:8"), {});
    CHECK(report_passed(report));
    CHECK(report["aggregate"]["max_wdvv_residual"].get<double>() <= 1e-12);
    CHECK(report["aggregate"]["points"] == 64);
}

TEST_CASE("dualize report demonstrates the swap") {
    const Json report = dualize_report(corpus("circle.json"), GridSpec::parse("0:6.28:16"), {});
    CHECK(report_passed(report));
    CHECK(report["verdicts"]["involution"] == "PASS");
    CHECK(report["verdicts"]["duality_swap"] == "PASS");
    CHECK(report["verdicts"]["codazzi_self_dual"] == "PASS");
    CHECK(report["aggregate"]["max_swap_defect"].get<double>() <= 1e-10);

    CHECK_THROWS_AS(dualize_report(corpus("frob_cubic_n2.json"), GridSpec::parse("0:1:2"), {}),
                    ValidationError);
}

TEST_CASE("wdvv report flags violating potentials") {
    const Json good = wdvv_report(corpus("frob_quartic_n3.json"),
                                  GridSpec::parse("-1:1:4,-1:1:4,-1:1:4"), {});
    CHECK(report_passed(good));

    const Json bad = wdvv_report(corpus("frob_bad_n2.json"), GridSpec::parse("-1:1:5,-1:1:5"), {});
    CHECK_FALSE(report_passed(bad));
    CHECK(bad["verdicts"]["wdvv"] == "FAIL");

    CHECK_THROWS_AS(wdvv_report(corpus("circle.json"), GridSpec::parse("0:1:2"), {}),
                    ValidationError);
}

TEST_CASE("realize report carries defects or the failure reason") {
    std::vector<Eigen::VectorXd> path;
    Eigen::VectorXd zero(3), one(3);
    zero << 0, 0, 0;
    one << 1, 1, 1;
    path = {zero, one};
    const Json good = realize_report(corpus("frob_quartic_n3.json"), path, {}, {});
    CHECK(report_passed(good));
    CHECK(good["defects"]["g"].get<double>() <= 1e-8);

    std::vector<Eigen::VectorXd> path2;
    Eigen::VectorXd z2(2), o2(2);
    z2 << 0, 0;
    o2 << 1, 1;
    path2 = {z2, o2};
    const Json bad = realize_report(corpus("frob_bad_n2.json"), path2, {}, {});
    CHECK_FALSE(report_passed(bad));
    CHECK(bad.contains("error"));
    const std::string text = render_text(bad);
    CHECK(text.find("overall: FAIL") != std::string::npos);
}

TEST_CASE("finite-difference cross-check of the decomposition") {
    const SubmanifoldSpec graph = std::get<SubmanifoldSpec>(corpus("graph.json").spec);
    Eigen::VectorXd u(2);
    u << 0.3, -0.2;
    CHECK(fd_decomposition_defect(graph, u, {}) <= 1e-5);
}
