#include <sstream>

#include <doctest.h>

#include "qisflow/io.hpp"
#include "qisflow/random.hpp"

using namespace qisflow;

TEST_CASE("problem files") {
    SUBCASE("minimal file takes defaults") {
        const ProblemFile p = parse_problem(R"({"m": 3, "c": [1, -2, 3]})");
        CHECK(p.m == 3);
        CHECK(p.init.kind == InitSpec::Kind::barycenter);
        CHECK(p.params.step == IntegrationParams{}.step);
        CHECK(p.initial_state().matrix().isApprox(CMatrix::Identity(3, 3) / 3.0));
    }
    SUBCASE("full file") {
        const ProblemFile p = parse_problem(R"({
  "m": 2,
  "c": [1.5, 2.5],
  "init": {"matrix": {"real": [[0.6, 0.1], [0.1, 0.4]], "imag": [[0, 0.05], [-0.05, 0]]}},
  "params": {"step": 0.001, "t_max": 3, "grad_tol": 1e-10, "boundary_floor": 1e-9, "record_every": 5},
  "seed": 9
})");
        CHECK(p.params.step == 0.001);
        CHECK(p.params.record_every == 5);
        CHECK(p.seed == 9u);
        const DensityState rho = p.initial_state();
        CHECK(rho(0, 1) == Complex(0.1, 0.05));
    }
    SUBCASE("random init is reproducible and needs a seed") {
        const ProblemFile p = parse_problem(R"({"m": 3, "c": [1, 2, 3], "init": "random"})");
        CHECK_THROWS_AS(p.initial_state(), ValidationError);
        CHECK(p.initial_state(5u).matrix() == p.initial_state(5u).matrix());
        CHECK_FALSE(p.initial_state(5u).matrix().isApprox(p.initial_state(6u).matrix()));
    }
    SUBCASE("field errors name the line") {
        try {
            parse_problem("{\n  \"m\": 2,\n  \"c\": [1, \"x\"]\n}");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 3);
            CHECK(e.field() == "c[1]");
        }
        try {
            parse_problem("{\n  \"m\": 2,\n  \"c\": [1, 2],\n  \"colour\": 1\n}");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() == 4);
        }
    }
    SUBCASE("malformed JSON") {
        try {
            parse_problem("{\n  \"m\": 2,\n  \"c\": [1, 2\n}");
            FAIL("expected a parse error");
        } catch (const ParseError& e) {
            CHECK(e.line() >= 3);
        }
    }
    SUBCASE("bad costs are field errors, bad states and parameters validation errors") {
        CHECK_THROWS_AS(parse_problem(R"({"m": 2, "c": [1, 0]})"), ParseError);
        CHECK_THROWS_AS(parse_problem(R"({"m": 2, "c": [1, 2, 3]})"), ParseError);
        const ProblemFile p = parse_problem(R"({"m": 2, "c": [1, 2], "init": {"diagonal": [0.7, 0.7]}})");
        CHECK_THROWS_AS(p.initial_state(), ValidationError);
        CHECK_THROWS_AS(parse_problem(R"({"m": 2, "c": [1, 2], "params": {"step": -1}})"), ValidationError);
    }
}

TEST_CASE("trajectory round trip") {
    Sampler rng(81);
    const CostSpec c = rng.cost(3, -2.0, 2.0);
    IntegrationParams p;
    p.t_max = 2.0;
    const FlowTrajectory tr = integrate_matrix(rng.density(3), c, p);
    for (OutputFormat fmt : {OutputFormat::csv, OutputFormat::structured}) {
        std::ostringstream os;
        write_matrix_trajectory(os, tr, fmt);
        const TrajectoryFile back = read_trajectory(os.str());
        REQUIRE(back.matrix);
        REQUIRE(back.states.size() == tr.states.size());
        for (std::size_t i = 0; i < tr.states.size(); ++i) {
            CHECK(back.times[i] == tr.times[i]);
            CHECK(back.potential_values[i] == tr.potential_values[i]);
            CHECK(std::get<DensityState>(back.states[i]).matrix() == tr.states[i].matrix());
        }
    }

    const SimplexTrajectory st = integrate_simplex(rng.simplex_point(4), rng.cost(4, -2.0, 2.0), p);
    for (OutputFormat fmt : {OutputFormat::csv, OutputFormat::structured}) {
        std::ostringstream os;
        write_simplex_trajectory(os, st, fmt);
        const TrajectoryFile back = read_trajectory(os.str());
        REQUIRE_FALSE(back.matrix);
        REQUIRE(back.states.size() == st.states.size());
        for (std::size_t i = 0; i < st.states.size(); ++i)
            CHECK(std::get<SimplexPoint>(back.states[i]).values() == st.states[i].values());
    }
}

TEST_CASE("trajectory files are revalidated") {
    CHECK_THROWS_AS(read_trajectory(""), ParseError);
    CHECK_THROWS_AS(read_trajectory("a,b\n1,2\n"), ParseError);
    CHECK_THROWS_AS(read_trajectory("t,x_1,x_2,potential\n0,0.5,abc,1\n"), ParseError);
    CHECK_THROWS_AS(read_trajectory("t,x_1,x_2,potential\n0,0.5,0.6,1\n"), ValidationError);
    CHECK_NOTHROW(read_trajectory("t,x_1,x_2,potential\n0,0.5,0.5,1\n"));
}

TEST_CASE("output is deterministic") {
    const ProblemFile p = parse_problem(R"({"m": 4, "c": [1, -2, 3, 0.5], "init": "random", "seed": 3,
                                            "params": {"t_max": 5}})");
    auto render = [&] {
        std::ostringstream os;
        write_matrix_trajectory(os, integrate_matrix(p.initial_state(), p.cost(), p.params), OutputFormat::csv);
        return os.str();
    };
    CHECK(render() == render());
}
