#include <doctest.h>

#include "netform/model.hpp"

using namespace netform;

namespace {

ModelParams make_params(std::vector<GroupParams> groups) {
    ModelParams p;
    p.groups = std::move(groups);
    return p;
}

}  // namespace

TEST_CASE("validate accepts the two-group symmetric setup") {
    auto p = make_params({GroupParams{0.2, 1.0, 0.5, 0.5, 1.0, 0.0},
                          GroupParams{0.2, 1.0, 0.5, 0.5, 1.0, 0.0}});
    CHECK_NOTHROW(validate(p));
}

TEST_CASE("validate accepts a single group with full proportion") {
    CHECK_NOTHROW(validate(make_params({GroupParams{0.0, 1.0, 0.5, 1.0, 0.0, 0.0}})));
}

TEST_CASE("validate rejects proportions that do not sum to one") {
    auto p = make_params({GroupParams{0.2, 1.0, 0.5, 0.5, 1.0, 0.0},
                          GroupParams{0.2, 1.0, 0.5, 0.6, 1.0, 0.0}});
    CHECK_THROWS_WITH_AS(validate(p), doctest::Contains("proportions-sum"), std::invalid_argument);
}

TEST_CASE("validate names the violated invariant") {
    auto bad_nu = make_params({GroupParams{0.2, 1.0, 0.0, 1.0, 1.0, 0.0}});
    CHECK_THROWS_WITH_AS(validate(bad_nu), doctest::Contains("nonpositive-nu"), std::invalid_argument);

    auto bad_sigma = make_params({GroupParams{0.2, 0.0, 0.5, 1.0, 1.0, 0.0}});
    CHECK_THROWS_WITH_AS(validate(bad_sigma), doctest::Contains("nonpositive-sigma"),
                         std::invalid_argument);

    auto bad_var = make_params({GroupParams{0.2, 1.0, 0.5, 1.0, 1.0, -1.0}});
    CHECK_THROWS_WITH_AS(validate(bad_var), doctest::Contains("negative-mu0-var"),
                         std::invalid_argument);

    CHECK_THROWS_WITH_AS(validate(ModelParams{}), doctest::Contains("empty-groups"),
                         std::invalid_argument);
}

TEST_CASE("validate is idempotent") {
    auto p = validate(make_params({GroupParams{0.5, 2.0, 0.7, 0.3, 1.5, 0.1},
                                   GroupParams{0.2, 1.0, 0.5, 0.7, -1.0, 0.0}}));
    auto q = validate(p);
    REQUIRE(q.groups.size() == p.groups.size());
    for (std::size_t k = 0; k < p.groups.size(); ++k) {
        CHECK(q.groups[k].a == p.groups[k].a);
        CHECK(q.groups[k].m == p.groups[k].m);
        CHECK(q.groups[k].mu0_mean == p.groups[k].mu0_mean);
    }
}

TEST_CASE("base preset matches the published setup") {
    Preset p = preset("base");
    REQUIRE(p.params.num_groups() == 2);
    for (int k = 0; k < 2; ++k) {
        CHECK(p.params.groups[k].a == 0.2);
        CHECK(p.params.groups[k].nu == 0.5);
        CHECK(p.params.groups[k].m == 0.5);
        CHECK(p.params.groups[k].mu0_mean == 1.0);
    }
    CHECK(p.grid.horizon_T == 1.0);
    CHECK(p.grid.dt == 0.01);
    CHECK(p.grid.n_steps == 100);
}

TEST_CASE("variant presets change exactly the stated parameters") {
    Preset exp2 = preset("exp2");
    CHECK(exp2.params.groups[0].mu0_mean == 1.0);
    CHECK(exp2.params.groups[1].mu0_mean == 2.0);
    CHECK(exp2.params.groups[0].nu == 0.5);

    Preset exp3 = preset("exp3");
    CHECK(exp3.params.groups[0].nu == 1.0);
    CHECK(exp3.params.groups[1].nu == 0.5);
    CHECK(exp3.params.groups[0].a == 0.2);

    Preset exp4 = preset("exp4");
    CHECK(exp4.params.groups[0].a == 0.5);
    CHECK(exp4.params.groups[1].a == 0.2);
    CHECK(exp4.params.groups[0].m == 0.5);

    Preset exp5 = preset("exp5");
    CHECK(exp5.params.groups[0].a == 0.5);
    CHECK(exp5.params.groups[0].m == 0.1);
    CHECK(exp5.params.groups[1].m == 0.9);
}

TEST_CASE("unknown preset name is rejected") {
    CHECK_THROWS_AS(preset("nosuch"), std::invalid_argument);
}

TEST_CASE("every preset passes validate and has an exact grid") {
    for (const auto& name : preset_names()) {
        Preset p = preset(name);
        CHECK_NOTHROW(validate(p.params));
        CHECK(p.grid.n_steps * p.grid.dt == doctest::Approx(p.grid.horizon_T).epsilon(1e-14));
        CHECK_NOTHROW(validate_grid(p.grid));
        CHECK_NOTHROW(validate_config(p.config));
    }
}

TEST_CASE("grid nodes are uniform") {
    TimeGrid g = TimeGrid::from_horizon(1.0, 0.01);
    CHECK(g.n_steps == 100);
    CHECK(g.node(0) == 0.0);
    CHECK(g.node(100) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(TimeGrid::from_horizon(-1.0, 0.01), std::invalid_argument);
}

TEST_CASE("solver config bounds") {
    SolverConfig c;
    CHECK_NOTHROW(validate_config(c));
    c.damping = 0.0;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
    c.damping = 1.5;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
    c = SolverConfig{};
    c.epsilon = 0.0;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
    c = SolverConfig{};
    c.max_iters = 0;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
}
