#include "spde/config.hpp"
#include "spde/error.hpp"

#include <doctest.h>

using namespace spde;

TEST_CASE("pam preset") {
    const auto c = parse_config("equation = pam\nlambda_list = 0.1\n");
    CHECK(c.diffusion == 0.5);
    CHECK(c.L == 1.0);
    CHECK(c.nx == 200);
    CHECK(c.T == 1.0);
    CHECK(c.u0.kind() == InitialData::Kind::Sine);
    CHECK(c.boundary() == Boundary::Dirichlet);
    CHECK_NOTHROW(c.validate());
    CHECK_THROWS_AS(parse_config("equation = pam\ndiffusion = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("equation = pam\nu0.kind = constant\n"), ConfigError);
}

TEST_CASE("config parsing errors") {
    CHECK_THROWS_AS(parse_config("equation = heat\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("bogus = 1\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("seed = 1\nseed = 2\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.nx = many\n"), ConfigError);
    CHECK_THROWS_AS(parse_config("grid.nt = 0\n"), ConfigError);
    CHECK_THROWS_AS(load_config("/nonexistent/config.txt"), IoError);
    const auto ok = parse_config("# comment\n\nequation = heat_neumann\nlambda_list = 1, 2,3\n");
    CHECK(ok.lambdas == std::vector<double>{1, 2, 3});
    CHECK(ok.u0.kind() == InitialData::Kind::Constant);
}

TEST_CASE("cross-field validation") {
    auto c = parse_config("equation = heat_dirichlet\ngrid.nx = 100\ngrid.nt = 100\nlambda_list = 1\n");
    CHECK_THROWS_AS(c.validate(), ConfigError);
    auto w = parse_config("equation = wave\ngrid.nx = 100\ngrid.nt = 10\ngrid.X = 2\ngrid.T = 1\nlambda_list = 1\n");
    CHECK_THROWS_AS(w.validate(), ConfigError);
    auto narrow = parse_config("equation = wave\ngrid.X = 1.5\ngrid.T = 1\nlambda_list = 1\n");
    CHECK_THROWS_AS(narrow.validate(), ConfigError);
    auto off = parse_config("equation = heat_neumann\ngrid.T = 0.3\nt_list = 0.1234567\nlambda_list = 1\n");
    CHECK_THROWS_AS(off.validate(), ConfigError);
    auto oracle = parse_config("equation = heat_neumann\nmethod = oracle\nsigma.kind = piecewise\n"
                               "sigma.table = -1:-1, 0:0, 1:2\nlambda_list = 1\n");
    CHECK_THROWS(oracle.validate());
    auto good = parse_config("equation = wave\nlambda_list = 1\nt_list = 0.5\n");
    CHECK_NOTHROW(good.validate());
    CHECK(good.grid().origin() == -good.grid().length() / 2.0);
}
