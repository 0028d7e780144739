#include <doctest.h>

#include <algorithm>
#include <fstream>

#include "g2forge/catalog.hpp"

using namespace g2forge;

namespace {
Catalog test_catalog() { return Catalog(G2FORGE_TEST_CATALOG); }
}

TEST_CASE("the registry holds at least 16 entries with provenance") {
    auto cat = test_catalog();
    auto ids = cat.ids();
    CHECK(ids.size() >= 16);
    for (const auto& id : ids) {
        auto entry = cat.load(id);
        CHECK_FALSE(entry.provenance.empty());
        CHECK(validate_entry(entry).empty());
    }
}

TEST_CASE("load binds parameters and overrides") {
    auto cat = test_catalog();
    auto entry = cat.load("table_row7");
    CHECK(entry.params.m == Rat(-1));
    // d e^3 contains -6/5 m e^{37} = 6/5 e^{37} for m = -1
    CHECK(entry.algebra.d1(3).coeff(mask_from({3, 7})) == QSqrt6(Rat(6, 5)));

    auto rescaled = cat.load("table_row7", Rat(-2));
    CHECK(rescaled.algebra.d1(3).coeff(mask_from({3, 7})) == QSqrt6(Rat(12, 5)));

    auto b2 = cat.load("eq_3step", std::nullopt, Rat(2));
    CHECK(b2.algebra.d1(2).coeff(mask_from({2, 7})) == QSqrt6(Rat(2)));
    // the sqrt6 b coefficient
    CHECK(b2.algebra.d1(1).coeff(mask_from({2, 6})) == QSqrt6(Rat(0), Rat(2)));
}

TEST_CASE("schema violations are rejected") {
    auto dir = std::filesystem::temp_directory_path() / "g2forge_bad_catalog";
    std::filesystem::create_directories(dir);
    {
        std::ofstream m(dir / "manifest.json");
        m << R"({"entries":[{"id":"bad_index"},{"id":"bad_jacobi"},{"id":"garbled"}]})";
    }
    {
        std::ofstream f(dir / "bad_index.json");
        f << R"({"id":"bad_index","provenance":"test",
            "algebra":{"dim":6,"d":[[],[],[{"c":"1","idx":[5,1]}],[],[],[]]}})";
    }
    {
        // de3 = e15, de5 = e23 violates d^2 = 0
        std::ofstream f(dir / "bad_jacobi.json");
        f << R"({"id":"bad_jacobi","provenance":"test",
            "algebra":{"dim":6,"d":[[],[],[{"c":"1","idx":[1,5]}],[],[{"c":"1","idx":[2,3]}],[]]}})";
    }
    {
        std::ofstream f(dir / "garbled.json");
        f << "{not json";
    }
    Catalog cat(dir);
    CHECK_THROWS_AS(cat.load("bad_index"), SchemaError);
    CHECK_THROWS_AS(cat.load("bad_jacobi"), JacobiFailed);
    CHECK_THROWS_AS(cat.load("garbled"), ParseError);
    CHECK_THROWS_AS(cat.load("missing"), ParseError);
}

TEST_CASE("the environment variable overrides the default directory") {
    setenv("G2FORGE_CATALOG", G2FORGE_TEST_CATALOG, 1);
    Catalog cat;  // no explicit path
    CHECK(cat.ids().size() >= 16);
    unsetenv("G2FORGE_CATALOG");
}

TEST_CASE("form and scalar-expression JSON round trips") {
    Params p;
    FormD f(7, 3);
    f.add(mask_from({1, 4, 7}), 1.0);
    f.add(mask_from({2, 3, 7}), -0.625);
    Json j = form_to_json(f);
    CHECK(j["dim"] == 7);
    CHECK(j["degree"] == 3);
    FormD back = form_from_json(j, p).cast<double>();
    CHECK((back - f).norm() == 0.0);

    ScalarExpr x = ScalarExpr::power(QSqrt6(Rat(3, 2)), 1, Rat(2, 5)) +
                   ScalarExpr::exponential(1, Rat(-2));
    Json jx = scalar_expr_to_json(x);
    ScalarExpr back_x = scalar_expr_from_json(jx, p);
    for (double t : {0.0, 0.3, 1.1})
        CHECK(back_x.eval(t) == doctest::Approx(x.eval(t)).epsilon(1e-14));
}

TEST_CASE("catalog composition matches the survey inventory") {
    auto cat = test_catalog();
    auto ids = cat.ids();
    auto has = [&](const std::string& id) {
        return std::find(ids.begin(), ids.end(), id) != ids.end();
    };
    for (int i = 1; i <= 7; ++i) {
        CHECK(has("thm_n" + std::to_string(i)));
        CHECK(has("table_row" + std::to_string(i)));
    }
    CHECK(has("eq_3step"));
    CHECK(has("iwasawa_3_2"));
    CHECK(has("example_7_1"));
    CHECK(has("example_7_2"));
}

TEST_CASE("flow entries reference the nilpotent parts of Table rows 4 and 7") {
    auto cat = test_catalog();
    auto e71 = cat.load("example_7_1");
    auto row4 = cat.load("table_row4");
    for (int k = 1; k <= 6; ++k) {
        FormQ nilpotent(6, 2);
        for (const auto& [mask, c] : row4.algebra.d1(k).coeffs())
            if (!(mask & (1u << 6))) nilpotent.add(mask, c);
        CHECK(e71.algebra.d1(k) == nilpotent);
    }
    auto e72 = cat.load("example_7_2");
    auto row7 = cat.load("table_row7");
    for (int k = 1; k <= 6; ++k) {
        FormQ nilpotent(6, 2);
        for (const auto& [mask, c] : row7.algebra.d1(k).coeffs())
            if (!(mask & (1u << 6))) nilpotent.add(mask, c);
        CHECK(e72.algebra.d1(k) == nilpotent);
    }
}
