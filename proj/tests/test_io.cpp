#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "mkz/io.hpp"
#include "oracles.hpp"

#include <cstdio>
#include <filesystem>

using namespace mkz;

namespace {

Rational q(long a, long b = 1) { return make_rational(a, b); }

} // namespace

TEST_CASE("lattice files round-trip exactly") {
    std::vector<Lattice> ls{dual_root_d(5), glued_prime_lattice(2), l2_small(), lattice42().lattice,
                            perturbed43(97).lattice};
    std::mt19937_64 rng(71);
    for (int t = 0; t < 20; ++t) {
        auto b = oracle::random_basis(rng, 1 + t % 5, 5, -9, 9);
        for (auto& row : b)
            for (auto& x : row)
                x /= static_cast<long>(1 + rng() % 12);
        ls.emplace_back(b);
    }
    for (const auto& l : ls) {
        const auto text = serialize_lattice(l);
        const auto back = parse_lattice(text);
        CHECK(back.basis() == l.basis());
        CHECK(serialize_lattice(back) == text);
    }
}

TEST_CASE("lattice file layout") {
    CHECK(serialize_lattice(dual_root_d(2)) == "LATTICE v1\n2 2\n1 0\n1/2 1/2\n");
    CHECK(serialize_lattice(Lattice({{q(-3, 4), q(0), q(5)}})) == "LATTICE v1\n1 3\n-3/4 0 5\n");
}

TEST_CASE("strict parsing") {
    const std::vector<std::string> bad{
        "",
        "LATTICE v2\n1 1\n1\n",
        "LATTICE v1\n1\n1\n",
        "LATTICE v1\n1 1\n",
        "LATTICE v1\n1 1\n1\n2\n",
        "LATTICE v1\n1 2\n1\n",
        "LATTICE v1\n1 2\n1  0\n",
        "LATTICE v1\n1 2\n1 0 \n",
        "LATTICE v1\n1 1\n2/4\n",
        "LATTICE v1\n1 1\n3/1\n",
        "LATTICE v1\n1 1\n1/0\n",
        "LATTICE v1\n1 1\n-0\n",
        "LATTICE v1\n1 1\n01\n",
        "LATTICE v1\n1 1\n1.5\n",
        "LATTICE v1\n1 1\n+1\n",
        "LATTICE v1\n1 1\n1/-2\n",
        "LATTICE v1\n2 1\n1\n2\n",
        "LATTICE v1\n0 1\n",
        "LATTICE v1\n2 2\n1 1\n2 2\n",
        "LATTICE v1\n1 1\nx\n",
        "LATTICE v1\r\n1 1\r\n1\r\n",
    };
    for (const auto& text : bad) {
        INFO(text);
        CHECK_THROWS_AS(parse_lattice(text), ParseError);
    }
    CHECK(parse_lattice("LATTICE v1\n1 2\n-1/3 0\n").basis() == RationalMatrix{{q(-1, 3), q(0)}});
    CHECK(parse_lattice("LATTICE v1\n1 1\n7").basis() == RationalMatrix{{q(7)}});
}

TEST_CASE("exact tokens") {
    CHECK(parse_exact_token("0") == 0);
    CHECK(parse_exact_token("-12/35") == q(-12, 35));
    CHECK(parse_exact_token("123456789012345678901234567890") ==
          Rational(Integer("123456789012345678901234567890")));
    CHECK_THROWS_AS(parse_exact_token("-"), ParseError);
    CHECK_THROWS_AS(parse_exact_token("1/"), ParseError);
    CHECK_THROWS_AS(parse_exact_token("/2"), ParseError);
    CHECK_THROWS_AS(parse_exact_token("6/4"), ParseError);
}

TEST_CASE("file helpers") {
    const auto path = (std::filesystem::temp_directory_path() / "mkz_io_test.lat").string();
    write_lattice_file(path, glued_prime_lattice(2));
    CHECK(read_lattice_file(path).basis() == glued_prime_lattice(2).basis());
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_lattice_file(path), ParseError);
}

TEST_CASE("reports round-trip losslessly") {
    const auto l = dual_root_d(5);
    const auto red = report_reduction("d5", minkowski_reduce(l), 1.5);
    const auto back = ReportDocument::parse(red.dump());
    CHECK(back.json() == red.json());
    CHECK(back.get_rational("max_norm_sq") == q(5, 4));
    CHECK(back.get_matrix("basis") == minkowski_reduce(l).basis);
    CHECK(back.json()["algorithm"] == "minkowski");

    const auto mr = successive_minima(l);
    const auto sb = shortest_basis(l);
    const auto mdoc = ReportDocument::parse(report_minima("d5", mr, &sb, 0).dump());
    CHECK(mdoc.get_rational("lambda_bar_sq") == q(5, 4));
    CHECK(mdoc.json()["certified"] == true);
    CHECK(matrix_from_json(Json::array({mdoc.json()["minima_sq"]}))[0] == RationalVector(5, q(1)));

    const auto th = verify_delta_table(10);
    const auto tdoc = ReportDocument::parse(report_theorem(th, "verify delta-table").dump());
    CHECK(tdoc.json()["verdict"] == "pass");
    for (const auto& [k, v] : th.quantities)
        CHECK(rational_from_json(tdoc.json()["quantities"][k]) == v);
    CHECK(tdoc.json()["verdicts"].size() == th.verdicts.size());

    CHECK_THROWS_AS(ReportDocument::parse("{not json"), ParseError);
    CHECK_THROWS_AS(rational_from_json(Json(0.5)), ParseError);
}

TEST_CASE("family scan report") {
    const auto rep = check_attempt21();
    const auto doc = ReportDocument::parse(report_appendix(rep).dump());
    CHECK(doc.json()["verdict"] == "fail");
    CHECK(doc.json()["no_unit_coefficient"] == false);
    CHECK(doc.json()["relation"].size() == 22);
}
