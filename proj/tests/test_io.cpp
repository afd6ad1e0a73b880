#include <catch2/catch_amalgamated.hpp>

#include "leibniz/catalog.hpp"
#include "leibniz/io.hpp"

using leibniz::AlgebraBuilder;
using leibniz::CMatrix;
using leibniz::Complex;
using leibniz::ParseError;

TEST_CASE("serialized bracket table has the pinned compact form") {
    const auto& null2 = leibniz::stock("null2").algebra;
    REQUIRE(leibniz::serialize_algebra(null2) ==
            R"({"dim":2,"brackets":[{"i":0,"j":0,"k":1,"re":1.0,"im":0.0}]})");

    // Byte stability: serializing twice, or through a parse roundtrip,
    // produces the identical string.
    std::string once = leibniz::serialize_algebra(null2);
    REQUIRE(leibniz::serialize_algebra(null2) == once);
    REQUIRE(leibniz::serialize_algebra(leibniz::parse_algebra(once)) == once);
}

TEST_CASE("algebra files roundtrip the whole catalog") {
    for (const auto& entry : leibniz::catalog_entries()) {
        INFO("catalog id " << entry.id);
        std::string text = leibniz::serialize_algebra(entry.algebra);
        auto back = leibniz::parse_algebra(text);
        REQUIRE(back.dim() == entry.algebra.dim());
        for (Eigen::Index i = 0; i < back.dim(); ++i)
            for (Eigen::Index j = 0; j < back.dim(); ++j)
                for (Eigen::Index k = 0; k < back.dim(); ++k)
                    REQUIRE(back.c(i, j, k) == entry.algebra.c(i, j, k));
        REQUIRE(leibniz::serialize_algebra(back) == text);
    }
}

TEST_CASE("algebra parsing accepts labels and defaults the imaginary part") {
    auto a = leibniz::parse_algebra(
        R"({"dim":2,"basis":["x","y"],"brackets":[{"i":0,"j":0,"k":1,"re":2.5}]})");
    REQUIRE(a.label(0) == "x");
    REQUIRE(a.label(1) == "y");
    REQUIRE(a.c(0, 0, 1) == Complex(2.5, 0.0));

    auto b = leibniz::parse_algebra(
        R"({"dim":1,"brackets":[{"i":0,"j":0,"k":0,"re":0.0,"im":-1.5}]})");
    REQUIRE(b.c(0, 0, 0) == Complex(0.0, -1.5));
}

TEST_CASE("algebra parsing rejects malformed input") {
    using leibniz::parse_algebra;
    REQUIRE_THROWS_AS(parse_algebra("not json"), ParseError);
    REQUIRE_THROWS_AS(parse_algebra("[1,2,3]"), ParseError);
    REQUIRE_THROWS_AS(parse_algebra(R"({"brackets":[]})"), ParseError);
    REQUIRE_THROWS_AS(parse_algebra(R"({"dim":0,"brackets":[]})"), ParseError);
    REQUIRE_THROWS_AS(parse_algebra(R"({"dim":2.5,"brackets":[]})"), ParseError);
    REQUIRE_THROWS_AS(parse_algebra(R"({"dim":2})"), ParseError);
    REQUIRE_THROWS_AS(parse_algebra(R"({"dim":2,"bracket":[]})"), ParseError);
    REQUIRE_THROWS_AS(
        parse_algebra(R"({"dim":2,"brackets":[{"i":0,"j":0,"k":2,"re":1.0}]})"), ParseError);
    REQUIRE_THROWS_AS(
        parse_algebra(R"({"dim":2,"brackets":[{"i":-1,"j":0,"k":0,"re":1.0}]})"), ParseError);
    REQUIRE_THROWS_AS(
        parse_algebra(R"({"dim":2,"brackets":[{"i":0,"j":0,"k":1,"real":1.0}]})"), ParseError);
    REQUIRE_THROWS_AS(parse_algebra(R"({"dim":2,"brackets":[{"i":0,"j":0,"k":1}]})"),
                      ParseError);
    REQUIRE_THROWS_AS(parse_algebra(R"({"dim":2,"basis":["x"],"brackets":[]})"), ParseError);
    REQUIRE_THROWS_AS(parse_algebra(R"({"dim":1,"basis":[7],"brackets":[]})"), ParseError);

    // Duplicate (i, j, k) records are a hard error, never a silent sum.
    REQUIRE_THROWS_AS(parse_algebra(R"({"dim":2,"brackets":[)"
                                    R"({"i":0,"j":0,"k":1,"re":1.0},)"
                                    R"({"i":0,"j":0,"k":1,"re":2.0}]})"),
                      ParseError);
}

TEST_CASE("matrix files roundtrip exactly") {
    leibniz::Rng rng;
    CMatrix m = rng.matrix(3, 5);
    std::string text = leibniz::serialize_matrix(m);
    CMatrix back = leibniz::parse_matrix(text);
    REQUIRE(back.rows() == 3);
    REQUIRE(back.cols() == 5);
    REQUIRE(back == m);  // shortest-roundtrip doubles survive bit-for-bit
    REQUIRE(leibniz::serialize_matrix(back) == text);
}

TEST_CASE("matrix parsing rejects malformed input") {
    using leibniz::parse_matrix;
    REQUIRE_THROWS_AS(parse_matrix("nope"), ParseError);
    REQUIRE_THROWS_AS(parse_matrix(R"({"rows":2,"cols":2,"entries":[[1,0]]})"), ParseError);
    REQUIRE_THROWS_AS(parse_matrix(R"({"rows":0,"cols":2,"entries":[]})"), ParseError);
    REQUIRE_THROWS_AS(parse_matrix(R"({"rows":1,"cols":1,"entries":[[1]]})"), ParseError);
    REQUIRE_THROWS_AS(parse_matrix(R"({"rows":1,"cols":1,"entries":[[1,"x"]]})"), ParseError);
    REQUIRE_THROWS_AS(parse_matrix(R"({"rows":1,"cols":1,"entries":[[1,0]],"extra":1})"),
                      ParseError);
}

TEST_CASE("file loading reports unreadable paths") {
    REQUIRE_THROWS_AS(leibniz::load_algebra("/no/such/file.json"), ParseError);
    REQUIRE_THROWS_AS(leibniz::load_matrix("/no/such/file.json"), ParseError);
}
