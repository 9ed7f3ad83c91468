#include <doctest.h>

#include <sstream>

#include "fbtab/io.hpp"
#include "fbtab/tables.hpp"

using namespace fbtab;

TEST_CASE("spectrum json is ordered by descending value") {
    Spectrum s;
    s.domain = kDomainQuads;
    s.entries[0] = 4011;
    s.entries[8] = 1;
    s.entries[2] = 84;
    CHECK(to_json_string(s) ==
          R"js({"domain":"all (a,c,b,d)","values":{"8":1,"2":84,"0":4011}})js");
}

TEST_CASE("dense table csv layout") {
    Table2D t{2, {4, 0, 0, 0, 0, 2, 0, 2, 0, 0, 4, 0, 0, 2, 0, 2}};
    std::ostringstream out;
    write_csv(out, t);
    CHECK(out.str() == "a,0,1,2,3\n0,4,0,0,0\n1,0,2,0,2\n2,0,0,4,0\n3,0,2,0,2\n");
}

TEST_CASE("sparse table exports nonzero cells in coordinate order") {
    SparseTable t{2, 3, {}};
    t.cells[SparseTable::pack3(1, 2, 3)] = 2;
    t.cells[SparseTable::pack3(0, 0, 1)] = 4;
    const auto j = to_json(t);
    CHECK(j["arity"] == 3);
    CHECK(j["cells"][0] == nlohmann::ordered_json::array({0, 0, 1, 4}));
    CHECK(j["cells"][1] == nlohmann::ordered_json::array({1, 2, 3, 2}));

    std::ostringstream csv;
    write_csv(csv, t);
    CHECK(csv.str() == "a,c,b,count\n0,0,1,4\n1,2,3,2\n");
}

TEST_CASE("table json round shape") {
    Table2D t{2, std::vector<std::uint32_t>(16, 0)};
    t.at(1, 2) = 4;
    const auto j = to_json(t);
    CHECK(j["n"] == 2);
    CHECK(j["counts"][1][2] == 4);
    CHECK(j["counts"].size() == 4);
}
