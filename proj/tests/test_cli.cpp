#include <doctest.h>

#include "cli.hpp"
#include "multiplane/catalog.hpp"
#include "multiplane/config_file.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace multiplane;
using nlohmann::json;

namespace {

struct Outcome {
    int code;
    std::string out, err;
};

Outcome call(std::vector<std::string> args)
{
    args.insert(args.begin(), "multiplane");
    std::vector<const char*> argv;
    for (const auto& a : args)
        argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(MULTIPLANE_TEST_DATA) + "/" + name; }

std::string write_temp(const std::string& name, const std::string& text)
{
    const std::string path = std::string(MULTIPLANE_TEST_TMP) + "/" + name;
    std::ofstream(path) << text;
    return path;
}

}  // namespace

TEST_CASE("catalog lists the builtin names")
{
    const auto r = call({"catalog"});
    CHECK(r.code == 0);
    for (const char* name : {"ceva6", "hesse-dual", "hesse-pencil", "two-tangent-conics", "ishida"})
        CHECK(r.out.find(name) != std::string::npos);
}

TEST_CASE("irregularity of the Ceva cover at n = 5")
{
    const auto r = call({"irregularity", "--arrangement", "ceva6", "--n", "5"});
    CHECK(r.code == 0);
    CHECK(r.out.find("q = 30") != std::string::npos);
    const auto all = call({"irregularity", "--arrangement", "ceva6", "--n", "3", "--method", "all", "--threads", "2"});
    CHECK(all.code == 0);
    CHECK(all.out.find("all methods agree: q = 5") != std::string::npos);
}

TEST_CASE("faces of the two tangent conics")
{
    const auto r = call({"faces", "--arrangement", "two-tangent-conics", "--json"});
    REQUIRE(r.code == 0);
    const auto doc = json::parse(r.out);
    REQUIRE(doc["faces"].size() == 3);
    std::vector<std::string> heights;
    for (const auto& f : doc["faces"]) {
        CHECK(f["distinguished"] == true);
        heights.push_back(f["height"]);
    }
    CHECK(heights == std::vector<std::string>{"3", "3", "4"});
    CHECK(doc["faces"][1]["walls"].size() == 2);
}

TEST_CASE("jumping numbers from configuration files")
{
    const auto cusp = call({"jumping", "--config", data("cusp.json"), "--max", "2"});
    CHECK(cusp.code == 0);
    CHECK(cusp.out == "5/6 7/6 4/3 3/2 5/3 11/6 2\n");
    const auto tac = call({"jumping", "--config", data("tacnode.json"), "--point", "Q", "--max", "4/5"});
    CHECK(tac.out == "3/5 4/5\n");
    CHECK(call({"jumping", "--config", data("tacnode.json")}).code == 1);
}

TEST_CASE("configuration files agree with the builtins")
{
    const auto file = call({"irregularity", "--config", data("ishida.json"), "--method", "all"});
    CHECK(file.code == 0);
    CHECK(file.out.find("all methods agree: q = 10") != std::string::npos);
    const auto tac = call({"irregularity", "--config", data("tacnode.json"), "--json"});
    const auto builtin_tac = call({"irregularity", "--arrangement", "two-tangent-conics", "--n", "5", "--json"});
    CHECK(json::parse(tac.out)["q"] == json::parse(builtin_tac.out)["q"]);
    // the same curves with the covering given on the command line
    const auto flags = call({"irregularity", "--config", data("tacnode.json"), "--orders", "7", "--matrix", "1,0"});
    CHECK(flags.out.find("q = 3") != std::string::npos);
}

TEST_CASE("json reports round-trip")
{
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"--arrangement", "hesse-dual", "--n", "3"},
             {"--arrangement", "two-tangent-conics-split", "--n", "6"},
             {"--config", data("tacnode.json")}}) {
        auto first_args = args;
        first_args.insert(first_args.begin(), "irregularity");
        first_args.push_back("--json");
        const auto first = call(first_args);
        REQUIRE(first.code == 0);
        const auto path = write_temp("report.json", first.out);
        const auto second = call({"irregularity", "--config", path, "--json"});
        REQUIRE(second.code == 0);
        auto a = json::parse(first.out), b = json::parse(second.out);
        a.erase("timings");
        b.erase("timings");
        CHECK(a == b);
        std::remove(path.c_str());
    }
    // every builtin configuration survives serialization
    for (const auto& e : catalog_entries()) {
        CAPTURE(e.name);
        const auto spec = builtin(e.name, 5);
        const auto back = parse_config(covering_to_json(spec));
        REQUIRE(back.covering);
        CHECK(covering_to_json(*back.covering) == covering_to_json(spec));
        CHECK(all_walls(*back.config).size() == all_walls(*spec.config).size());
    }
}

TEST_CASE("output is deterministic")
{
    const std::vector<std::string> args{"irregularity", "--arrangement", "ishida", "--n", "5"};
    CHECK(call(args).out == call(args).out);
    const std::vector<std::string> faces{"faces", "--arrangement", "ceva6"};
    CHECK(call(faces).out == call(faces).out);
}

TEST_CASE("errors carry their location and exit code")
{
    json doc = json::parse(std::ifstream(data("tacnode.json")));
    doc["singular_points"][1]["cluster"]["positions"][1]["multiplicities"]["X"] = 1;
    auto path = write_temp("bad.json", doc.dump());
    auto r = call({"walls", "--config", path});
    CHECK(r.code == 1);
    CHECK(r.err.find("/singular_points/1/cluster/positions/1/multiplicities/X") != std::string::npos);

    doc = json::parse(std::ifstream(data("tacnode.json")));
    doc["singular_points"][0]["cluster"]["positions"][1]["parent"] = 7;
    path = write_temp("bad.json", doc.dump());
    r = call({"walls", "--config", path});
    CHECK(r.err.find("/singular_points/0/cluster/positions/1/parent") != std::string::npos);

    doc = json::parse(std::ifstream(data("tacnode.json")));
    doc["covering"]["matrix"] = {{1}};
    path = write_temp("bad.json", doc.dump());
    r = call({"irregularity", "--config", path});
    CHECK(r.code == 1);
    CHECK(r.err.find("/covering") != std::string::npos);

    path = write_temp("bad.json", "{\"curves\": [");
    r = call({"walls", "--config", path});
    CHECK(r.code == 1);
    CHECK(r.err.find("byte") != std::string::npos);
    std::remove(path.c_str());

    CHECK(call({"irregularity", "--arrangement", "two-tangent-conics", "--n", "4"}).code == 2);
    CHECK(call({"irregularity", "--arrangement", "hesse-pencil", "--n", "2", "--method", "triple"}).code == 1);
    CHECK(call({"irregularity", "--arrangement", "ceva6"}).code == 1);
    CHECK(call({"frobnicate"}).code == 1);
    CHECK(call({"h1", "--arrangement", "ceva6", "--x", "1/2"}).code == 1);
}

TEST_CASE("h1 at a point and at a character")
{
    // the big Ceva face at (2/3, ..., 2/3): ideal of the four triple points, degree 1
    auto r = call({"h1", "--arrangement", "ceva6", "--x", "2/3,2/3,2/3,2/3,2/3,2/3", "--json"});
    REQUIRE(r.code == 0);
    auto doc = json::parse(r.out);
    CHECK(doc["h1"] == 1);
    CHECK(doc["degree"] == 1);
    CHECK(doc["colength"] == 4);
    r = call({"h1", "--arrangement", "ceva6", "--n", "3", "--character", "2,2,2,2,2", "--json"});
    doc = json::parse(r.out);
    CHECK(doc["h1"] == 1);
}
