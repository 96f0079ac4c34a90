#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "nlohmann/json.hpp"
#include "ssc/cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = ssc::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) { return (fs::path(SSC_CORPUS_DIR) / name).string(); }

std::string write_temp(const std::string& name, const std::string& text) {
    auto path = fs::temp_directory_path() / ("ssc_cli_test_" + name);
    std::ofstream(path) << text;
    return path.string();
}

}  // namespace

TEST_SUITE_BEGIN("cli-reporting");

TEST_CASE("laplacian") {
    auto r = run({"laplacian", "--input", corpus("diamond.json"), "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["laplacian"] == nlohmann::json::parse(
                                R"([["2","-1","-1","0"],["-1","2","0","-1"],["-1","0","2","-1"],["0","-1","-1","2"]])"));
    CHECK(j["input_matrix"] == nlohmann::json::parse(R"([["1"],["0"],["0"],["0"]])"));

    auto zero = run({"laplacian", "-i", corpus("edgeless.json"), "--format", "json"});
    REQUIRE(zero.code == 0);
    for (const auto& row : nlohmann::json::parse(zero.out)["laplacian"])
        for (const auto& x : row) CHECK(x == "0");

    auto text = run({"laplacian", "-i", corpus("diamond_blocks.json")});
    CHECK(text.code == 0);
    CHECK(text.out.find("7/2") != std::string::npos);
    CHECK(text.out.find('|') != std::string::npos);

    auto bad = run({"laplacian", "-i", write_temp("bad.json", R"({"n": 4, "leaders": [1], "edges": [{"i": 2, "j": 5}]})")});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("edges[0].j") != std::string::npos);

    CHECK(run({"laplacian", "-i", "/nonexistent/file.json"}).code == 2);
}

TEST_CASE("ep") {
    auto yes = run({"ep", "-i", corpus("diamond.json"), "-p", "[[1],[2,3],[4]]", "--format", "json"});
    REQUIRE(yes.code == 0);
    CHECK(nlohmann::json::parse(yes.out)["equitable"] == true);

    auto no = run({"ep", "-i", corpus("diamond_unequal.json"), "-p", "1|2,3|4", "--format", "json"});
    REQUIRE(no.code == 0);
    auto j = nlohmann::json::parse(no.out);
    CHECK(j["equitable"] == false);
    REQUIRE(j["violations"].size() == 1);
    CHECK(j["violations"][0]["r"] == 2);
    CHECK(j["violations"][0]["s"] == 3);
    CHECK(j["violations"][0]["target"] == 1);

    auto coarse = run({"ep", "-i", corpus("diamond.json"), "--format", "json"});
    CHECK(nlohmann::json::parse(coarse.out)["coarsest_ep"] == nlohmann::json::parse("[[1],[2,3],[4]]"));

    CHECK(run({"ep", "-i", corpus("diamond.json"), "-p", "[[1,2],[2,3,4]]"}).code == 3);
    CHECK(run({"ep", "-i", corpus("diamond.json"), "-p", "1|2"}).code == 3);
}

TEST_CASE("quotient") {
    auto r = run({"quotient", "-i", corpus("diamond.json"), "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["quotient_laplacian"] ==
          nlohmann::json::parse(R"([["2","-2","0"],["-1","2","-1"],["0","-2","2"]])"));
    CHECK(j["lift"]["commutes"] == true);
    CHECK(run({"quotient", "-i", corpus("diamond_unequal.json"), "-p", "1|2,3|4"}).code == 3);
}

TEST_CASE("bound") {
    auto r = run({"bound", "-i", corpus("diamond_pattern.json"), "--format", "json", "--samples", "6"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["k_min"] == 3);
    CHECK(j["bound"] == 3);
    CHECK(j["verdicts"]["strongly_structurally_controllable"] == false);
    CHECK(j["witness"]["partition"] == nlohmann::json::parse("[[1],[2,3],[4]]"));
    CHECK(j["seed"] == 0);
    CHECK(j["backend"] == "exact");

    auto star = run({"bound", "-i", corpus("star4.json"), "--format", "json", "--samples", "4"});
    CHECK(nlohmann::json::parse(star.out)["bound"] == 2);

    std::string chain = R"({"kind": "pattern", "n": 21, "leaders": [1], "edges": [)";
    for (int v = 1; v < 21; ++v) chain += (v > 1 ? "," : "") + std::string(R"({"i": )") + std::to_string(v) +
                                          R"(, "j": )" + std::to_string(v + 1) + "}";
    chain += "]}";
    auto capped = run({"bound", "-i", write_temp("chain.json", chain)});
    CHECK(capped.code == 4);
    CHECK(capped.err.find("cap") != std::string::npos);
}

TEST_CASE("identical configuration gives byte-identical JSON") {
    std::vector<std::string> args{"bound", "-i", corpus("k3.json"), "--format", "json", "--samples", "5", "--seed", "11"};
    auto a = run(args);
    auto b = run(args);
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    auto other = run({"bound", "-i", corpus("k3.json"), "--format", "json", "--samples", "5", "--seed", "12"});
    CHECK(other.out != a.out);
}

TEST_CASE("dual") {
    auto und = run({"dual", "-i", corpus("path3.json")});
    CHECK(und.code == 0);
    CHECK(und.out.find("self-dual") == 0);

    auto path = run({"dual", "-i", corpus("directed_path3.json"), "--format", "json"});
    auto j = nlohmann::json::parse(path.out);
    CHECK(j["reversal"]["holds"] == false);
    CHECK(j["reversal"]["mismatches"].size() == 2);
    CHECK(j["dual_controllable_dimension"] == j["observability_rank"]);

    auto bal = run({"dual", "-i", corpus("balanced_digraph.json"), "--format", "json"});
    CHECK(nlohmann::json::parse(bal.out)["reversal"]["holds"] == true);
}

TEST_CASE("argument errors and backend selection") {
    CHECK(run({}).code == 3);
    CHECK(run({"bound"}).code == 3);
    CHECK(run({"frobnicate"}).code == 3);
    CHECK(run({"bound", "-i", corpus("k3.json"), "--samples", "0"}).code == 3);
    CHECK(run({"bound", "-i", corpus("k3.json"), "--cap", "0"}).code == 3);
    CHECK(run({"bound", "-i", corpus("k3.json"), "--mode", "greedy"}).code == 3);
    CHECK(run({"--help"}).code == 0);

    auto floating = run({"bound", "-i", corpus("k3.json"), "--backend", "floating", "--format", "json", "--samples", "3"});
    CHECK(nlohmann::json::parse(floating.out)["backend"] == "floating");

    setenv("SSC_BACKEND", "floating", 1);
    auto env = run({"bound", "-i", corpus("k3.json"), "--format", "json", "--samples", "3"});
    unsetenv("SSC_BACKEND");
    CHECK(nlohmann::json::parse(env.out)["backend"] == "floating");
}

TEST_CASE("corpus runner") {
    auto r = run({"corpus", "-i", SSC_CORPUS_DIR});
    CHECK(r.code == 0);
    CHECK(r.out.find("FAIL") == std::string::npos);
    CHECK(r.out.find(" 0 failed") != std::string::npos);
}

TEST_SUITE_END();
