#include <doctest.h>

#include <treebed/cli.hpp>
#include <treebed/serialize.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace treebed;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result call(std::vector<std::string> args) {
    args.insert(args.begin(), "treebed");
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "treebed_cli_test";
    std::filesystem::create_directories(dir);
    return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream f(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(f), {}};
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("documented invocations") {
    CHECK(call({"check-covering", "--n", "1", "--p", "5"}).code == 0);
    const Result bad = call({"check-covering", "--n", "2", "--p", "6"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("1/(p-1)") != std::string::npos);
    const Result d = call({"tree-dist", "--n", "1", "--p", "5", "--u", "0,1,2", "--v", "0,1,3"});
    CHECK(d.code == 0);
    CHECK(d.out == "3\n");
}

TEST_CASE("exit codes") {
    CHECK(call({"check-covering", "--colors", "0"}).code == 1);
    CHECK(call({"--help"}).code == 0);
    CHECK(call({}).code == 2);
    CHECK(call({"frobnicate"}).code == 2);
    CHECK(call({"tree-dist", "--u", "0,1", "--v", "0,1,3"}).code == 2);
    CHECK(call({"tree-dist", "--u", "0,1,2", "--v", "1,1,3"}).code == 2);
    CHECK(call({"embed", "--point", "0,1,2"}).code == 2);
    CHECK(call({"tree-dist", "--u", "0,0,3", "--v", "0,0,0", "--scan-cap", "1"}).code == 3);
    CHECK(call({"check-covering", "--n", "3", "--p", "9", "--cell-budget", "10"}).code == 3);
    CHECK(call({"verify", "--strategy", "spiral"}).code == 2);
    CHECK(call({"verify", "--t-min", "2", "--t-max", "1"}).code == 2);
}

TEST_CASE("embed and distance output") {
    const Result e = call({"embed", "--point", "0,0.5", "--json"});
    REQUIRE(e.code == 0);
    const Json j = Json::parse(e.out);
    CHECK(j["images"].size() == 2);
    CHECK(j["images"][1]["c"] == 1);
    CHECK(j["images"][1]["gamma"][0] == 0);

    const Result d = call({"distance", "--from", "0,0", "--to", "1,0"});
    CHECK(d.code == 0);
    CHECK(d.out == "1\n");
    const Result dj = call({"distance", "--from", "0,0", "--to", "1,0", "--json"});
    CHECK(Json::parse(dj.out)["d_hyp"] == 1.0);
}

TEST_CASE("misaligned parameters warn") {
    const Result r = call({"check-covering", "--n", "1", "--p", "6"});
    CHECK(r.code == 0);
    CHECK(r.err.find("warning") != std::string::npos);
    CHECK(call({"check-separation", "--n", "1", "--p", "6", "--samples", "2000"}).code == 1);
    CHECK(call({"check-separation", "--samples", "2000"}).code == 0);
}

TEST_CASE("verify is reproducible and thread independent") {
    const std::vector<std::string> base{"verify", "--samples", "600", "--seed", "3"};
    auto with = [&](std::vector<std::string> extra) {
        auto a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return call(a);
    };
    const Result a = with({"--threads", "1"}), b = with({"--threads", "1"}),
                 c = with({"--threads", "3"});
    REQUIRE(a.code == 0);
    CHECK(a.out == b.out);
    CHECK(a.out == c.out);
    const Json j = Json::parse(a.out);
    CHECK(j["n_samples"] == 600);
    CHECK(j["runtime_ms"].is_null());
    CHECK(j["violations"] == 0);
    CHECK(Json::parse(with({"--timing"}).out)["runtime_ms"].is_number());

    const Result csv = call({"verify", "--format", "csv", "--samples", "5"});
    std::istringstream lines(csv.out);
    std::string header;
    std::getline(lines, header);
    CHECK(header == "t,x1,t2,x2_1,d_hyp,d_tree,d_c0,d_c1");
    int rows = 0;
    for (std::string l; std::getline(lines, l);) ++rows;
    CHECK(rows == 5);
}

TEST_CASE("output file and config file") {
    const auto out = scratch("cov.json");
    CHECK(call({"check-covering", "--json", "-o", out.string()}).code == 0);
    CHECK(Json::parse(slurp(out))["covered"] == true);

    const auto cfg = scratch("cfg.toml");
    {
        std::ofstream f(cfg);
        f << "[tree-dist]\nn = 1\np = 5\nu = \"0,1,2\"\nv = \"0,1,0\"\n";
    }
    const Result fromfile = call({"--config", cfg.string(), "tree-dist"});
    CHECK(fromfile.code == 0);
    CHECK(fromfile.out == "2\n");
    // flags win over the file
    const Result flags = call({"--config", cfg.string(), "tree-dist", "--v", "0,1,3"});
    CHECK(flags.out == "3\n");
}

TEST_CASE("export subtree") {
    const auto ids = scratch("ids.txt");
    {
        std::ofstream f(ids);
        f << "# two leaves\n0,1,2\n\n0,1,3\n";
    }
    const Result dot = call({"export-subtree", "--ids", ids.string()});
    CHECK(dot.code == 0);
    CHECK(dot.out.rfind("graph subtree {", 0) == 0);
    const Result js = call({"export-subtree", "--ids", ids.string(), "--format", "json"});
    const Json j = Json::parse(js.out);
    CHECK(j["nodes"].size() == 4);
    CHECK(j["edges"].size() == 3);
    CHECK(call({"export-subtree", "--ids", scratch("missing.txt").string()}).code == 2);
}

}
