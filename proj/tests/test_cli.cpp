#include <cbns/cli.hpp>

#include <doctest.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <map>
#include <sstream>
#include <sys/wait.h>

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = cbns::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
    std::filesystem::path path;
    TempDir() : path(std::filesystem::temp_directory_path() / "cbns_cli_test") {
        std::filesystem::remove_all(path);
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    std::string operator/(const std::string& name) const { return (path / name).string(); }
};

std::map<std::pair<int, int>, double> read_table(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::getline(in, line);
    std::map<std::pair<int, int>, double> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream f(line);
        int n = 0, D = 0;
        double H = 0;
        char c = 0;
        f >> n >> c >> D >> c >> H;
        out[{n, D}] = H;
    }
    return out;
}

}  // namespace

TEST_CASE("dim prints the boundary dimension") {
    const Result r = run({"dim", "--n", "2", "--d", "1"});
    CHECK(r.code == 0);
    CHECK(std::abs(std::stod(r.out) - 1.210760533) < 1e-6);
    const Result neg = run({"dim", "--n", "2", "--d", "-2"});
    CHECK(neg.code == 0);
    CHECK(std::abs(std::stod(neg.out) - 1.523627086) < 1e-6);
}

TEST_CASE("classify as json") {
    const Result r = run({"classify", "--n", "3", "--d", "3", "--json"});
    REQUIRE(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["tag"] == "ThreeAttractors");
    CHECK(j["fixed_points"].size() == 3);
    CHECK(j["fixed_points"][1] == nlohmann::json::array({-2, 1}));
}

TEST_CASE("encode, decode and add") {
    const Result e = run({"encode", "--n", "3", "--d", "3", "--point", "-12,10"});
    CHECK(e.code == 0);
    CHECK(e.out == "digits 0,1,1,1 terminal 0,0\n");
    const Result d = run({"decode", "--n", "3", "--d", "3", "--digits", "0,1,1,1"});
    CHECK(d.code == 0);
    CHECK(d.out == "point -12,10\n");
    const Result a = run({"add", "--n", "2", "--d", "-1", "--x", "1,1", "--y", "1"});
    CHECK(a.code == 0);
    CHECK(a.out == "digits 0,0,1,1,1 terminal 0,0\n");
}

TEST_CASE("domain errors exit with 1 and one diagnostic line") {
    const Result r = run({"dim", "--n", "2", "--d", "3"});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    CHECK(r.err.rfind("error: ", 0) == 0);
    CHECK(std::count(r.err.begin(), r.err.end(), '\n') == 1);
    CHECK(run({"decode", "--n", "3", "--d", "3", "--digits", "0,3"}).code == 1);
    CHECK(run({"cubic", "--m", "2", "--a", "7"}).code == 1);
    CHECK(run({"bogus"}).code == 1);
    CHECK(run({"dim", "--n", "2"}).code == 1);
}

TEST_CASE("unwritable outputs exit with 2") {
    CHECK(run({"hull", "--n", "2", "--d", "-1", "--svg", "/nonexistent-dir/h.svg"}).code == 2);
    CHECK(run({"dim-table", "--max-n", "2", "--csv", "/nonexistent-dir/t.csv"}).code == 2);
    CHECK(run({"render", "frac", "--n", "2", "--d", "-1", "--k", "4", "--res", "16", "--out", "/nonexistent-dir/a.ppm"})
              .code == 2);
}

TEST_CASE("dim-table matches the reference table") {
    TempDir tmp;
    const Result r = run({"dim-table", "--max-n", "9", "--csv", tmp / "table.csv"});
    REQUIRE(r.code == 0);
    const auto got = read_table(slurp(tmp / "table.csv"));
    const auto want = read_table(slurp(std::string(CBNS_TEST_DATA) + "/dimension_table.csv"));
    CHECK(got.size() == want.size());
    for (const auto& [key, H] : want) {
        REQUIRE(got.count(key));
        CHECK_MESSAGE(std::abs(got.at(key) - H) <= 1e-6, "n=", key.first, " D=", key.second);
    }
}

TEST_CASE("file outputs are deterministic") {
    TempDir tmp;
    for (int i = 0; i < 2; ++i) {
        const std::string tag = std::to_string(i);
        CHECK(run({"render", "frac", "--n", "2", "--d", "-1", "--k", "12", "--res", "96", "--out", tmp / ("f" + tag + ".ppm"),
                   "--workers", tag == "0" ? "1" : "3"})
                  .code == 0);
        CHECK(run({"render", "int", "--n", "2", "--d", "2", "--k", "6", "--res", "64", "--out", tmp / ("i" + tag + ".ppm")})
                  .code == 0);
        CHECK(run({"hull", "--n", "3", "--d", "-2", "--svg", tmp / ("h" + tag + ".svg")}).code == 0);
        CHECK(run({"boundary", "--n", "2", "--d", "-2", "--k", "5", "--svg", tmp / ("b" + tag + ".svg")}).code == 0);
        CHECK(run({"sweep", "--n", "2", "--steps", "4", "--depth", "10", "--grid", "64", "--csv", tmp / ("s" + tag + ".csv")})
                  .code == 0);
    }
    for (const char* stem : {"f", "i"}) {
        const std::string a = slurp(tmp / (std::string(stem) + "0.ppm"));
        CHECK(a.rfind("P6\n", 0) == 0);
        CHECK(a == slurp(tmp / (std::string(stem) + "1.ppm")));
    }
    CHECK(slurp(tmp / "h0.svg") == slurp(tmp / "h1.svg"));
    CHECK(slurp(tmp / "b0.svg") == slurp(tmp / "b1.svg"));
    CHECK(slurp(tmp / "b0.svg").find("<path") != std::string::npos);
    const std::string sweep = slurp(tmp / "s0.csv");
    CHECK(sweep == slurp(tmp / "s1.csv"));
    CHECK(sweep.rfind("phi,dimension\n", 0) == 0);
    CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 5);

    const Result c1 = run({"coverage", "--n", "2", "--d", "-1", "--k", "5", "--res", "24", "--window", "-2,-2,2,2", "--json"});
    const Result c2 = run({"coverage", "--n", "2", "--d", "-1", "--k", "5", "--res", "24", "--window", "-2,-2,2,2", "--json",
                           "--workers", "2"});
    CHECK(c1.code == 0);
    CHECK(c1.out == c2.out);
    const auto j = nlohmann::json::parse(c1.out);
    CHECK(j["schema_version"] == 1);
    CHECK(j["covered_fraction"] == 1.0);
}

TEST_CASE("hull and cubic json") {
    const auto h = nlohmann::json::parse(run({"hull", "--n", "2", "--d", "-1", "--json"}).out);
    CHECK(h["schema_version"] == 1);
    CHECK(std::abs(h["perimeter"].get<double>() - (2 * std::sqrt(2.0) + 2)) < 1e-12);

    const Result r = run({"cubic", "--m", "2", "--a", "1", "--positive-r", "--json"});
    REQUIRE(r.code == 0);
    const auto c = nlohmann::json::parse(r.out);
    CHECK(c["proper"] == false);
    CHECK(c["attractors"].size() == 2);
    const auto neg = nlohmann::json::parse(run({"cubic", "--m", "3", "--a", "0", "--json"}).out);
    CHECK(neg["proper"] == true);
}

TEST_CASE("installed binary reports exit codes") {
    auto status = [](const std::string& args) {
        const int raw = std::system((std::string(CBNS_TOOL) + " " + args + " >/dev/null 2>&1").c_str());
        return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    };
    CHECK(status("dim --n 2 --d 1") == 0);
    CHECK(status("dim --n 2 --d 3") == 1);
    CHECK(status("hull --n 2 --d -1 --svg /nonexistent-dir/x.svg") == 2);
}
