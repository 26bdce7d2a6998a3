#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <json.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out, err;
};

std::string slurp(const fs::path& p) {
    std::ifstream f(p, std::ios::binary);
    std::stringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

fs::path scratch() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() / ("mahler_cli_test_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

Run run(const std::string& args) {
    const fs::path out = scratch() / "stdout", err = scratch() / "stderr";
    const std::string cmd = std::string(MAHLER_CLI) + " " + args + " >" + out.string() + " 2>" + err.string();
    const int status = std::system(cmd.c_str());
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(out), slurp(err)};
}

std::string corpus(const std::string& name) { return std::string(MAHLER_CORPUS_DIR) + "/" + name + ".json"; }

std::string write_doc(const std::string& name, const std::string& text) {
    const fs::path p = scratch() / name;
    std::ofstream(p) << text;
    return p.string();
}

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
    std::vector<std::vector<std::string>> rows;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cells;
        std::string cell;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) cells.push_back(cell);
        if (!line.empty() && line.back() == ',') cells.emplace_back();
        rows.push_back(cells);
    }
    return rows;
}

using Json = nlohmann::ordered_json;

}  // namespace

TEST_CASE("expand") {
    const Run tm = run("expand --eq " + corpus("thue_morse") + " -N 64");
    REQUIRE(tm.code == 0);
    const Json j = Json::parse(tm.out);
    REQUIRE(j["coeffs"].size() == 64);
    const std::vector<std::string> head{"0", "1", "1", "0", "1", "0", "0", "1"};
    for (std::size_t i = 0; i < head.size(); ++i) CHECK(j["coeffs"][i] == head[i]);
    CHECK(j["config"]["seed"] == 1);

    const Run p2 = run("expand --eq " + corpus("powers2") + " -N 16");
    const Json k = Json::parse(p2.out);
    std::set<std::size_t> ones;
    for (std::size_t i = 0; i < 16; ++i)
        if (k["coeffs"][i] == "1") ones.insert(i);
    CHECK(ones == std::set<std::size_t>{1, 2, 4, 8});
}

TEST_CASE("golden CSV transcript") {
    const Run r = run("expand --eq " + corpus("powers3") + " -N 10 --format csv");
    CHECK(r.code == 0);
    const std::string body = r.out.substr(r.out.find('\n') + 1);
    CHECK(body == "n,coeff\n0,0\n1,1\n2,0\n3,1\n4,0\n5,0\n6,0\n7,0\n8,0\n9,1\n");
    CHECK(r.out.rfind("# config: {\"command\":\"expand\"", 0) == 0);
}

TEST_CASE("exit codes for bad input") {
    const std::string bad = write_doc("bad.json", R"({"q": 2, "coeffs": ["1", "-1 + 2z"], "rhs": "0", "seeds": ["1"]})");
    const Run p = run("expand --eq " + bad);
    CHECK(p.code == 2);
    CHECK(p.err.find("byte 6") != std::string::npos);

    const Run j = run("expand --eq " + write_doc("trunc.json", "{\"q\": 2, \"coeffs\": ["));
    CHECK(j.code == 2);

    const std::string under = write_doc("under.json", R"({"q": 2, "coeffs": ["1", "-1"], "rhs": "z"})");
    CHECK(run("expand --eq " + under).code == 3);
    const std::string incons = write_doc("incons.json", R"({"q": 2, "coeffs": ["1", "-1"], "rhs": "z", "seeds": ["0", "2"]})");
    CHECK(run("expand --eq " + incons).code == 3);

    CHECK(run("expand --eq " + corpus("powers2") + " --precision 32").code == 2);
    CHECK(run("regular --eq " + corpus("powers2") + " --alpha 1/x").code == 2);
    CHECK(run("eval --eq " + corpus("powers2") + " --alpha 3/2").code == 2);
    CHECK(run("nonsense").code == 2);
}

TEST_CASE("regular") {
    const Run ok = run("regular --eq " + corpus("powers2") + " --alpha 1/3");
    CHECK(ok.code == 0);
    CHECK(Json::parse(ok.out)["report"]["regular"] == true);

    const Run sing = run("regular --eq " + corpus("singular_demo") + " --alpha 1/2");
    CHECK(sing.code == 1);
    const Json rep = Json::parse(sing.out)["report"];
    CHECK(rep["failure_k"] == 0);
    CHECK(rep["witness"] == "1/2");

    const Run search = run("regular --eq " + corpus("singular_demo") + " --alpha 1/2 --search --lmax 4");
    CHECK(search.code == 4);
    CHECK(Json::parse(search.out)["transcript"].size() == 4);

    const Run lift = run("regular --eq " + corpus("lift_demo") + " --alpha 1/4 --search --lmax 4");
    CHECK(lift.code == 0);
    CHECK(Json::parse(lift.out)["l"] == 2);
}

TEST_CASE("verify, system and siegel") {
    CHECK(run("verify --eq " + corpus("cantor5") + " -N 128").code == 0);
    const Run s = run("system build --eq " + corpus("powers2"));
    CHECK(s.code == 0);
    CHECK(Json::parse(s.out)["system"]["A"][1][0] == "-z");
    const Run sum = run("system sum --eq " + corpus("powers2") + " --eq " + corpus("thue_morse"));
    CHECK(Json::parse(sum.out)["system"]["size"] == 4);
    CHECK(run("system sum --eq " + corpus("powers2") + " --eq " + corpus("powers3")).code == 1);
    const Run it = run("system iterate --eq " + corpus("powers2") + " --l 2");
    CHECK(Json::parse(it.out)["system"]["q"] == 4);
    const Run sg = run("siegel --eq " + corpus("thue_morse") + " -N 2 --k 3");
    REQUIRE(sg.code == 0);
    for (const auto& c : Json::parse(sg.out)["identity"]) CHECK(c["holds"] == true);
}

TEST_CASE("eval") {
    const Run r = run("eval --eq " + corpus("powers2") + " --alpha 1/2 --width-bits 64 --declare 1 1 zero-one");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["result"]["certified"] == true);
    CHECK(j["result"]["value_lo"].get<std::string>().rfind("8.164215090218931", 0) == 0);
    const Run s = run("eval --eq " + corpus("powers2") + " --alpha 1/2 --route system --k 3 --declare 1 1 zero-one");
    CHECK(Json::parse(s.out)["result"]["route"] == "system");
    CHECK(run("eval --eq " + corpus("singular_demo") + " --alpha 1/2 --route system --k 2").code == 1);
}

TEST_CASE("experiment lacunary") {
    const fs::path out = scratch() / "lac.csv";
    const Run r = run("experiment lacunary --beta " + corpus("thue_morse") +
                      " --alpha 1/2 --tower 2 5 --terms 2 --declare 1 1 zero-one --out " + out.string());
    REQUIRE(r.code == 0);
    const auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 4);
    CHECK(rows[1][4] == "2");
    CHECK(rows[2][4] == "32");
    CHECK(slurp(out).find("\"xi_lo\"") != std::string::npos);
    CHECK(fs::exists(out.string() + ".plot.json"));
}

TEST_CASE("experiment multiplicity") {
    const fs::path out = scratch() / "mult.csv";
    REQUIRE(run("experiment multiplicity --eq " + corpus("powers2") + " --mmax 4 --nmax 4 --out " + out.string()).code ==
            0);
    const auto rows = csv_rows(slurp(out));
    std::set<std::pair<std::string, std::string>> cells;
    for (std::size_t i = 1; i < rows.size(); ++i) cells.insert({rows[i][0], rows[i][1]});
    CHECK(cells.size() == 16);
    const Json plot = Json::parse(slurp(out.string() + ".plot.json"));
    CHECK(plot["series"].size() == 4);
    CHECK(plot["config"]["seed"] == 1);
}

TEST_CASE("experiment polyscan") {
    const fs::path out = scratch() / "scan.csv";
    REQUIRE(run("experiment polyscan --xi liouville_constant --d 1 --hmax 16 --out " + out.string()).code == 0);
    const auto rows = csv_rows(slurp(out));
    REQUIRE(rows.size() == 5);
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) <= std::stod(rows[i - 1][2]));

    const Run rel = run("polyscan --xi rational:1/2 --d 1 --hmax 2");
    CHECK(rel.code == 0);
    CHECK(rel.out.find("\"coeffs\":\"-1 2\",\"exact\":true") != std::string::npos);
}

TEST_CASE("precision exhaustion keeps partial output") {
    const std::string two = write_doc("two.json", R"({"q": 2, "coeffs": ["1 - z"], "rhs": "1", "seeds": []})");
    const fs::path out = scratch() / "two.csv";
    const Run r = run("polyscan --xi " + two + " --alpha 1/2 --d 1 --hmax 2 --max-precision 256 --out " + out.string());
    CHECK(r.code == 5);
    const std::string csv = slurp(out);
    CHECK(csv.find("\"coeffs\":\"-2 1\",\"exact\":false") != std::string::npos);
    CHECK(csv_rows(csv).size() == 2);
}

TEST_CASE("continued fraction") {
    const Run r = run("cf --xi liouville:4 --max-terms 40");
    REQUIRE(r.code == 0);
    const Json j = Json::parse(r.out);
    CHECK(j["quotients"][1] == "9");
    CHECK(j["quotients"][7] == "999999999999");
    CHECK(j["stop"] == "exact");
}

TEST_CASE("determinism across runs and workers") {
    const std::vector<std::string> experiments{
        "experiment multiplicity --eq " + corpus("thue_morse") + " --mmax 3 --nmax 3",
        "experiment polyscan --xi liouville_constant --d 2 --hmax 12",
        "experiment elimsuite --count 40",
        "experiment lacunary --factorial --beta rational:1/10 --terms 4 --C 3",
    };
    for (const auto& e : experiments) {
        std::string first;
        for (const char* w : {"1", "4", "1"}) {
            const fs::path out = scratch() / "det.csv";
            REQUIRE(run(e + " --seed 7 --workers " + w + " --out " + out.string()).code == 0);
            const std::string text = slurp(out) + slurp(out.string() + ".plot.json");
            if (first.empty())
                first = text;
            else
                CHECK_MESSAGE(text == first, e << " workers " << w);
        }
    }
}
